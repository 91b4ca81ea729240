"""
Caminos admisibles, base de Gröbner reducida de J_G y verificación por S-pares
"""
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import CapExceededError, InvalidFamilyError, ParseError
from .graph_core import Edge, Graph, make_complete_bipartite, make_cycle
from .ideal_toolkit import MonomialIdeal, minimal_generators
from .logging_compute import get_compute_logger
from .poly_core import Binomial, Monomial, Polynomial, parse_binomial, reduce, s_polynomial


@dataclass(frozen=True)
class AdmissiblePath:
    """Camino i = i_0, ..., i_r = j con i < j dentro de un grafo de `vertex_count` vértices"""
    vertices: Tuple[int, ...]
    vertex_count: int

    def __post_init__(self):
        if len(self.vertices) < 2 or self.vertices[0] >= self.vertices[-1]:
            raise ValueError(f"extremos inválidos para un camino admisible: {self.vertices}")

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]

    def sort_key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return self.start, self.end, self.vertices

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.vertices) + ")"


def _is_path(graph: Graph, sequence: Sequence[int]) -> bool:
    return all(graph.has_edge(a, b) for a, b in zip(sequence, sequence[1:]))


def is_admissible(graph: Graph, vertices: Sequence[int]) -> bool:
    """Comprobación independiente de las condiciones (i), (ii) y (iii).

    (iii) se verifica probando todo subconjunto propio del interior, en el
    orden inducido por el camino.
    """
    vertices = tuple(vertices)
    if len(vertices) < 2:
        return False
    i, j = vertices[0], vertices[-1]
    if i >= j or not _is_path(graph, vertices):
        return False
    if len(set(vertices)) != len(vertices):
        return False
    interior = vertices[1:-1]
    if any(i < v < j for v in interior):
        return False
    for size in range(len(interior)):
        for subset in combinations(interior, size):
            if _is_path(graph, (i,) + subset + (j,)):
                return False
    return True


def _paths_between(adjacency: Dict[int, FrozenSet[int]], i: int, j: int) -> List[Tuple[int, ...]]:
    """DFS de i a j por vértices < i o > j; poda revisitas y cuerdas"""
    found: List[Tuple[int, ...]] = []
    path = [i]
    on_path = {i}

    def extend(last: int):
        for w in sorted(adjacency[last]):
            if w in on_path:
                continue
            # una cuerda hacia un vértice anterior acorta el camino y rompe (iii)
            if any(w in adjacency[p] for p in path[:-1]):
                continue
            if w == j:
                found.append(tuple(path) + (j,))
                continue
            if i < w < j:
                continue
            path.append(w)
            on_path.add(w)
            extend(w)
            on_path.discard(w)
            path.pop()

    extend(i)
    return found


def enumerate_admissible_paths(graph: Graph) -> List[AdmissiblePath]:
    """Todos los caminos admisibles, ordenados por (i, j) y luego lex en los vértices"""
    start = time.time()
    adjacency = graph.adjacency()
    paths: List[AdmissiblePath] = []
    for i in range(1, graph.vertex_count + 1):
        for j in range(i + 1, graph.vertex_count + 1):
            for candidate in _paths_between(adjacency, i, j):
                # la poda ya garantiza minimalidad; se filtra de todos modos
                if is_admissible(graph, candidate):
                    paths.append(AdmissiblePath(candidate, graph.vertex_count))
    paths.sort(key=AdmissiblePath.sort_key)
    get_compute_logger().log_event("gb_engine", "PATHS_ENUMERATED", {
        "graph": graph.describe(),
        "count": len(paths),
    }, (time.time() - start) * 1000)
    return paths


def path_monomial(path: AdmissiblePath) -> Monomial:
    """u_pi: x de los vértices interiores > j por y de los interiores < i"""
    i, j = path.start, path.end
    xs = [v for v in path.interior if v > j]
    ys = [v for v in path.interior if v < i]
    return Monomial.from_variables(path.vertex_count, xs, ys)


def edge_binomial(i: int, j: int, n: int) -> Binomial:
    """f_ij = x_i y_j - x_j y_i con i < j"""
    if not 1 <= i < j <= n:
        raise ValueError(f"se requiere 1 <= i < j <= n: {(i, j)}")
    return Binomial(
        Monomial.from_variables(n, [i], [j]),
        Monomial.from_variables(n, [j], [i]),
    )


@dataclass(frozen=True)
class GroebnerBasis:
    graph: Graph
    elements: Tuple[Binomial, ...]
    paths: Tuple[AdmissiblePath, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.graph.vertex_count

    def leads(self) -> List[Monomial]:
        return [g.lead for g in self.elements]

    def __len__(self) -> int:
        return len(self.elements)


def groebner_basis(graph: Graph) -> GroebnerBasis:
    """Gamma: un elemento u_pi * f_ij por cada camino admisible"""
    paths = enumerate_admissible_paths(graph)
    n = graph.vertex_count
    elements = tuple(
        edge_binomial(p.start, p.end, n).mul_monomial(path_monomial(p)) for p in paths
    )
    return GroebnerBasis(graph, elements, tuple(paths))


def initial_ideal(graph: Graph) -> MonomialIdeal:
    return minimal_generators(groebner_basis(graph).leads(), 2 * graph.vertex_count)


def closed_form_initial_kmn(m: int, n: int) -> MonomialIdeal:
    """Generadores de ini(J_{K_{m,n}}) leídos directamente de las fórmulas cerradas.

    La tercera familia usa x_{m+i} y_k y_{m+j}, que es lo que da u_pi para el
    camino m+i, k, m+j.
    """
    if n < 1 or m < n:
        raise InvalidFamilyError(f"K_{{m,n}} requiere m >= n >= 1 (recibido m={m}, n={n})")
    size = m + n
    gens = [Monomial.from_variables(size, [i], [j])
            for i in range(1, m + 1) for j in range(m + 1, m + n + 1)]
    gens += [Monomial.from_variables(size, [i, m + k], [j])
             for i in range(1, m + 1) for j in range(i + 1, m + 1) for k in range(1, n + 1)]
    gens += [Monomial.from_variables(size, [m + i], [k, m + j])
             for i in range(1, n + 1) for j in range(i + 1, n + 1) for k in range(1, m + 1)]
    return MonomialIdeal(2 * size, tuple(gens))


def cycle_generator(i: int, j: int, n: int) -> Monomial:
    """x_i x_{j+1} ... x_n y_1 ... y_{i-1} y_j"""
    return Monomial.from_variables(n, [i] + list(range(j + 1, n + 1)), list(range(1, i)) + [j])


def closed_form_initial_cycle(n: int) -> MonomialIdeal:
    if n < 3:
        raise InvalidFamilyError(f"un ciclo necesita n >= 3 (recibido {n})")
    gens = [Monomial.from_variables(n, [i], [i + 1]) for i in range(1, n)]
    gens.append(Monomial.from_variables(n, [1], [n]))
    gens += [cycle_generator(i, j, n)
             for i in range(1, n + 1) for j in range(i + 2, n + 1) if j - i <= n - 2]
    return MonomialIdeal(2 * n, tuple(gens))


def closed_form_paths_kmn(m: int, n: int) -> List[AdmissiblePath]:
    """Aristas, caminos i, m+k, j y caminos m+i, k, m+j"""
    graph = make_complete_bipartite(m, n)
    size = graph.vertex_count
    raw = [edge for edge in graph.sorted_edges]
    raw += [(i, m + k, j)
            for i in range(1, m + 1) for j in range(i + 1, m + 1) for k in range(1, n + 1)]
    raw += [(m + i, k, m + j)
            for i in range(1, n + 1) for j in range(i + 1, n + 1) for k in range(1, m + 1)]
    return sorted((AdmissiblePath(tuple(p), size) for p in raw), key=AdmissiblePath.sort_key)


def closed_form_paths_cycle(n: int) -> List[AdmissiblePath]:
    """Aristas y caminos i, i-1, ..., 1, n, n-1, ..., j+1, j con 2 <= j-i <= n-2"""
    graph = make_cycle(n)
    raw: List[Tuple[int, ...]] = [edge for edge in graph.sorted_edges]
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            if j - i <= n - 2:
                raw.append(tuple(range(i, 0, -1)) + tuple(range(n, j - 1, -1)))
    return sorted((AdmissiblePath(p, n) for p in raw), key=AdmissiblePath.sort_key)


@dataclass
class GroebnerVerification:
    """Informe de verificación de una base candidata"""
    subject: str
    element_count: int
    pair_count: int
    nonzero_pairs: List[Tuple[int, int, Polynomial]] = field(default_factory=list)
    reducedness_violations: List[Tuple[int, Monomial, int]] = field(default_factory=list)
    missing_generators: List[Edge] = field(default_factory=list)
    foreign_elements: List[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.nonzero_pairs or self.reducedness_violations
                    or self.missing_generators or self.foreign_elements)

    @property
    def first_counterexample(self) -> Optional[str]:
        if self.nonzero_pairs:
            a, b, nf = self.nonzero_pairs[0]
            return f"S({a + 1},{b + 1}) tiene forma normal {nf}"
        if self.reducedness_violations:
            idx, mono, other = self.reducedness_violations[0]
            return f"el monomio {mono} del elemento {idx + 1} es divisible por el líder del elemento {other + 1}"
        if self.missing_generators:
            i, j = self.missing_generators[0]
            return f"f_{i},{j} no se reduce a 0"
        if self.foreign_elements:
            return f"el elemento {self.foreign_elements[0] + 1} no pertenece a J_G"
        return None


def verify_groebner(graph: Graph, basis: Optional[Sequence[Binomial]] = None,
                    max_s_pairs: int = 250_000) -> GroebnerVerification:
    """Comprueba (a) S-pares, (b) reducción, (c) generadores f_ij y, con base externa, (d) pertenencia a J_G"""
    start = time.time()
    logger = get_compute_logger()
    reference = groebner_basis(graph)
    candidate = tuple(basis) if basis is not None else reference.elements
    pair_count = comb(len(candidate), 2)
    if pair_count > max_s_pairs:
        logger.log_refusal("gb_engine", "s_pairs", pair_count, max_s_pairs)
        raise CapExceededError("S-pares", pair_count, max_s_pairs)

    report = GroebnerVerification(graph.describe(), len(candidate), pair_count)
    for a, b in combinations(range(len(candidate)), 2):
        nf = reduce(s_polynomial(candidate[a], candidate[b]), candidate)
        if not nf.is_zero():
            report.nonzero_pairs.append((a, b, nf))

    for idx, g in enumerate(candidate):
        for mono in g.monomials():
            for other, h in enumerate(candidate):
                if other != idx and h.lead.divides(mono):
                    report.reducedness_violations.append((idx, mono, other))
                    break

    n = graph.vertex_count
    for i, j in graph.sorted_edges:
        if candidate and not reduce(edge_binomial(i, j, n).to_polynomial(), candidate).is_zero():
            report.missing_generators.append((i, j))
        elif not candidate:
            report.missing_generators.append((i, j))

    if basis is not None:
        for idx, g in enumerate(candidate):
            if not reduce(g.to_polynomial(), reference.elements).is_zero():
                report.foreign_elements.append(idx)

    logger.log_event("gb_engine", "GB_VERIFIED", {
        "graph": report.subject,
        "elements": report.element_count,
        "pairs": pair_count,
        "passed": report.passed,
        "first_counterexample": report.first_counterexample,
    }, (time.time() - start) * 1000)
    return report


def parse_basis_text(text: str, n: int) -> List[Binomial]:
    """Un binomio `lead - trail` por línea; `#` inicia comentario"""
    basis = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            basis.append(parse_binomial(line, n))
        except ParseError as e:
            raise ParseError(str(e), lineno) from None
    return basis


def format_basis_text(basis: GroebnerBasis) -> str:
    lines = [f"# {basis.graph.describe()}"]
    for g, p in zip(basis.elements, basis.paths):
        lines.append(f"{g}  # {p}")
    return "\n".join(lines) + "\n"
