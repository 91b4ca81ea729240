"""
Tablas de Betti, fórmulas de cocientes lineales, inducción por conos de aplicación
para la esquina del ciclo y valores de referencia publicados
"""
import logging
import time
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    BoundedTableError,
    InvalidFamilyError,
    ShapeViolationError,
    UnsupportedFamilyError,
    UnusableProfileError,
)
from .gb_engine import closed_form_initial_cycle
from .ideal_toolkit import (
    LinearQuotientsProfile,
    MonomialIdeal,
    colon_by_monomial,
    cycle_generator_indices,
    is_monomial_regular_sequence,
    minimal_generators,
)
from .logging_compute import get_compute_logger
from .poly_core import Monomial

Spot = Tuple[int, int]


@dataclass(frozen=True)
class BettiRegion:
    """Región certificada de una tabla acotada: i <= i_max, j <= j_max y, si hay, j - i <= row_max"""
    i_max: int
    j_max: int
    row_max: Optional[int] = None

    def covers(self, i: int, j: int) -> bool:
        if i > self.i_max or j > self.j_max:
            return False
        return self.row_max is None or j - i <= self.row_max


@dataclass
class BettiTable:
    """Números de Betti graduados de S/I; `region` None significa tabla total"""
    subject: str
    entries: Dict[Spot, int] = field(default_factory=dict)
    region: Optional[BettiRegion] = None

    def __post_init__(self):
        clean: Dict[Spot, int] = {}
        for (i, j), value in self.entries.items():
            if i < 0 or j < 0 or value < 0:
                raise ValueError(f"entrada inválida β_{{{i},{j}}} = {value}")
            if value:
                clean[(int(i), int(j))] = int(value)
        self.entries = dict(sorted(clean.items()))

    @property
    def bounded(self) -> bool:
        return self.region is not None

    def get(self, i: int, j: int) -> int:
        if self.region is not None and not self.region.covers(i, j):
            raise BoundedTableError(
                f"β_{{{i},{j}}} está fuera de la región certificada de {self.subject}"
            )
        return self.entries.get((i, j), 0)

    def ideal_level(self, i: int, j: int) -> int:
        """β_{i,j}(I) = β_{i+1,j}(S/I)"""
        return self.get(i + 1, j)

    def nonzero(self) -> List[Tuple[Spot, int]]:
        return list(self.entries.items())

    def same_entries(self, other: "BettiTable") -> bool:
        return self.entries == other.entries


@dataclass(frozen=True)
class ExtremalSet:
    entries: Tuple[Tuple[Spot, int], ...] = ()

    @property
    def positions(self) -> Tuple[Spot, ...]:
        return tuple(spot for spot, _ in self.entries)

    def is_singleton(self) -> bool:
        return len(self.entries) == 1

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "{" + ", ".join(f"(({i},{j}), {v})" for (i, j), v in self.entries) + "}"


def _require_total(table: BettiTable, what: str):
    if table.bounded:
        raise BoundedTableError(
            f"{what} necesita una tabla total; {table.subject} está acotada por {table.region}"
        )


def extremal_betti(table: BettiTable) -> ExtremalSet:
    """Esquinas: β_{i,j} != 0 sin otra entrada no nula con k >= i y l - k >= j - i"""
    _require_total(table, "extremal_betti")
    items = table.nonzero()
    corners = []
    for (i, j), value in items:
        dominated = any(
            (k, l) != (i, j) and k >= i and l - k >= j - i for (k, l), _ in items
        )
        if not dominated:
            corners.append(((i, j), value))
    return ExtremalSet(tuple(sorted(corners)))


def proj_dim(table: BettiTable) -> int:
    _require_total(table, "proj_dim")
    return max(i for i, _ in table.entries)


def regularity(table: BettiTable) -> int:
    _require_total(table, "regularity")
    return max(j - i for i, j in table.entries)


def certify_table(table: BettiTable, projdim_bound: int, reg_bound: int) -> BettiTable:
    """Promueve una tabla acotada a total si su región cubre todo lo que permiten las cotas.

    Las cotas vienen de otro lado (p. ej. semicontinuidad respecto al ideal
    inicial): fuera de 0 <= i <= projdim_bound, 0 <= j - i <= reg_bound las
    entradas son cero, así que la región basta para conocer la tabla entera.
    """
    if not table.bounded:
        return table
    region = table.region
    if region.i_max < projdim_bound or region.j_max < projdim_bound + reg_bound:
        raise BoundedTableError(
            f"la región {region} no cubre projdim <= {projdim_bound}, reg <= {reg_bound}"
        )
    if region.row_max is not None and region.row_max < reg_bound:
        raise BoundedTableError(f"row_max={region.row_max} < reg <= {reg_bound}")
    for i, j in table.entries:
        if i > projdim_bound or j - i > reg_bound:
            raise BoundedTableError(
                f"β_{{{i},{j}}} != 0 contradice las cotas projdim <= {projdim_bound}, reg <= {reg_bound}"
            )
    return BettiTable(table.subject, dict(table.entries), None)


def semicontinuity_violations(binomial: BettiTable, initial: BettiTable) -> List[Spot]:
    """Posiciones de la región común donde β(S/J) > β(S/ini(J))"""
    spots = set(binomial.entries) | set(initial.entries)
    violations = []
    for i, j in sorted(spots):
        try:
            if binomial.get(i, j) > initial.get(i, j):
                violations.append((i, j))
        except BoundedTableError:
            continue
    return violations


def _table_from_ideal_level(subject: str, ideal_entries: Mapping[Spot, int]) -> BettiTable:
    entries = {(0, 0): 1}
    for (t, j), value in ideal_entries.items():
        entries[(t + 1, j)] = entries.get((t + 1, j), 0) + value
    return BettiTable(subject, entries)


def betti_from_linear_quotients(profile: LinearQuotientsProfile, subject: str = "S/I") -> BettiTable:
    """β_{t,t+d}(I) = suma sobre generadores de grado d de C(q_l, t)"""
    if not profile.success:
        raise UnusableProfileError(
            f"el perfil falla en el generador {profile.failed_index + 1}; "
            f"cociente no lineal {profile.failure_colon}"
        )
    ideal_entries: Dict[Spot, int] = {}
    for u, q in zip(profile.ordered_generators, profile.q):
        for t in range(q + 1):
            spot = (t, t + u.degree)
            ideal_entries[spot] = ideal_entries.get(spot, 0) + comb(q, t)
    return _table_from_ideal_level(subject, ideal_entries)


def betti_kmn_closed_form(m: int, n: int) -> BettiTable:
    """Tabla de S/ini(J_{K_{m,n}}) armada con las sumas cerradas, sin calcular cocientes"""
    if n < 1 or m < n:
        raise InvalidFamilyError(f"K_{{m,n}} requiere m >= n >= 1 (recibido m={m}, n={n})")
    exponents: List[Tuple[int, int]] = []
    for i in range(1, m + 1):
        for j in range(m + 1, m + n + 1):
            exponents.append((2, i + j - m - 2))
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            for k in range(1, n + 1):
                exponents.append((3, n + k + j - 3))
    if n > 1:
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for k in range(1, m + 1):
                    exponents.append((3, m + k + j - 3))
    ideal_entries: Dict[Spot, int] = {}
    for d, q in exponents:
        for t in range(q + 1):
            ideal_entries[(t, t + d)] = ideal_entries.get((t, t + d), 0) + comb(q, t)
    return _table_from_ideal_level(f"S/ini(J_{{K_{{{m},{n}}}}})", ideal_entries)


def betti_complete_intersection(degrees: Iterable[int], subject: str = "S/(f)") -> BettiTable:
    """Complejo de Koszul: β_{i,j} = número de i-subconjuntos de grados que suman j"""
    degrees = list(degrees)
    if not degrees:
        raise ValueError("se necesita al menos un grado")
    if any(d < 1 for d in degrees):
        raise ValueError(f"grados no positivos: {degrees}")
    counts: Dict[Spot, int] = {(0, 0): 1}
    for d in degrees:
        step = dict(counts)
        for (i, j), value in counts.items():
            step[(i + 1, j + d)] = step.get((i + 1, j + d), 0) + value
        counts = step
    return BettiTable(subject, counts)


def eagon_northcott_betti(n: int) -> BettiTable:
    """S/J_{K_n}: β_{i,i+1} = i * C(n, i+1)"""
    if n < 2:
        raise InvalidFamilyError(f"el grafo completo necesita n >= 2 (recibido {n})")
    entries = {(0, 0): 1}
    for i in range(1, n):
        entries[(i, i + 1)] = i * comb(n, i + 1)
    return BettiTable(f"S/J_{{K_{n}}}", entries)


@dataclass(frozen=True)
class CornerBaseCase:
    """S/I con I = J + (x_1 y_n): J y J:(x_1 y_n) son intersecciones completas"""
    j_ideal: MonomialIdeal
    j_colon: MonomialIdeal
    top_tor_j: int
    top_tor_colon_shifted: int
    projdim: int
    regularity: int


@dataclass(frozen=True)
class CornerStep:
    k: int
    generator: Monomial
    i: int
    j: int
    colon: MonomialIdeal
    quadric_count: int
    variable_count: int
    top_degree: int
    shifted_top_degree: int
    regularity_bound: int
    contribution: int
    running_total: int


@dataclass(frozen=True)
class CornerCertificate:
    n: int
    base: CornerBaseCase
    steps: Tuple[CornerStep, ...]

    @property
    def value(self) -> int:
        return self.steps[-1].running_total if self.steps else 0

    @property
    def position(self) -> Spot:
        return self.n, 2 * self.n - 2

    @property
    def projdim_bound(self) -> int:
        return self.n

    @property
    def reg_bound(self) -> int:
        return self.n - 2

    def extremal(self) -> ExtremalSet:
        """Con projdim <= n, reg <= n-2 y la esquina no nula, la esquina es el único extremal"""
        return ExtremalSet(((self.position, self.value),))


def _quadrics_and_variables(ideal: MonomialIdeal) -> Tuple[int, int, List[Monomial]]:
    quadrics = [u for u in ideal.generators if u.degree == 2]
    variables = [u for u in ideal.generators if u.degree == 1]
    others = [u for u in ideal.generators if u.degree > 2]
    return len(quadrics), len(variables), others


def _corner_base_case(n: int) -> CornerBaseCase:
    size = 2 * n
    j_ideal = minimal_generators(
        [Monomial.from_variables(n, [k], [k + 1]) for k in range(1, n)], size
    )
    closing = Monomial.from_variables(n, [1], [n])
    if not is_monomial_regular_sequence(j_ideal.generators):
        raise ShapeViolationError("J no es una sucesión regular", 0, j_ideal)
    j_colon = colon_by_monomial(j_ideal, closing)
    quadrics, variables, others = _quadrics_and_variables(j_colon)
    if (not is_monomial_regular_sequence(j_colon.generators) or others
            or quadrics != n - 3 or variables != 2):
        raise ShapeViolationError(
            f"J:(x1*yn) debería tener {n - 3} cuádricas y 2 variables", 0, j_colon
        )
    top = 2 * n - 2
    tor_j = betti_complete_intersection(j_ideal.degrees()).get(n - 1, top)
    tor_colon = betti_complete_intersection(j_colon.degrees()).get(n - 1, top - closing.degree)
    if tor_j != 1 or tor_colon != 1:
        raise ShapeViolationError(
            f"Tor_{n - 1} en grado {top}: S/J da {tor_j}, el cociente desplazado da {tor_colon}",
            0, j_colon,
        )
    # la inyección Tor_{n-1}(S/J:(x1yn))(-2) -> Tor_{n-1}(S/J) es un isomorfismo en grado 2n-2,
    # así que Tor_n(S/I)_{2n-2} = 0 y projdim S/I = n-1
    return CornerBaseCase(j_ideal, j_colon, tor_j, tor_colon, n - 1, n - 2)


def cycle_corner_betti(n: int) -> Tuple[int, CornerCertificate]:
    """β_{n,2n-2}(S/ini(J_{C_n})) por la inducción I_k = I_{k-1} + (v_k)"""
    if n < 4:
        raise InvalidFamilyError(f"la inducción de la esquina necesita n >= 4 (recibido {n})")
    start = time.time()
    logger = get_compute_logger()
    base = _corner_base_case(n)
    current = base.j_ideal.add([Monomial.from_variables(n, [1], [n])])
    extra = [u for u in closed_form_initial_cycle(n).generators if u.degree >= 3]
    steps: List[CornerStep] = []
    total = 0
    for k, v in enumerate(extra, start=1):
        i, j = cycle_generator_indices(v, n)
        colon = colon_by_monomial(current, v)
        quadrics, variables, others = _quadrics_and_variables(colon)
        if not is_monomial_regular_sequence(colon.generators) or len(colon) != n - 1:
            raise ShapeViolationError(
                f"I_{k - 1}:({v}) no es una sucesión regular de longitud {n - 1}", k, colon
            )
        if others or quadrics != j - i - 2 or variables != n - j + i + 1:
            raise ShapeViolationError(
                f"I_{k - 1}:({v}) tiene {quadrics} cuádricas y {variables} variables; "
                f"se esperaban {j - i - 2} y {n - j + i + 1}", k, colon,
            )
        top_degree = sum(colon.degrees())
        shifted = top_degree + v.degree
        if shifted != 2 * n - 2:
            raise ShapeViolationError(f"grado superior desplazado {shifted} != {2 * n - 2}", k, colon)
        contribution = betti_complete_intersection(colon.degrees()).get(n - 1, top_degree)
        reg_bound = (top_degree - (n - 1)) + v.degree - 1
        if reg_bound != n - 2:
            raise ShapeViolationError(f"cota de regularidad {reg_bound} != {n - 2}", k, colon)
        total += contribution
        step = CornerStep(k, v, i, j, colon, quadrics, variables, top_degree, shifted,
                          reg_bound, contribution, total)
        steps.append(step)
        logger.log_event("betti_engine", "CORNER_STEP", {
            "n": n,
            "k": k,
            "v": str(v),
            "colon": str(colon),
            "running_total": total,
        }, level=logging.DEBUG)
        current = current.add([v])
    certificate = CornerCertificate(n, base, tuple(steps))
    logger.log_event("betti_engine", "CORNER_CERTIFIED", {
        "n": n,
        "value": certificate.value,
        "steps": len(steps),
    }, (time.time() - start) * 1000)
    return certificate.value, certificate


@dataclass(frozen=True)
class BaseCaseCheck:
    n: int
    projdim: int
    regularity: int

    @property
    def passed(self) -> bool:
        return self.projdim == self.n - 1 and self.regularity == self.n - 2


def base_case_spot_check(n: int, field_prime: int = 32003, caps=None) -> BaseCaseCheck:
    """projdim y reg de S/(J + (x_1 y_n)) con el oráculo del retículo lcm"""
    from .homology_oracle import FieldPrime, lcm_lattice_betti

    base = _corner_base_case(n)
    ideal = base.j_ideal.add([Monomial.from_variables(n, [1], [n])])
    table = lcm_lattice_betti(ideal, field=FieldPrime(field_prime), caps=caps,
                              subject=f"S/(J + (x1*y{n}))")
    return BaseCaseCheck(n, proj_dim(table), regularity(table))


@dataclass(frozen=True)
class ReferenceValues:
    """Valores publicados para S/J_G"""
    family: str
    params: Tuple[int, ...]
    projdim: int
    regularity: int
    extremal_position: Spot
    extremal_value: int
    disputed: bool = False
    candidates: Tuple[Tuple[str, int], ...] = ()


def published_reference_values(family: str, params: Sequence[int]) -> ReferenceValues:
    params = tuple(int(p) for p in params)
    if family == "cycle":
        (n,) = params
        if n < 3:
            raise InvalidFamilyError(f"un ciclo necesita n >= 3 (recibido {n})")
        if n == 3:
            # C_3 = K_3
            return ReferenceValues(family, params, 2, 1, (2, 3), 2)
        return ReferenceValues(family, params, n, n - 2, (n, 2 * n - 2), comb(n - 1, 2) - 1)
    if family == "kmn":
        m, n = params
        if n < 1 or m < n:
            raise InvalidFamilyError(f"K_{{m,n}} requiere m >= n >= 1 (recibido m={m}, n={n})")
        if m == 1:
            return ReferenceValues(family, params, 1, 1, (1, 2), 1)
        if n == 1:
            return ReferenceValues(family, params, m, 2, (m, m + 2), m - 1)
        p = 2 * m + n - 2
        if m == n:
            candidates = (("theorem", (m - 1) + (n - 1)), ("quoted", n - 1))
            return ReferenceValues(family, params, p, 2, (p, p + 2), n - 1, True, candidates)
        return ReferenceValues(family, params, p, 2, (p, p + 2), n - 1)
    if family == "complete":
        (n,) = params
        if n < 2:
            raise InvalidFamilyError(f"el grafo completo necesita n >= 2 (recibido {n})")
        return ReferenceValues(family, params, n - 1, 1, (n - 1, n), n - 1)
    raise UnsupportedFamilyError(f"sin valores de referencia para la familia {family!r}")
