"""
Oráculos de homología: retículo lcm para ideales monomiales y complejo de Koszul
sobre Z/p para ideales binomiales de aristas
"""
import logging
import time
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix, isprime
from sympy.polys.monomials import monomial_divides, monomial_lcm

from .betti_engine import BettiRegion, BettiTable
from .config import MAX_FIELD_PRIME, CapsSettings
from .errors import CapExceededError, NonSquarefreeError
from .gb_engine import GroebnerBasis
from .ideal_toolkit import MonomialIdeal, minimal_generators, generator_order_key
from .logging_compute import get_compute_logger
from .parallel import run_spots
from .poly_core import Monomial, Polynomial, reduce

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class FieldPrime:
    p: int = 32003

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} no es primo")
        if self.p >= MAX_FIELD_PRIME:
            raise ValueError(f"{self.p} no cabe en la aritmética int64 (p < 2^31)")


@dataclass
class MatrixModP:
    """Matriz densa con entradas reducidas en [0, p)"""
    data: np.ndarray
    field: FieldPrime = FieldPrime()

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.int64)
        if data.ndim == 1 and data.size == 0:
            data = data.reshape(0, 0)
        if data.ndim != 2:
            raise ValueError(f"se esperaba una matriz, forma {data.shape}")
        self.data = data % self.field.p

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldPrime = FieldPrime()) -> "MatrixModP":
        return cls(np.zeros((rows, cols), dtype=np.int64), field)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]


def rank_mod_p(matrix: MatrixModP) -> int:
    """Eliminación gaussiana sobre Z/p (FieldPrime garantiza p < 2^31)"""
    p = matrix.field.p
    a = matrix.data.copy()
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nonzero = np.nonzero(a[rank:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank] = (a[rank] * inv) % p
        below = np.nonzero(a[rank + 1:, c])[0] + rank + 1
        if below.size:
            factors = a[below, c][:, None]
            a[below] = (a[below] - factors * a[rank]) % p
        rank += 1
    return rank


def rank_rational(rows: Sequence[Sequence[int]]) -> int:
    """Rango exacto sobre Q"""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return Matrix(rows).rank()


def _resolve_caps(caps: Optional[CapsSettings]) -> CapsSettings:
    return caps if caps is not None else CapsSettings()


# ---------------------------------------------------------------------------
# Retículo lcm
# ---------------------------------------------------------------------------

def lcm_lattice(ideal: MonomialIdeal, max_size: Optional[int] = None) -> List[Monomial]:
    """mcm de todos los subconjuntos no vacíos de generadores (clausura por mcm con generadores)"""
    gens = [u.exponents for u in ideal.generators]
    elements = set(gens)
    frontier = list(elements)
    while frontier:
        fresh = []
        for b in frontier:
            for g in gens:
                c = monomial_lcm(b, g)
                if c not in elements:
                    elements.add(c)
                    fresh.append(c)
        if max_size is not None and len(elements) > max_size:
            get_compute_logger().log_refusal("homology_oracle", "lcm_lattice", len(elements), max_size)
            raise CapExceededError("retículo lcm", len(elements), max_size)
        frontier = fresh
    return sorted((Monomial(e) for e in elements), key=generator_order_key)


def _popcount(values: np.ndarray, width: int) -> np.ndarray:
    counts = np.zeros(values.shape, dtype=np.int64)
    for t in range(width):
        counts += (values >> t) & 1
    return counts


def _boundary(faces_hi: np.ndarray, index: np.ndarray, rows: int, width: int) -> np.ndarray:
    """Borde de las caras de tamaño s en las de tamaño s-1, con signo (-1)^posición"""
    out = np.zeros((rows, len(faces_hi)), dtype=np.int64)
    cols = np.arange(len(faces_hi))
    for t in range(width):
        bit = 1 << t
        has = (faces_hi & bit) != 0
        if not has.any():
            continue
        sel = faces_hi[has]
        signs = np.where(_popcount(sel & (bit - 1), t) % 2 == 0, 1, -1)
        out[index[sel ^ bit], cols[has]] = signs
    return out


def _upper_koszul_betti(b: Exponents, gens: Sequence[Exponents], field: FieldPrime,
                        exact: bool) -> Dict[int, int]:
    """β_{i,b}(S/I) = dim H~_{i-2}(K^b), K^b = {F ⊆ sop(b) : b - F ∈ I}"""
    support = [k for k, e in enumerate(b) if e]
    width = len(support)
    # F es cara si algún generador g | b no usa ninguna posición con g_s = b_s
    local_masks = []
    for g in gens:
        if monomial_divides(g, b):
            mask = 0
            for t, pos in enumerate(support):
                if g[pos] == b[pos]:
                    mask |= 1 << t
            local_masks.append(mask)
    subsets = np.arange(1 << width, dtype=np.int64)
    is_face = np.zeros(1 << width, dtype=bool)
    for mask in local_masks:
        is_face |= (subsets & mask) == 0
    sizes = _popcount(subsets, width)
    faces = [subsets[is_face & (sizes == s)] for s in range(width + 1)]
    index = np.full(1 << width, -1, dtype=np.int64)
    for arr in faces:
        index[arr] = np.arange(len(arr))

    ranks = [0] * (width + 2)
    for s in range(1, width + 1):
        if len(faces[s]) == 0 or len(faces[s - 1]) == 0:
            continue
        block = _boundary(faces[s], index, len(faces[s - 1]), width)
        ranks[s] = rank_rational(block.tolist()) if exact else rank_mod_p(MatrixModP(block, field))

    betti: Dict[int, int] = {}
    for i in range(1, width + 2):
        size = i - 1
        value = len(faces[size]) - ranks[size] - ranks[size + 1]
        if value:
            betti[i] = value
    return betti


def lcm_lattice_betti(ideal: MonomialIdeal, squarefree_required: bool = True,
                      field: Optional[FieldPrime] = None, caps: Optional[CapsSettings] = None,
                      exact: bool = False, threads: int = 1,
                      subject: Optional[str] = None) -> BettiTable:
    """Tabla total de S/I sumando la homología multigraduada sobre el retículo lcm"""
    field = field or FieldPrime()
    caps = _resolve_caps(caps)
    logger = get_compute_logger()
    subject = subject or f"S/{ideal}"
    if ideal.is_unit():
        raise ValueError("S/(1) = 0 no tiene tabla de Betti")
    if ideal.is_zero():
        return BettiTable(subject, {(0, 0): 1})
    if squarefree_required and not ideal.is_squarefree():
        raise NonSquarefreeError(f"{ideal} no es libre de cuadrados")

    start = time.time()
    lattice = lcm_lattice(ideal, caps.max_lattice_size)
    work = sum(1 << len(b.support()) for b in lattice)
    if work > caps.max_lattice_work:
        logger.log_refusal("homology_oracle", "lcm_lattice_work", work, caps.max_lattice_work)
        raise CapExceededError("trabajo del retículo lcm", work, caps.max_lattice_work)
    if exact and len(lattice) > caps.max_exact_lattice:
        logger.log_refusal("homology_oracle", "exact_lattice", len(lattice), caps.max_exact_lattice)
        raise CapExceededError("retículo en modo exacto", len(lattice), caps.max_exact_lattice)

    gens = [u.exponents for u in ideal.generators]
    tasks: Dict[Exponents, Callable[[], Dict[int, int]]] = {
        b.exponents: (lambda e=b.exponents: _upper_koszul_betti(e, gens, field, exact))
        for b in lattice
    }
    results = run_spots(tasks, threads)

    entries: Dict[Tuple[int, int], int] = {(0, 0): 1}
    for b, betti in results.items():
        degree = sum(b)
        for i, value in betti.items():
            entries[(i, degree)] = entries.get((i, degree), 0) + value
    table = BettiTable(subject, entries)
    logger.log_event("homology_oracle", "LCM_LATTICE_BETTI", {
        "subject": subject,
        "lattice_size": len(lattice),
        "work": work,
        "field": field.p,
        "exact": exact,
    }, (time.time() - start) * 1000)
    return table


# ---------------------------------------------------------------------------
# Complejo de Koszul
# ---------------------------------------------------------------------------

def _standard_exponents(lead_exps: Sequence[Exponents], degree: int, nvars: int) -> List[Exponents]:
    """Recorrido en profundidad en orden lex descendente; poda prefijos ya divisibles"""
    out: List[Exponents] = []
    exps = [0] * nvars

    def divisible(candidate: Exponents) -> bool:
        return any(monomial_divides(lead, candidate) for lead in lead_exps)

    def fill(pos: int, remaining: int):
        if pos == nvars - 1:
            exps[pos] = remaining
            candidate = tuple(exps)
            if not divisible(candidate):
                out.append(candidate)
            exps[pos] = 0
            return
        for e in range(remaining, -1, -1):
            exps[pos] = e
            if e and divisible(tuple(exps)):
                continue
            fill(pos + 1, remaining - e)
        exps[pos] = 0

    if degree == 0:
        one = (0,) * nvars
        return [] if divisible(one) else [one]
    fill(0, degree)
    return out


def standard_monomials(leads: Sequence[Monomial], degree: int, nvars: Optional[int] = None) -> List[Monomial]:
    """Monomios de grado `degree` que ningún líder divide, en orden lex descendente"""
    leads = list(leads)
    if nvars is None:
        if not leads:
            raise ValueError("sin líderes hace falta indicar nvars")
        nvars = leads[0].nvars
    return [Monomial(e) for e in _standard_exponents([u.exponents for u in leads], degree, nvars)]


KoszulSource = Union[GroebnerBasis, MonomialIdeal]
BasisElement = Tuple[Tuple[int, ...], Exponents]


class _KoszulContext:
    """Bases, formas normales y bloques multigraduados del complejo K(x, y; S/J)"""

    def __init__(self, source: KoszulSource, caps: CapsSettings):
        self.caps = caps
        if isinstance(source, GroebnerBasis):
            self.nvars = 2 * source.n
            self.reducers = list(source.elements)
            self.leads = [u.exponents for u in minimal_generators(source.leads(), self.nvars)]
            self.subject = f"S/J_{{{source.graph.name or 'G'}}}"
            self.binomial = True
        else:
            self.nvars = source.nvars
            self.reducers = None
            self.leads = [u.exponents for u in source.generators]
            self.subject = f"S/{source}"
            self.binomial = False
        self.half = self.nvars // 2
        self._std: Dict[int, List[Exponents]] = {}
        self._normal_forms: Dict[Exponents, List[Tuple[Exponents, int]]] = {}

    def std(self, degree: int) -> List[Exponents]:
        if degree not in self._std:
            self._std[degree] = _standard_exponents(self.leads, degree, self.nvars)
        return self._std[degree]

    def group_size(self, i: int, j: int) -> int:
        if i < 0 or i > self.nvars or j < i:
            return 0
        return comb(self.nvars, i) * len(self.std(j - i))

    def check_group(self, i: int, j: int):
        size = self.group_size(i, j)
        if size > self.caps.max_spot_basis:
            get_compute_logger().log_refusal("homology_oracle", f"koszul_group_{i}_{j}", size,
                                             self.caps.max_spot_basis)
            raise CapExceededError(f"grupo de Koszul K_{i},{j}", size, self.caps.max_spot_basis,
                                   {"i": i, "j": j})

    def normal_form(self, exps: Exponents) -> List[Tuple[Exponents, int]]:
        cached = self._normal_forms.get(exps)
        if cached is not None:
            return cached
        if self.reducers is None:
            if any(monomial_divides(lead, exps) for lead in self.leads):
                result = []
            else:
                result = [(exps, 1)]
        else:
            nf = reduce(Polynomial.monomial(Monomial(exps)), self.reducers)
            result = [(m.exponents, c) for m, c in nf.sorted_terms()]
        self._normal_forms[exps] = result
        return result

    def block_key(self, subset: Tuple[int, ...], exps: Exponents) -> Tuple[int, ...]:
        total = list(exps)
        for v in subset:
            total[v] += 1
        if not self.binomial:
            return tuple(total)
        half = self.half
        return tuple(total[v] + total[half + v] for v in range(half)) + (sum(total[:half]),)

    def basis(self, i: int, j: int) -> Dict[Tuple[int, ...], List[BasisElement]]:
        blocks: Dict[Tuple[int, ...], List[BasisElement]] = {}
        if i < 0 or i > self.nvars or j < i:
            return blocks
        std = self.std(j - i)
        for subset in combinations(range(self.nvars), i):
            for exps in std:
                blocks.setdefault(self.block_key(subset, exps), []).append((subset, exps))
        return blocks

    def differential(self, i: int, j: int, field: FieldPrime) -> Dict[Tuple[int, ...], np.ndarray]:
        """Bloques de ∂_{i,j}: K_{i,j} -> K_{i-1,j} como matrices enteras (filas = destino)"""
        sources = self.basis(i, j)
        targets = self.basis(i - 1, j)
        out: Dict[Tuple[int, ...], np.ndarray] = {}
        for key in sorted(sources):
            cols = sources[key]
            if len(cols) > self.caps.max_spot_columns:
                get_compute_logger().log_refusal("homology_oracle", f"koszul_block_{i}_{j}",
                                                 len(cols), self.caps.max_spot_columns)
                raise CapExceededError(f"bloque de ∂_{i},{j}", len(cols), self.caps.max_spot_columns,
                                       {"i": i, "j": j, "key": key})
            rows = targets.get(key, [])
            row_index = {element: r for r, element in enumerate(rows)}
            block = np.zeros((len(rows), len(cols)), dtype=np.int64)
            for c, (subset, exps) in enumerate(cols):
                for t, v in enumerate(subset):
                    sign = -1 if t % 2 else 1
                    shifted = list(exps)
                    shifted[v] += 1
                    rest = subset[:t] + subset[t + 1:]
                    for mono, coeff in self.normal_form(tuple(shifted)):
                        block[row_index[(rest, mono)], c] += sign * coeff
            out[key] = block
        return out

    def rank(self, i: int, j: int, field: FieldPrime) -> int:
        if i < 1 or self.group_size(i, j) == 0 or self.group_size(i - 1, j) == 0:
            return 0
        start = time.time()
        total = sum(
            rank_mod_p(MatrixModP(block, field))
            for block in self.differential(i, j, field).values()
            if block.size
        )
        get_compute_logger().log_event("homology_oracle", "KOSZUL_SPOT", {
            "i": i,
            "j": j,
            "dimension": self.group_size(i, j),
            "rank": total,
        }, (time.time() - start) * 1000, level=logging.DEBUG)
        return total


def koszul_differential(source: KoszulSource, i: int, j: int, field: Optional[FieldPrime] = None,
                        caps: Optional[CapsSettings] = None) -> Dict[Tuple[int, ...], MatrixModP]:
    """Bloques multigraduados de ∂_{i,j} reducidos módulo p"""
    field = field or FieldPrime()
    context = _KoszulContext(source, _resolve_caps(caps))
    context.check_group(i, j)
    return {key: MatrixModP(block, field) for key, block in context.differential(i, j, field).items()}


def koszul_betti(source: KoszulSource, i_max: int, j_max: int, field: Optional[FieldPrime] = None,
                 caps: Optional[CapsSettings] = None, row_max: Optional[int] = None,
                 threads: int = 1, subject: Optional[str] = None) -> BettiTable:
    """β_{i,j} = dim K_{i,j} - rang ∂_{i,j} - rang ∂_{i+1,j} para i <= i_max, j <= j_max.

    La tabla queda acotada por (i_max, j_max, row_max); `certify_table` la
    promueve a total cuando hay cotas de projdim y reg.
    """
    field = field or FieldPrime()
    caps = _resolve_caps(caps)
    context = _KoszulContext(source, caps)
    logger = get_compute_logger()
    start = time.time()

    spots = [
        (i, j)
        for i in range(0, min(i_max, context.nvars) + 1)
        for j in range(i, j_max + 1)
        if row_max is None or j - i <= row_max
    ]
    # check_group llena la caché de monomios estándar antes de repartir en hilos
    rank_keys = set()
    for i, j in spots:
        context.check_group(i, j)
        if i >= 1:
            context.check_group(i - 1, j)
            rank_keys.add((i, j))
        if i + 1 <= context.nvars and j >= i + 1:
            context.check_group(i + 1, j)
            rank_keys.add((i + 1, j))

    tasks = {key: (lambda k=key: context.rank(k[0], k[1], field)) for key in rank_keys}
    ranks = run_spots(tasks, threads)

    entries: Dict[Tuple[int, int], int] = {}
    for i, j in spots:
        value = context.group_size(i, j) - ranks.get((i, j), 0) - ranks.get((i + 1, j), 0)
        if value:
            entries[(i, j)] = value
    region = BettiRegion(i_max, j_max, row_max)
    table = BettiTable(subject or context.subject, entries, region)
    logger.log_event("homology_oracle", "KOSZUL_BETTI", {
        "subject": table.subject,
        "region": [i_max, j_max, row_max],
        "spots": len(spots),
        "field": field.p,
    }, (time.time() - start) * 1000)
    return table
