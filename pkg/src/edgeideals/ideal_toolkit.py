"""
Ideales monomiales: generadores minimales, cocientes, sucesiones regulares y cocientes lineales
"""
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionError
from .poly_core import Monomial


def generator_order_key(u: Monomial) -> Tuple[int, Tuple[int, ...]]:
    """Grado ascendente y, a igual grado, lex descendente"""
    return u.degree, tuple(-e for e in u.exponents)


@dataclass(frozen=True)
class MonomialIdeal:
    """Ideal monomial guardado por su sistema minimal de generadores.

    Los generadores se mantienen en el orden de `generator_order_key`, así que la
    representación es canónica y dos ideales iguales comparan iguales. El ideal
    cero es el de tupla vacía.
    """
    nvars: int
    generators: Tuple[Monomial, ...] = field(default=())

    def __post_init__(self):
        for u in self.generators:
            if u.nvars != self.nvars:
                raise DimensionError(f"{u} no vive en un anillo de {self.nvars} variables")
        object.__setattr__(self, "generators", tuple(sorted(self.generators, key=generator_order_key)))

    @property
    def n(self) -> int:
        return self.nvars // 2

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(u.is_one() for u in self.generators)

    def contains(self, u: Monomial) -> bool:
        return any(g.divides(u) for g in self.generators)

    def add(self, gens: Iterable[Monomial]) -> "MonomialIdeal":
        return minimal_generators(list(self.generators) + list(gens), self.nvars)

    def is_squarefree(self) -> bool:
        return all(u.is_squarefree() for u in self.generators)

    def degrees(self) -> List[int]:
        return [u.degree for u in self.generators]

    def lcm_of_generators(self) -> Monomial:
        out = Monomial((0,) * self.nvars)
        for u in self.generators:
            out = out.lcm(u)
        return out

    def __str__(self) -> str:
        return "(" + ", ".join(str(u) for u in self.generators) + ")"


def minimal_generators(gens: Iterable[Monomial], nvars: Optional[int] = None) -> MonomialIdeal:
    """Subconjunto minimal respecto a la divisibilidad"""
    unique = sorted(set(gens), key=generator_order_key)
    if nvars is None:
        if not unique:
            raise DimensionError("no se puede deducir el anillo de un ideal cero sin nvars")
        nvars = unique[0].nvars
    kept: List[Monomial] = []
    # Con grado ascendente basta comparar contra los ya aceptados
    for u in unique:
        if not any(g.divides(u) for g in kept):
            kept.append(u)
    return MonomialIdeal(nvars, tuple(kept))


def colon_by_monomial(ideal: MonomialIdeal, v: Monomial) -> MonomialIdeal:
    """I : (v), generado por u / gcd(u, v) para u generador de I"""
    return minimal_generators((u.colon(v) for u in ideal.generators), ideal.nvars)


def is_variable_generated(ideal: MonomialIdeal) -> bool:
    return all(u.degree == 1 for u in ideal.generators)


def is_monomial_regular_sequence(gens: Iterable[Monomial]) -> bool:
    """Soportes disjuntos dos a dos (sobre los generadores minimales)"""
    gens = list(gens)
    if not gens:
        return True
    minimal = minimal_generators(gens, gens[0].nvars).generators
    seen = set()
    for u in minimal:
        if u.is_one():
            return False
        support = set(u.support())
        if support & seen:
            return False
        seen |= support
    return True


def canonical_generator_order(gens: Iterable[Monomial]) -> List[Monomial]:
    return sorted(set(gens), key=generator_order_key)


@dataclass(frozen=True)
class LinearQuotientsProfile:
    """Resultado de recorrer (u_1..u_{l-1}) : (u_l) en el orden dado"""
    ordered_generators: Tuple[Monomial, ...]
    q: Tuple[int, ...]
    failed_index: Optional[int] = None
    failure_colon: Optional[MonomialIdeal] = None

    @property
    def success(self) -> bool:
        return self.failed_index is None

    def non_variable_generators(self) -> List[Monomial]:
        """Evidencia del fallo: generadores del cociente que no son variables"""
        if self.failure_colon is None:
            return []
        return [u for u in self.failure_colon.generators if u.degree != 1]


def linear_quotients_profile(ordered: Sequence[Monomial]) -> LinearQuotientsProfile:
    """q_l = número de variables que generan (u_1..u_{l-1}) : (u_l); q_1 = 0.

    Se detiene en el primer cociente que no está generado por variables y
    guarda todos sus generadores minimales.
    """
    ordered = tuple(ordered)
    if len(set(ordered)) != len(ordered):
        raise ValueError("los generadores deben ser distintos")
    if not ordered:
        return LinearQuotientsProfile((), ())
    nvars = ordered[0].nvars
    q: List[int] = [0]
    previous = minimal_generators([ordered[0]], nvars)
    for index in range(1, len(ordered)):
        u = ordered[index]
        colon = colon_by_monomial(previous, u)
        if not is_variable_generated(colon):
            return LinearQuotientsProfile(ordered, tuple(q), index, colon)
        q.append(len(colon))
        previous = previous.add([u])
    return LinearQuotientsProfile(ordered, tuple(q))


def cycle_generator_indices(v: Monomial, n: int) -> Tuple[int, int]:
    """Recupera (i, j) de v = x_i x_{j+1}...x_n y_1...y_{i-1} y_j"""
    xs = [k + 1 for k in range(n) if v.exponents[k]]
    ys = [k + 1 for k in range(n) if v.exponents[n + k]]
    if not xs or not ys:
        raise ValueError(f"{v} no tiene la forma de un generador del ciclo")
    i, j = xs[0], ys[-1]
    expected = Monomial.from_variables(n, [i] + list(range(j + 1, n + 1)),
                                       list(range(1, i)) + [j])
    if expected != v or not 2 <= j - i <= n - 2:
        raise ValueError(f"{v} no tiene la forma de un generador del ciclo")
    return i, j
