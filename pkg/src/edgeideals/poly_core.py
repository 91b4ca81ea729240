"""
Monomios, binomios y polinomios enteros en S = K[x_1..x_n, y_1..y_n] con orden lex
"""
import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.monomials import (
    monomial_divides,
    monomial_gcd,
    monomial_lcm,
    monomial_ldiv,
    monomial_mul,
)

from .errors import DimensionError, ParseError


class VariableKind(str, Enum):
    X = "x"
    Y = "y"


@dataclass(frozen=True)
class Variable:
    kind: VariableKind
    index: int

    def position(self, n: int) -> int:
        """Posición 0-based en el vector de exponentes de longitud 2n"""
        if not 1 <= self.index <= n:
            raise DimensionError(f"índice {self.index} fuera de 1..{n}")
        return self.index - 1 if self.kind is VariableKind.X else n + self.index - 1

    def to_monomial(self, n: int) -> "Monomial":
        exps = [0] * (2 * n)
        exps[self.position(n)] = 1
        return Monomial(tuple(exps))

    def __str__(self) -> str:
        return f"{self.kind.value}{self.index}"


def lex_compare(a: "Monomial", b: "Monomial") -> int:
    """1 si a > b, 0 si son iguales, -1 si a < b (lex con x_1 > ... > x_n > y_1 > ... > y_n)"""
    if len(a.exponents) != len(b.exponents):
        raise DimensionError(
            f"anillos distintos: {len(a.exponents)} vs {len(b.exponents)} variables"
        )
    if a.exponents == b.exponents:
        return 0
    # La comparación de tuplas es exactamente lex sobre las posiciones
    return 1 if a.exponents > b.exponents else -1


@total_ordering
@dataclass(frozen=True)
class Monomial:
    """Vector de exponentes: posiciones 0..n-1 = x_1..x_n, n..2n-1 = y_1..y_n"""
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) % 2:
            raise DimensionError(f"longitud impar de exponentes: {len(self.exponents)}")
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"exponente negativo en {self.exponents}")

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * (2 * n))

    @classmethod
    def from_variables(cls, n: int, xs: Iterable[int] = (), ys: Iterable[int] = ()) -> "Monomial":
        """Producto de x_i (i en xs) e y_j (j en ys), con repeticiones"""
        exps = [0] * (2 * n)
        for i in xs:
            exps[Variable(VariableKind.X, i).position(n)] += 1
        for j in ys:
            exps[Variable(VariableKind.Y, j).position(n)] += 1
        return cls(tuple(exps))

    @property
    def n(self) -> int:
        return len(self.exponents) // 2

    @property
    def nvars(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def is_one(self) -> bool:
        return not any(self.exponents)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def support(self) -> Tuple[int, ...]:
        return tuple(k for k, e in enumerate(self.exponents) if e)

    def _check(self, other: "Monomial"):
        if len(self.exponents) != len(other.exponents):
            raise DimensionError(
                f"anillos distintos: {len(self.exponents)} vs {len(other.exponents)} variables"
            )

    def multiply(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(monomial_mul(self.exponents, other.exponents))

    __mul__ = multiply

    def divides(self, other: "Monomial") -> bool:
        """True si self divide a other"""
        self._check(other)
        return monomial_divides(self.exponents, other.exponents)

    def gcd(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(monomial_gcd(self.exponents, other.exponents))

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(monomial_lcm(self.exponents, other.exponents))

    def quotient(self, other: "Monomial") -> "Monomial":
        """self / other; other debe dividir a self"""
        if not other.divides(self):
            raise ValueError(f"{other} no divide a {self}")
        return Monomial(monomial_ldiv(self.exponents, other.exponents))

    def colon(self, other: "Monomial") -> "Monomial":
        """El menor u con self | u*other, es decir self / gcd(self, other)"""
        return self.quotient(self.gcd(other))

    def __lt__(self, other: "Monomial") -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return lex_compare(self, other) < 0

    def __str__(self) -> str:
        n = self.n
        factors = []
        for pos, e in enumerate(self.exponents):
            if not e:
                continue
            name = f"x{pos + 1}" if pos < n else f"y{pos - n + 1}"
            factors.append(name if e == 1 else f"{name}^{e}")
        return "*".join(factors) if factors else "1"


class Polynomial:
    """Combinación entera finita de monomios; no guarda coeficientes nulos"""

    __slots__ = ("_terms", "_nvars")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None, nvars: Optional[int] = None):
        clean: Dict[Monomial, int] = {}
        for mono, coeff in (terms or {}).items():
            if nvars is None:
                nvars = mono.nvars
            elif mono.nvars != nvars:
                raise DimensionError(f"anillos distintos: {mono.nvars} vs {nvars} variables")
            if coeff:
                clean[mono] = clean.get(mono, 0) + int(coeff)
        self._terms = MappingProxyType({m: c for m, c in clean.items() if c})
        self._nvars = nvars

    @classmethod
    def monomial(cls, mono: Monomial, coeff: int = 1) -> "Polynomial":
        return cls({mono: coeff})

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return self._terms

    @property
    def nvars(self) -> Optional[int]:
        return self._nvars

    def is_zero(self) -> bool:
        return not self._terms

    def leading_monomial(self) -> Optional[Monomial]:
        return max(self._terms) if self._terms else None

    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        """Términos en orden lex descendente"""
        return sorted(self._terms.items(), key=lambda item: item[0], reverse=True)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            terms[mono] = terms.get(mono, 0) + coeff
        return Polynomial(terms, self._nvars or other._nvars)

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()}, self._nvars)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def mul_monomial(self, mono: Monomial, coeff: int = 1) -> "Polynomial":
        return Polynomial({m * mono: c * coeff for m, c in self._terms.items()}, self._nvars)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for k, (mono, coeff) in enumerate(self.sorted_terms()):
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            body = str(mono) if magnitude == 1 else (
                str(magnitude) if mono.is_one() else f"{magnitude}*{mono}"
            )
            if k == 0:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self})"


@dataclass(frozen=True)
class Binomial:
    """lead - trail con coeficientes +1/-1 y lead > trail en lex"""
    lead: Monomial
    trail: Monomial

    def __post_init__(self):
        if lex_compare(self.lead, self.trail) <= 0:
            raise ValueError(f"el término líder debe superar al cola: {self.lead} vs {self.trail}")

    @classmethod
    def from_terms(cls, a: Monomial, b: Monomial) -> "Binomial":
        """Binomio ±(a - b) normalizado para que el líder sea el mayor"""
        return cls(a, b) if a > b else cls(b, a)

    def mul_monomial(self, mono: Monomial) -> "Binomial":
        return Binomial(self.lead * mono, self.trail * mono)

    def to_polynomial(self) -> Polynomial:
        return Polynomial({self.lead: 1, self.trail: -1})

    def monomials(self) -> Tuple[Monomial, Monomial]:
        return self.lead, self.trail

    def __str__(self) -> str:
        return f"{self.lead} - {self.trail}"


def _find_reducer(mono: Monomial, basis: Sequence[Binomial]) -> Optional[Binomial]:
    for g in basis:
        if monomial_divides(g.lead.exponents, mono.exponents):
            return g
    return None


def reduce(f: Polynomial, basis: Sequence[Binomial]) -> Polynomial:
    """Forma normal de f módulo `basis`.

    Siempre se reduce primero el término lex-mayor reducible: t = c*q*lead(g)
    se sustituye por c*q*trail(g). Cada paso baja estrictamente en el orden
    monomial, así que el bucle termina.
    """
    terms: Dict[Monomial, int] = dict(f.terms)
    while True:
        target = None
        for mono in sorted(terms, reverse=True):
            g = _find_reducer(mono, basis)
            if g is not None:
                target = (mono, g)
                break
        if target is None:
            return Polynomial(terms, f.nvars)
        mono, g = target
        coeff = terms.pop(mono)
        replacement = Monomial(monomial_mul(
            monomial_ldiv(mono.exponents, g.lead.exponents), g.trail.exponents
        ))
        new_coeff = terms.get(replacement, 0) + coeff
        if new_coeff:
            terms[replacement] = new_coeff
        else:
            terms.pop(replacement, None)


def s_polynomial(g1: Binomial, g2: Binomial) -> Polynomial:
    """lcm/lead(g1) * g1 - lcm/lead(g2) * g2"""
    lcm = g1.lead.lcm(g2.lead)
    left = g1.to_polynomial().mul_monomial(lcm.quotient(g1.lead))
    right = g2.to_polynomial().mul_monomial(lcm.quotient(g2.lead))
    return left - right


_FACTOR = re.compile(r"^([xy])(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, n: int) -> Monomial:
    """Inverso de la convención de impresión: `x1*x4*y3`, `x1^2*y2`, `1`"""
    text = text.strip()
    if text == "1":
        return Monomial.one(n)
    if not text:
        raise ParseError("monomio vacío")
    exps = [0] * (2 * n)
    for factor in text.split("*"):
        match = _FACTOR.match(factor.strip())
        if match is None:
            raise ParseError(f"factor inválido {factor!r} en {text!r}")
        kind, index, power = match.groups()
        var = Variable(VariableKind(kind), int(index))
        try:
            pos = var.position(n)
        except DimensionError as e:
            raise ParseError(f"{e} en {text!r}") from None
        exps[pos] += int(power) if power else 1
    return Monomial(tuple(exps))


def parse_binomial(text: str, n: int) -> Binomial:
    """`lead - trail`; el orden se normaliza con lex"""
    parts = text.split("-")
    if len(parts) != 2:
        raise ParseError(f"se esperaba `a - b`: {text!r}")
    a, b = (parse_monomial(p, n) for p in parts)
    if a == b:
        raise ParseError(f"binomio nulo: {text!r}")
    return Binomial.from_terms(a, b)
