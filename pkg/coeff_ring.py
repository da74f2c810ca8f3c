"""
Coeff Ring - Dokładne współczynniki skalarne
============================================

Przemienny pierścień współczynników: liczby gaussowsko-wymierne (a + b·i,
a, b ∈ Q) razy jednomiany w symbolach formalnych:

    PI, H1 (= h'(0)), K, OMEGA4 (= objętość S⁴), DIMF (= dim F),
    XI_1..XI_5 (współrzędne styczne ξⱼ), T[fam][j], T2[fam·fam'][j,j']

Do tego redukcja na sferze jednostkowej (eliminacja ξ₅²) i całkowanie
momentów po S⁴.

Użycie:
    from coeff_ring import Scalar, reduce_unit_sphere, sphere_integrate
    s = Scalar.symbol('XI_1', 2)
    print(sphere_integrate(reduce_unit_sphere(s)))   # 1/5*OMEGA4
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

logger = logging.getLogger(__name__)


# Kolejność alfabetu - ustala kanoniczny porządek jednomianów i renderowania
FIXED_SYMBOLS = ('PI', 'H1', 'K', 'OMEGA4', 'DIMF',
                 'XI_1', 'XI_2', 'XI_3', 'XI_4', 'XI_5')
XI_SYMBOLS = FIXED_SYMBOLS[5:]
ENDO_FAMILIES = ('sigmaF', 'Phi', 'PhiStar', 'sigmaFe', 'w', 'wStar')

_FIXED_RANK = {name: rank for rank, name in enumerate(FIXED_SYMBOLS)}
_FAMILY_RANK = {fam: rank for rank, fam in enumerate(ENDO_FAMILIES)}


def trace_symbol_name(family: str, index: int) -> str:
    """Nazwa symbolu śladu tr_F[fam(eⱼ)]"""
    if family not in _FAMILY_RANK:
        raise ValueError(f"Nieznana rodzina endomorfizmów: {family}")
    return f"T[{family}][{index}]"


def trace2_symbol_name(first: Tuple[str, int], second: Tuple[str, int]) -> str:
    """Nazwa symbolu śladu iloczynu dwóch endomorfizmów (kolejność ma znaczenie)"""
    (fam1, j1), (fam2, j2) = first, second
    for fam in (fam1, fam2):
        if fam not in _FAMILY_RANK:
            raise ValueError(f"Nieznana rodzina endomorfizmów: {fam}")
    return f"T2[{fam1}*{fam2}][{j1},{j2}]"


@lru_cache(maxsize=None)
def symbol_key(name: str) -> tuple:
    """Klucz sortowania symbolu w ustalonym alfabecie"""
    if name in _FIXED_RANK:
        return (0, _FIXED_RANK[name])
    if name.startswith('T2['):
        fams, indices = name[3:-1].split('][')
        fam1, fam2 = fams.split('*')
        j1, j2 = (int(part) for part in indices.split(','))
        return (2, _FAMILY_RANK[fam1], j1, _FAMILY_RANK[fam2], j2)
    if name.startswith('T['):
        fam, index = name[2:-1].split('][')
        return (1, _FAMILY_RANK[fam], int(index))
    raise ValueError(f"Symbol spoza alfabetu: {name}")


# =====================================================================
# LICZBY GAUSSOWSKO-WYMIERNE
# =====================================================================

class GaussianRational:
    """Liczba a + b·i z dokładnymi ułamkami a, b"""

    __slots__ = ('re', 'im')

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(value) -> 'GaussianRational':
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        raise TypeError(f"Nie da się zamienić {type(value).__name__} na GaussianRational")

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def inverse(self) -> 'GaussianRational':
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("odwrotność zera")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def render(self) -> str:
        if self.im == 0:
            return _render_fraction(self.re)
        imag = _render_imaginary(self.im)
        if self.re == 0:
            return imag
        sign = '-' if self.im < 0 else '+'
        return f"({_render_fraction(self.re)}{sign}{_render_imaginary(abs(self.im))})"


I = GaussianRational(0, 1)
ONE = GaussianRational(1)


def _render_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _render_imaginary(value: Fraction) -> str:
    if value == 1:
        return 'I'
    if value == -1:
        return '-I'
    return f"{_render_fraction(value)}*I"


# =====================================================================
# JEDNOMIANY
# =====================================================================

Monomial = Tuple[Tuple[str, int], ...]


@lru_cache(maxsize=200_000)
def _merge_monomials(first: Monomial, second: Monomial) -> Monomial:
    if not first:
        return second
    if not second:
        return first
    powers = dict(first)
    for name, exponent in second:
        powers[name] = powers.get(name, 0) + exponent
    return tuple(sorted(powers.items(), key=lambda item: symbol_key(item[0])))


def _monomial_sort_key(monomial: Monomial) -> tuple:
    return tuple((symbol_key(name), exponent) for name, exponent in monomial)


def _render_monomial(monomial: Monomial) -> str:
    return '*'.join(name if exponent == 1 else f"{name}^{exponent}"
                    for name, exponent in monomial)


def _xi_degree(monomial: Monomial) -> int:
    return sum(exponent for name, exponent in monomial if name.startswith('XI_'))


# =====================================================================
# SCALAR
# =====================================================================

class Scalar:
    """
    Dokładny element pierścienia współczynników.

    terms: {jednomian -> GaussianRational}, bez zerowych współczynników.
    Wartość jest niemutowalna - wszystkie operacje zwracają nowe obiekty.
    """

    __slots__ = ('terms', '_hash')

    def __init__(self, terms: Optional[Mapping[Monomial, GaussianRational]] = None):
        self.terms: Dict[Monomial, GaussianRational] = {
            monomial: coeff for monomial, coeff in (terms or {}).items() if coeff
        }
        self._hash = None

    # --- konstruktory -------------------------------------------------

    @classmethod
    def constant(cls, value) -> 'Scalar':
        return cls({(): GaussianRational.coerce(value)})

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> 'Scalar':
        symbol_key(name)  # walidacja nazwy
        if power == 0:
            return cls.constant(1)
        return cls({((name, power),): ONE})

    @classmethod
    def trace_symbol(cls, family: str, index: int) -> 'Scalar':
        return cls.symbol(trace_symbol_name(family, index))

    @classmethod
    def zero(cls) -> 'Scalar':
        return cls()

    @classmethod
    def _coerce(cls, value) -> 'Scalar':
        if isinstance(value, Scalar):
            return value
        return cls.constant(value)

    # --- arytmetyka ----------------------------------------------------

    def __add__(self, other):
        try:
            other = Scalar._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for monomial, coeff in other.terms.items():
            terms[monomial] = terms[monomial] + coeff if monomial in terms else coeff
        return Scalar(terms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({monomial: -coeff for monomial, coeff in self.terms.items()})

    def __sub__(self, other):
        return self + (-Scalar._coerce(other))

    def __rsub__(self, other):
        return Scalar._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            factor = GaussianRational.coerce(other)
            if not factor:
                return Scalar()
            return Scalar({m: c * factor for m, c in self.terms.items()})
        if not isinstance(other, Scalar):
            return NotImplemented
        terms: Dict[Monomial, GaussianRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                monomial = _merge_monomials(m1, m2)
                product = c1 * c2
                terms[monomial] = terms[monomial] + product if monomial in terms else product
        return Scalar(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("ujemne potęgi nie należą do pierścienia")
        result = Scalar.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Scalar.constant(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    # --- inspekcja -----------------------------------------------------

    def constant_value(self) -> Optional[GaussianRational]:
        """Wartość, jeśli Scalar jest stałą; inaczej None"""
        if not self.terms:
            return GaussianRational(0)
        if set(self.terms) == {()}:
            return self.terms[()]
        return None

    def symbols(self) -> set:
        return {name for monomial in self.terms for name, _ in monomial}

    def items(self) -> Iterator[Tuple[Monomial, GaussianRational]]:
        return iter(self.terms.items())

    def xi_split(self) -> Iterator[Tuple[Tuple[int, ...], Monomial, GaussianRational]]:
        """(wykładniki ξ₁..ξ₅, reszta jednomianu, współczynnik) dla każdego wyrazu"""
        for monomial, coeff in self.terms.items():
            powers = dict(monomial)
            exponents = tuple(powers.pop(name, 0) for name in XI_SYMBOLS)
            rest = tuple((name, e) for name, e in monomial if name in powers)
            yield exponents, rest, coeff

    # --- przekształcenia ----------------------------------------------

    def diff(self, name: str) -> 'Scalar':
        """Pochodna cząstkowa po symbolu"""
        terms: Dict[Monomial, GaussianRational] = {}
        for monomial, coeff in self.terms.items():
            powers = dict(monomial)
            exponent = powers.get(name, 0)
            if not exponent:
                continue
            if exponent == 1:
                del powers[name]
            else:
                powers[name] = exponent - 1
            reduced = tuple(sorted(powers.items(), key=lambda item: symbol_key(item[0])))
            product = coeff * exponent
            terms[reduced] = terms[reduced] + product if reduced in terms else product
        return Scalar(terms)

    def xi_euler(self) -> 'Scalar':
        """Operator Eulera Σⱼ ξⱼ ∂/∂ξⱼ: każdy wyraz razy jego stopień w ξ"""
        return Scalar({m: c * _xi_degree(m) for m, c in self.terms.items()})

    def substitute(self, name: str, value: 'Scalar') -> 'Scalar':
        result = Scalar()
        for monomial, coeff in self.terms.items():
            powers = dict(monomial)
            exponent = powers.pop(name, 0)
            rest = Scalar({tuple(sorted(powers.items(),
                                        key=lambda item: symbol_key(item[0]))): coeff})
            result = result + (rest * value ** exponent if exponent else rest)
        return result

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        """Wartość numeryczna przy przypisaniu symboli (brakujący symbol -> KeyError)"""
        total = 0j
        for monomial, coeff in self.terms.items():
            term = complex(coeff)
            for name, exponent in monomial:
                term *= values[name] ** exponent
            total += term
        return total

    # --- renderowanie -------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return '0'
        pieces = []
        for monomial in sorted(self.terms, key=_monomial_sort_key):
            coeff = self.terms[monomial]
            if not monomial:
                piece = coeff.render()
            elif coeff == 1:
                piece = _render_monomial(monomial)
            elif coeff == -1:
                piece = '-' + _render_monomial(monomial)
            else:
                piece = f"{coeff.render()}*{_render_monomial(monomial)}"
            pieces.append(piece)
        text = pieces[0]
        for piece in pieces[1:]:
            text += f" - {piece[1:]}" if piece.startswith('-') else f" + {piece}"
        return text

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Scalar({self.render()!r})"


def ring_arith(a: Scalar, b: Optional[Scalar], op: str) -> Scalar:
    """Dodawanie, mnożenie i negacja w jednym wejściu (op: add | mul | neg)"""
    if op == 'add':
        return a + b
    if op == 'mul':
        return a * b
    if op == 'neg':
        return -a
    raise ValueError(f"Nieznana operacja: {op}")


# =====================================================================
# SFERA JEDNOSTKOWA S⁴
# =====================================================================

def _one_minus_first_four() -> Scalar:
    result = Scalar.constant(1)
    for name in XI_SYMBOLS[:4]:
        result = result - Scalar.symbol(name, 2)
    return result


_SPHERE_RELATION = _one_minus_first_four()


def reduce_unit_sphere(a: Scalar) -> Scalar:
    """
    Eliminuje ξ₅² = 1 - ξ₁² - ξ₂² - ξ₃² - ξ₄² aż żaden jednomian nie ma ξ₅
    w potędze ≥ 2.
    """
    if not any(dict(m).get('XI_5', 0) >= 2 for m in a.terms):
        return a
    result = Scalar()
    for monomial, coeff in a.terms.items():
        powers = dict(monomial)
        exponent = powers.pop('XI_5', 0)
        if exponent < 2:
            result = result + Scalar({monomial: coeff})
            continue
        pairs, remainder = divmod(exponent, 2)
        if remainder:
            powers['XI_5'] = 1
        rest = Scalar({tuple(sorted(powers.items(), key=lambda item: symbol_key(item[0]))): coeff})
        result = result + rest * _SPHERE_RELATION ** pairs
    return result


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def sphere_moment(exponents: Tuple[int, ...]) -> Fraction:
    """∫_{S⁴} ξ₁^{e₁}···ξ₅^{e₅} dσ / Ω₄ (zero dla nieparzystych wykładników)"""
    if any(e % 2 for e in exponents):
        return Fraction(0)
    halves = [e // 2 for e in exponents]
    numerator = math.prod(_double_factorial(2 * h - 1) for h in halves)
    denominator = math.prod(3 + 2 * m for m in range(1, sum(halves) + 1))
    return Fraction(numerator, denominator)


def sphere_integrate(a: Scalar) -> Scalar:
    """Zastępuje każdy jednomian w ξ jego całką po S⁴ (wielokrotność OMEGA4)"""
    omega = (('OMEGA4', 1),)
    terms: Dict[Monomial, GaussianRational] = {}
    for exponents, rest, coeff in a.xi_split():
        moment = sphere_moment(exponents)
        if not moment:
            continue
        monomial = _merge_monomials(rest, omega)
        value = coeff * moment
        terms[monomial] = terms[monomial] + value if monomial in terms else value
    return Scalar(terms)


def tangential_norm_squared() -> Scalar:
    """|ξ'|² = Σⱼ ξⱼ² jako jawny wielomian"""
    result = Scalar()
    for name in XI_SYMBOLS:
        result = result + Scalar.symbol(name, 2)
    return result
