"""
Symbol Calculus - Symbole wymierne w ξₙ
=======================================

RationalSymbol to suma wyrazów

    C · ξₙᵖ · (ξₙ - i)^(-a) · (ξₙ + i)^(-b)

ze współczynnikami C w algebrze Clifforda. Przed restrykcją mianownik to
(|ξ'|² + ξₙ²)^q, więc a = b = q, a |ξ'|² jest prawdziwą funkcją ξ₁..ξ₅.
Po restrykcji (|ξ'| = 1) bieguny leżą tylko w ±i.

Operacje: rozkład na ułamki proste, projekcja π⁺ (zostają bieguny w +i),
pochodne ∂ξₙ, ∂ξⱼ, ∂xₙ, ∂x' oraz całka po prostej liczona z residuów.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Dict, Optional, Set, Tuple, Union

from clifford_algebra import CliffordElement, get_trace
from coeff_ring import (I, GaussianRational, Scalar, reduce_unit_sphere,
                        tangential_norm_squared)

logger = logging.getLogger(__name__)

Key = Tuple[int, int, int]
Polynomial = Dict[int, GaussianRational]


class SymbolError(Exception):
    """Błąd rachunku symboli"""


class RestrictionError(SymbolError):
    """Operacja wymaga (lub wyklucza) restrykcji |ξ'| = 1"""


class ImproperSymbolError(SymbolError):
    """Symbol rzędu ≥ 0: brak rozkładu bez części wielomianowej"""


class UnsupportedDerivativeError(SymbolError):
    """Druga pochodna po xₙ albo nieznana zmienna"""


class DivergenceError(SymbolError):
    """Funkcja maleje tylko jak 1/ξₙ - całka po prostej nie istnieje"""


# =====================================================================
# WIELOMIANY W ξₙ
# =====================================================================

def _poly_mul(first: Polynomial, second: Polynomial) -> Polynomial:
    result: Polynomial = {}
    for d1, c1 in first.items():
        for d2, c2 in second.items():
            result[d1 + d2] = result.get(d1 + d2, GaussianRational(0)) + c1 * c2
    return {d: c for d, c in result.items() if c}


@lru_cache(maxsize=None)
def _linear_power(root: GaussianRational, n: int) -> Tuple[Tuple[int, GaussianRational], ...]:
    """(ξₙ - root)ⁿ"""
    return tuple((k, GaussianRational(comb(n, k)) * (-root) ** (n - k)) for k in range(n + 1))


def _shifted(polynomial: Polynomial, pole: GaussianRational) -> Polynomial:
    """P(pole + t) jako wielomian w t"""
    result: Polynomial = {}
    for degree, coeff in polynomial.items():
        for k in range(degree + 1):
            value = coeff * comb(degree, k) * pole ** (degree - k)
            result[k] = result.get(k, GaussianRational(0)) + value
    return result


def _laurent_coefficients(numerator: Polynomial, pole: GaussianRational,
                          other_pole: GaussianRational, order: int,
                          other_order: int) -> Dict[int, GaussianRational]:
    """
    Część główna P(ξ)/((ξ-pole)^order (ξ-other)^other_order) w biegunie:
    {k -> współczynnik przy (ξ - pole)^(-k)}.
    """
    delta = pole - other_pole
    shifted = _shifted(numerator, pole)
    # (delta + t)^(-n) = Σₛ C(-n, s) delta^(-n-s) tˢ
    tail = {}
    for s in range(order):
        binomial = (-1) ** s * comb(other_order + s - 1, s) if other_order else int(s == 0)
        if binomial:
            tail[s] = delta ** (-other_order - s) * binomial
    result = {}
    for k in range(order):
        value = GaussianRational(0)
        for s, coeff in tail.items():
            if k - s in shifted:
                value = value + shifted[k - s] * coeff
        if value:
            result[order - k] = value
    return result


PLUS_POLE = I
MINUS_POLE = -I


# =====================================================================
# RATIONAL SYMBOL
# =====================================================================

class RationalSymbol:
    """
    Symbol o wartościach w algebrze Clifforda, wymierny w ξₙ.

    terms: {(p, a, b) -> CliffordElement}; przed restrykcją zawsze a == b.
    restricted: czy |ξ'|² zostało już zastąpione jedynką.
    xn_order: ile razy różniczkowano po xₙ.
    """

    __slots__ = ('terms', 'restricted', 'xn_order')

    def __init__(self, terms: Optional[Dict[Key, CliffordElement]] = None,
                 restricted: bool = False, xn_order: int = 0):
        self.terms: Dict[Key, CliffordElement] = {
            key: coeff for key, coeff in (terms or {}).items() if not coeff.is_zero()
        }
        self.restricted = restricted
        self.xn_order = xn_order
        if not restricted:
            for p, a, b in self.terms:
                if a != b:
                    raise RestrictionError(
                        f"Symbol nierestrykowany z osobnymi biegunami: {(p, a, b)}")

    # --- konstruktory -------------------------------------------------

    @classmethod
    def zero(cls, restricted: bool = False) -> 'RationalSymbol':
        return cls({}, restricted)

    @classmethod
    def from_clifford(cls, element: CliffordElement, xi_power: int = 0,
                      norm_power: int = 0) -> 'RationalSymbol':
        """element · ξₙ^xi_power / |ξ|^(2·norm_power)"""
        return cls({(xi_power, norm_power, norm_power): element})

    @classmethod
    def constant(cls, value) -> 'RationalSymbol':
        if isinstance(value, CliffordElement):
            return cls.from_clifford(value)
        return cls.from_clifford(CliffordElement.scalar(value))

    @classmethod
    def xi_n(cls) -> 'RationalSymbol':
        return cls.from_clifford(CliffordElement.identity(), xi_power=1)

    @classmethod
    def norm_squared(cls, power: int = 1) -> 'RationalSymbol':
        """|ξ|^(2·power); ujemna potęga to mianownik"""
        return cls.from_clifford(CliffordElement.identity(), norm_power=-power)

    # --- arytmetyka ----------------------------------------------------

    def _check_compatible(self, other: 'RationalSymbol'):
        if self.restricted != other.restricted:
            raise RestrictionError("Mieszanie symboli przed i po restrykcji")

    def __add__(self, other):
        if not isinstance(other, RationalSymbol):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms[key] + coeff if key in terms else coeff
        return RationalSymbol(terms, self.restricted, max(self.xn_order, other.xn_order))

    def __neg__(self):
        return RationalSymbol({k: -c for k, c in self.terms.items()},
                              self.restricted, self.xn_order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalSymbol):
            return mul(self, other)
        if isinstance(other, (CliffordElement, Scalar, GaussianRational, int, Fraction)):
            return self.map_coefficients(lambda coeff: coeff * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, CliffordElement):
            return self.map_coefficients(lambda coeff: other * coeff)
        if isinstance(other, (Scalar, GaussianRational, int, Fraction)):
            return self.map_coefficients(lambda coeff: coeff * other)
        return NotImplemented

    def map_coefficients(self, fn: Callable[[CliffordElement], CliffordElement]) -> 'RationalSymbol':
        return RationalSymbol({k: fn(c) for k, c in self.terms.items()},
                              self.restricted, self.xn_order)

    def shifted(self, norm_shift: int) -> 'RationalSymbol':
        """Dzieli przez |ξ|^(2·norm_shift)"""
        if self.restricted:
            raise RestrictionError("Przesunięcie potęgi |ξ|² tylko przed restrykcją")
        return RationalSymbol({(p, a + norm_shift, b + norm_shift): c
                               for (p, a, b), c in self.terms.items()},
                              self.restricted, self.xn_order)

    def is_structurally_zero(self) -> bool:
        return not self.terms

    # --- porównanie -----------------------------------------------------

    def numerator(self) -> Tuple[Tuple[int, int], Dict[int, CliffordElement]]:
        """
        Licznik nad wspólnym mianownikiem.

        Po restrykcji mianownik (ξ-i)^A (ξ+i)^B, współczynniki zredukowane na S⁴;
        przed restrykcją mianownik (|ξ'|²+ξₙ²)^Q z |ξ'|² = Σξⱼ² rozpisanym jawnie.
        """
        if not self.terms:
            return (0, 0), {}
        result: Dict[int, CliffordElement] = {}

        def accumulate(degree: int, element: CliffordElement):
            result[degree] = result[degree] + element if degree in result else element

        if self.restricted:
            top_a = max(0, max(a for _, a, _ in self.terms))
            top_b = max(0, max(b for _, _, b in self.terms))
            for (p, a, b), coeff in self.terms.items():
                polynomial = {p: GaussianRational(1)}
                polynomial = _poly_mul(polynomial, dict(_linear_power(PLUS_POLE, top_a - a)))
                polynomial = _poly_mul(polynomial, dict(_linear_power(MINUS_POLE, top_b - b)))
                for degree, value in polynomial.items():
                    accumulate(degree, coeff * value)
            result = {d: c.map_scalars(reduce_unit_sphere) for d, c in result.items()}
            return (top_a, top_b), {d: c for d, c in result.items() if not c.is_zero()}

        top_q = max(0, max(a for _, a, _ in self.terms))
        tangential = tangential_norm_squared()
        for (p, q, _), coeff in self.terms.items():
            spread = top_q - q
            for r in range(spread + 1):
                weight = tangential ** (spread - r) * comb(spread, r)
                accumulate(p + 2 * r, coeff * weight)
        return (top_q, top_q), {d: c for d, c in result.items() if not c.is_zero()}

    def equals(self, other: 'RationalSymbol') -> bool:
        """Równość jako funkcji (nie strukturalna)"""
        difference = self - other
        _, numerator = difference.numerator()
        return not numerator

    def __eq__(self, other):
        if not isinstance(other, RationalSymbol):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def homogeneity_orders(self) -> Set[int]:
        """Zbiór rzędów jednorodności wyrazów (stopień ξ - 2q) przed restrykcją"""
        if self.restricted:
            raise RestrictionError("Rząd jednorodności ma sens tylko przed restrykcją")
        orders = set()
        for (p, q, _), coeff in self.terms.items():
            for scalar in coeff.terms.values():
                for exponents, _, _ in scalar.xi_split():
                    orders.add(sum(exponents) + p - 2 * q)
        return orders

    def __repr__(self):
        state = 'restricted' if self.restricted else 'free'
        return f"RationalSymbol({len(self.terms)} terms, {state}, xn_order={self.xn_order})"


def mul(a: RationalSymbol, b: RationalSymbol) -> RationalSymbol:
    """Dokładny nieprzemienny iloczyn symboli"""
    a._check_compatible(b)
    terms: Dict[Key, CliffordElement] = {}
    for (p1, a1, b1), c1 in a.terms.items():
        for (p2, a2, b2), c2 in b.terms.items():
            key = (p1 + p2, a1 + a2, b1 + b2)
            product = c1 * c2
            terms[key] = terms[key] + product if key in terms else product
    return RationalSymbol(terms, a.restricted, a.xn_order + b.xn_order)


# =====================================================================
# RESTRYKCJA I UŁAMKI PROSTE
# =====================================================================

def restrict(s: RationalSymbol) -> RationalSymbol:
    """|ξ'| = 1: mianownik (1+ξₙ²)^q = (ξₙ-i)^q(ξₙ+i)^q, współczynniki na S⁴"""
    if s.restricted:
        return s
    terms: Dict[Key, CliffordElement] = {}

    def accumulate(key: Key, element: CliffordElement):
        terms[key] = terms[key] + element if key in terms else element

    for (p, q, _), coeff in s.terms.items():
        reduced = coeff.map_scalars(reduce_unit_sphere)
        if q >= 0:
            accumulate((p, q, q), reduced)
        else:
            for r in range(-q + 1):
                accumulate((p + 2 * r, 0, 0), reduced * comb(-q, r))
    return RationalSymbol(terms, True, s.xn_order)


@dataclass
class PartialFractionForm:
    """Rozkład nad biegunami ±i: {k -> współczynnik przy (ξₙ ∓ i)^(-k)}"""
    plus_part: Dict[int, object] = field(default_factory=dict)
    minus_part: Dict[int, object] = field(default_factory=dict)
    poly_part: Dict[int, object] = field(default_factory=dict)

    def recombine(self) -> RationalSymbol:
        terms: Dict[Key, CliffordElement] = {}
        for k, coeff in self.plus_part.items():
            terms[(0, k, 0)] = coeff
        for k, coeff in self.minus_part.items():
            terms[(0, 0, k)] = coeff
        for p, coeff in self.poly_part.items():
            terms[(p, 0, 0)] = coeff
        return RationalSymbol(terms, restricted=True)


def _decompose(terms: Dict[Key, object]) -> PartialFractionForm:
    form = PartialFractionForm()
    for (p, a, b), coeff in terms.items():
        numerator: Polynomial = {p: GaussianRational(1)}
        # ujemne wykładniki to czynniki licznika
        if a < 0:
            numerator = _poly_mul(numerator, dict(_linear_power(PLUS_POLE, -a)))
        if b < 0:
            numerator = _poly_mul(numerator, dict(_linear_power(MINUS_POLE, -b)))
        a, b = max(a, 0), max(b, 0)
        if max(numerator) >= a + b:
            raise ImproperSymbolError(
                f"Wyraz rzędu ≥ 0: ξ^{max(numerator)} / (ξ-i)^{a}(ξ+i)^{b}")
        for part, pole, other, order, other_order in (
                (form.plus_part, PLUS_POLE, MINUS_POLE, a, b),
                (form.minus_part, MINUS_POLE, PLUS_POLE, b, a)):
            if not order:
                continue
            for k, value in _laurent_coefficients(numerator, pole, other,
                                                  order, other_order).items():
                contribution = coeff * value
                part[k] = part[k] + contribution if k in part else contribution
    form.plus_part = {k: c for k, c in form.plus_part.items() if not c.is_zero()}
    form.minus_part = {k: c for k, c in form.minus_part.items() if not c.is_zero()}
    return form


def partial_fractions(s: RationalSymbol) -> PartialFractionForm:
    """Rozkład na ułamki proste nad biegunami ±i (tylko po restrykcji)"""
    if not s.restricted:
        raise RestrictionError("Ułamki proste wymagają |ξ'| = 1")
    return _decompose(s.terms)


def pi_plus(s: RationalSymbol) -> RationalSymbol:
    """π⁺: zostawia tylko bieguny w ξₙ = +i"""
    form = partial_fractions(s)
    terms = {(0, k, 0): coeff for k, coeff in form.plus_part.items()}
    return RationalSymbol(terms, restricted=True, xn_order=s.xn_order)


# =====================================================================
# POCHODNE
# =====================================================================

DERIVATION_VARIABLES = ('xi_n', 'xi_j', 'x_n', 'x_prime')


def derive(s: RationalSymbol, var: str, index: Optional[int] = None) -> RationalSymbol:
    """
    Pochodna symbolu.

    xi_n    - zwykła pochodna po ξₙ
    xi_j    - po ξⱼ (j < 6), tylko przed restrykcją
    x_n     - reguły w x₀: ∂xₙ|ξ'|² = h'(0)|ξ'|², ∂xₙc(ξ') = (h'(0)/2)c(ξ'),
              stałe katalogu -> 0; czyli (h'(0)/2)·(operator Eulera w ξ')
    x_prime - zero na każdym symbolu katalogu (współrzędne normalne w x₀)
    """
    if var == 'xi_n':
        return _derive_xi_n(s)
    if var == 'xi_j':
        return _derive_xi_j(s, index)
    if var == 'x_n':
        return _derive_x_n(s)
    if var == 'x_prime':
        return RationalSymbol.zero(s.restricted)
    raise UnsupportedDerivativeError(f"Nieznana zmienna różniczkowania: {var}")


def _derive_xi_n(s: RationalSymbol) -> RationalSymbol:
    terms: Dict[Key, CliffordElement] = {}

    def accumulate(key: Key, element: CliffordElement):
        terms[key] = terms[key] + element if key in terms else element

    for (p, a, b), coeff in s.terms.items():
        if p:
            accumulate((p - 1, a, b), coeff * p)
        if s.restricted:
            if a:
                accumulate((p, a + 1, b), coeff * (-a))
            if b:
                accumulate((p, a, b + 1), coeff * (-b))
        elif a:
            accumulate((p + 1, a + 1, b + 1), coeff * (-2 * a))
    return RationalSymbol(terms, s.restricted, s.xn_order)


def _derive_xi_j(s: RationalSymbol, index: Optional[int]) -> RationalSymbol:
    if index is None or not 1 <= index <= 5:
        raise UnsupportedDerivativeError(f"∂ξⱼ wymaga j w 1..5, dostałem {index}")
    if s.restricted:
        raise RestrictionError("∂ξⱼ liczymy przed restrykcją |ξ'| = 1")
    name = f'XI_{index}'
    xi = Scalar.symbol(name)
    terms: Dict[Key, CliffordElement] = {}

    def accumulate(key: Key, element: CliffordElement):
        terms[key] = terms[key] + element if key in terms else element

    for (p, q, _), coeff in s.terms.items():
        accumulate((p, q, q), coeff.map_scalars(lambda scalar: scalar.diff(name)))
        if q:
            accumulate((p, q + 1, q + 1), coeff * (xi * (-2 * q)))
    return RationalSymbol(terms, False, s.xn_order)


def _derive_x_n(s: RationalSymbol) -> RationalSymbol:
    if s.xn_order >= 1:
        raise UnsupportedDerivativeError("Druga pochodna po xₙ nie występuje w tym rachunku")
    if s.restricted:
        raise RestrictionError("∂xₙ liczymy przed restrykcją |ξ'| = 1")
    half_h = Scalar.symbol('H1') * Fraction(1, 2)
    terms: Dict[Key, CliffordElement] = {}

    def accumulate(key: Key, element: CliffordElement):
        terms[key] = terms[key] + element if key in terms else element

    for (p, q, _), coeff in s.terms.items():
        accumulate((p, q, q), coeff.map_scalars(lambda scalar: scalar.xi_euler() * half_h))
        if q:
            # E(|ξ|^(-2q)) = -2q|ξ'|²|ξ|^(-2q-2), a |ξ'|² = |ξ|² - ξₙ²
            accumulate((p, q, q), coeff * (half_h * (-2 * q)))
            accumulate((p + 2, q + 1, q + 1), coeff * (half_h * (2 * q)))
    return RationalSymbol(terms, False, s.xn_order + 1)


# =====================================================================
# CAŁKA PO PROSTEJ
# =====================================================================

TwoPiI = Scalar.symbol('PI') * GaussianRational(0, 2)


def integrate_line(s: RationalSymbol,
                   trace: Union[str, Callable[[CliffordElement], Scalar]] = 'spin') -> Scalar:
    """
    ∫_R tr[s] dξₙ = 2πi · Res_{ξₙ=i}, π zostaje symbolem PI.
    Wymaga spadku co najmniej ξₙ^(-2) po wzięciu śladu.
    """
    if not s.restricted:
        raise RestrictionError("Całka po prostej wymaga |ξ'| = 1")
    trace_fn = get_trace(trace) if isinstance(trace, str) else trace
    scalar_terms = {}
    for key, coeff in s.terms.items():
        value = trace_fn(coeff)
        if not value.is_zero():
            scalar_terms[key] = value
    form = _decompose(scalar_terms)
    simple_plus = form.plus_part.get(1, Scalar())
    simple_minus = form.minus_part.get(1, Scalar())
    if not reduce_unit_sphere(simple_plus + simple_minus).is_zero():
        raise DivergenceError("Całka rozbieżna: spadek tylko jak 1/ξₙ")
    return simple_plus * TwoPiI
