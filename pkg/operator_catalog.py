"""
Operator Catalog - Symbole operatorów w punkcie brzegowym x₀
=============================================================

Katalog symboli dla dwóch rodzin operatorów (współrzędne normalne w x₀):

    DIRAC      - skręcony operator Diraca D̃_F na S(TM)⊗F   (ślad 'spin')
    SIGNATURE  - skręcony operator sygnatury D̂_F na ∧*(T*M)⊗F (ślad 'exterior')

Dla każdej rodziny: σ₋₁, σ₋₂ odwrotności operatora pierwszego rzędu oraz
p₃, p₂, q₋₃, q₋₄ dla operatora trzeciego rzędu D*DD* i jego odwrotności.
Wpisy rzędu -2 i -4 są rozbite na części (bloki), które raport liczy osobno.

Oznaczenia w kodzie:
    c(ξ)   = c(ξ') + ξₙ·c(ẽ₆)
    ∂c(ξ') = (h'(0)/2)·c(ξ')        (pochodna po xₙ w x₀)
    |ξ'|²  = Σⱼ ξⱼ²                 (jawnie, przed restrykcją)

Użycie:
    from operator_catalog import OperatorFamily, build_catalog, invert_cubed
    catalog = build_catalog(OperatorFamily.DIRAC)
    q3, q4 = invert_cubed(catalog.cubed_order(3), catalog.cubed_order(2))
    assert q4.expr == catalog.cubed_order(-4).expr
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from clifford_algebra import DIMENSION, CliffordElement, c_xi_prime
from coeff_ring import I, Scalar, tangential_norm_squared
from symbol_calculus import RationalSymbol, derive

logger = logging.getLogger(__name__)


class CatalogError(Exception):
    """Błąd katalogu symboli"""


class UnsupportedOrderError(CatalogError):
    """Rząd symbolu spoza katalogu"""


class NonInvertibleSymbolError(CatalogError):
    """Symbol główny nie jest odwracalny (p₃² ≠ κ|ξ|⁶)"""


FIRST_ORDER_ORDERS = (-1, -2)
CUBED_ORDERS = (3, 2, -3, -4)


class OperatorFamily(Enum):
    DIRAC = 'dirac'
    SIGNATURE = 'signature'

    @property
    def trace_rep(self) -> str:
        return 'spin' if self is OperatorFamily.DIRAC else 'exterior'

    @classmethod
    def parse(cls, name: str) -> 'OperatorFamily':
        try:
            return cls(name.strip().lower())
        except ValueError:
            choices = ', '.join(f.value for f in cls)
            raise ValueError(f"Nieznana rodzina operatorów: {name} (dostępne: {choices})") from None

    def lower_symbols(self) -> Dict[int, 'CatalogEntry']:
        return {order: first_order_sigma(self, order) for order in FIRST_ORDER_ORDERS}

    def cubed_symbols(self) -> Dict[int, 'CatalogEntry']:
        return {order: cubed_sigma(self, order) for order in CUBED_ORDERS}


# Równania, z których pochodzą wpisy katalogu
SOURCE_EQUATIONS = {
    OperatorFamily.DIRAC: {
        ('first', -1): '(2.12)', ('first', -2): '(2.17)',
        ('cubed', 3): '(2.21)', ('cubed', 2): '(2.22)',
        ('cubed', -3): '(2.27)', ('cubed', -4): '(2.28)',
        'recursion': '(2.26)',
    },
    OperatorFamily.SIGNATURE: {
        ('first', -1): '(4.16)', ('first', -2): '(4.17)',
        ('cubed', 3): '(4.29)', ('cubed', 2): '(4.30)',
        ('cubed', -3): '(4.36)', ('cubed', -4): '(4.37)',
        'recursion': '(4.35)',
    },
}


@dataclass
class CatalogEntry:
    """Symbol jednorodnego rzędu `order` z opcjonalnym podziałem na bloki"""
    order: int
    expr: RationalSymbol
    source_eq: str
    parts: Dict[str, RationalSymbol] = field(default_factory=dict)

    def __post_init__(self):
        if self.expr.restricted:
            return
        orders = self.expr.homogeneity_orders()
        if orders - {self.order}:
            raise CatalogError(
                f"{self.source_eq}: rzędy jednorodności {sorted(orders)} zamiast {self.order}")

    @classmethod
    def from_parts(cls, order: int, parts: Dict[str, RationalSymbol],
                   source_eq: str) -> 'CatalogEntry':
        expr = RationalSymbol.zero()
        for part in parts.values():
            expr = expr + part
        return cls(order, expr, source_eq, dict(parts))

    def zeroed(self) -> 'CatalogEntry':
        return CatalogEntry(self.order, RationalSymbol.zero(), self.source_eq,
                            {name: RationalSymbol.zero() for name in self.parts})

    def to_dict(self) -> Dict:
        return {
            'order': self.order,
            'source_eq': self.source_eq,
            'parts': list(self.parts),
            'terms': len(self.expr.terms),
        }


# =====================================================================
# KLOCKI
# =====================================================================

def h1() -> Scalar:
    return Scalar.symbol('H1')


def c_xi() -> RationalSymbol:
    """c(ξ) = c(ξ') + ξₙc(ẽ₆)"""
    return RationalSymbol({(0, 0, 0): c_xi_prime(), (1, 0, 0): CliffordElement.c(DIMENSION)})


def inverse_norm(power: int) -> RationalSymbol:
    """|ξ|^(-2·power)"""
    return RationalSymbol.from_clifford(CliffordElement.identity(), norm_power=power)


def partial_c_xi_prime() -> CliffordElement:
    """∂xₙ[c(ξ')](x₀) = (h'(0)/2)c(ξ')"""
    return c_xi_prime() * (h1() * Fraction(1, 2))


def twisted_sum(family: str, hat: bool = False) -> CliffordElement:
    """Σⱼ c(ẽⱼ)⊗E(ẽⱼ) (albo z ĉ zamiast c)"""
    result = CliffordElement.zero()
    for j in range(1, DIMENSION + 1):
        generator = CliffordElement.chat(j) if hat else CliffordElement.c(j)
        result = result + generator * CliffordElement.endo(family, j)
    return result


def sigma0_dirac() -> CliffordElement:
    """σ₀(D)(x₀) = -(5/4)h'(0)c(ẽ₆)"""
    return CliffordElement.c(DIMENSION) * (h1() * Fraction(-5, 4))


def beta() -> CliffordElement:
    """β = Σ c(eⱼ)(σⱼ^F + Φ(eⱼ))"""
    return twisted_sum('sigmaF') + twisted_sum('Phi')


def alpha() -> CliffordElement:
    """α = Σ c(eⱼ)(σⱼ^F - Φ*(eⱼ))"""
    return twisted_sum('sigmaF') - twisted_sum('PhiStar')


def m_term() -> CliffordElement:
    """m = (1/4)h'(0) Σ_{i<6} c(ẽᵢ)ĉ(ẽ₆)ĉ(ẽᵢ)"""
    result = CliffordElement.zero()
    for i in range(1, DIMENSION):
        result = result + (CliffordElement.c(i) * CliffordElement.chat(DIMENSION)
                           * CliffordElement.chat(i))
    return result * (h1() * Fraction(1, 4))


def theta() -> CliffordElement:
    return sigma0_dirac() + m_term()


def vartheta(star: bool = False) -> CliffordElement:
    """ϑ = Σ c(ẽᵢ)σᵢ^{F,e} - ½ Σ ĉ(eᵢ)ω(eᵢ); ϑ* z ω*"""
    w_family = 'wStar' if star else 'w'
    return twisted_sum('sigmaFe') - twisted_sum(w_family, hat=True) * Fraction(1, 2)


def hat_c_w(star: bool = False) -> CliffordElement:
    """ĉ(ω) = Σ c(eᵢ)ω(F, g^F)(eᵢ)"""
    return twisted_sum('wStar' if star else 'w')


def sandwich(middle: CliffordElement, power: int) -> RationalSymbol:
    """c(ξ)·middle·c(ξ)/|ξ|^(2·power)"""
    return c_xi() * middle * c_xi() * inverse_norm(power)


def _geometric_sigma_minus2(sigma0: CliffordElement) -> RationalSymbol:
    """c(ξ)σ₀c(ξ)/|ξ|⁴ + c(ξ)/|ξ|⁶ · c(ẽ₆)[∂c(ξ')|ξ|² - c(ξ)h'(0)|ξ'|²]"""
    cxi = c_xi()
    c6 = CliffordElement.c(DIMENSION)
    return (sandwich(sigma0, 2)
            + cxi * c6 * partial_c_xi_prime() * inverse_norm(2)
            - cxi * c6 * cxi * (h1() * tangential_norm_squared()) * inverse_norm(3))


def sigma2_d3() -> RationalSymbol:
    """σ₂(D³)(x₀) = h'(0)c(ξ)c(ξ')c(ẽ₆) - 5h'(0)ξₙc(ξ) - ¼h'(0)|ξ|²c(ẽ₆)"""
    cxi = c_xi()
    c6 = CliffordElement.c(DIMENSION)
    return (cxi * c_xi_prime() * c6 * h1()
            - cxi * RationalSymbol.xi_n() * (h1() * 5)
            - RationalSymbol.norm_squared(1) * c6 * (h1() * Fraction(1, 4)))


def sigma_minus4_d3() -> RationalSymbol:
    """σ₋₄(D⁻³)(x₀) = c(ξ)σ₂c(ξ)/|ξ|⁸ + c(ξ)∂ξₙ(c(ξ)|ξ|²)·∂xₙ(c(ξ)/|ξ|⁴)·|ξ|⁴/|ξ|¹⁰"""
    cxi = c_xi()
    c6 = CliffordElement.c(DIMENSION)
    xi_derivative = (RationalSymbol.from_clifford(c6, norm_power=-1)
                     + RationalSymbol.xi_n() * cxi * 2)
    xn_derivative = (RationalSymbol.from_clifford(partial_c_xi_prime(), norm_power=-1)
                     - cxi * (h1() * tangential_norm_squared() * 2))
    return (cxi * sigma2_d3() * cxi * inverse_norm(4)
            + cxi * xi_derivative * xn_derivative * inverse_norm(5))


# =====================================================================
# WPISY KATALOGU
# =====================================================================

@lru_cache(maxsize=None)
def first_order_sigma(fam: OperatorFamily, order: int) -> CatalogEntry:
    """σ₋₁, σ₋₂ odwrotności operatora pierwszego rzędu"""
    source = SOURCE_EQUATIONS[fam].get(('first', order))
    if order == -1:
        return CatalogEntry(-1, c_xi() * I * inverse_norm(1), source)
    if order == -2:
        if fam is OperatorFamily.DIRAC:
            parts = {
                'A': _geometric_sigma_minus2(sigma0_dirac()),
                'beta': sandwich(beta(), 2),
            }
        else:
            parts = {
                'theta': _geometric_sigma_minus2(theta()),
                'vartheta': sandwich(vartheta(), 2),
            }
        return CatalogEntry.from_parts(-2, parts, source)
    raise UnsupportedOrderError(f"Brak σ_{order} dla operatora pierwszego rzędu")


@lru_cache(maxsize=None)
def cubed_sigma(fam: OperatorFamily, order: int) -> CatalogEntry:
    """p₃, p₂ operatora D*DD* oraz q₋₃, q₋₄ jego odwrotności"""
    source = SOURCE_EQUATIONS[fam].get(('cubed', order))
    cxi = c_xi()
    if order == 3:
        return CatalogEntry(3, cxi * I * RationalSymbol.norm_squared(1), source)
    if order == -3:
        return CatalogEntry(-3, cxi * I * inverse_norm(2), source)

    norm2 = RationalSymbol.norm_squared(1)
    if order == 2:
        if fam is OperatorFamily.DIRAC:
            parts = {
                'D3': sigma2_d3(),
                'alpha': norm2 * alpha(),
                'Phi': sandwich(twisted_sum('Phi'), 0) * (-2),
                'PhiStar': norm2 * twisted_sum('PhiStar') * (-2),
            }
        else:
            parts = {
                'D3': sigma2_d3(),
                'p': norm2 * m_term(),
                'vartheta': norm2 * vartheta(star=True),
                'w': sandwich(hat_c_w(), 0) - norm2 * hat_c_w(star=True),
            }
        return CatalogEntry.from_parts(2, parts, source)
    if order == -4:
        if fam is OperatorFamily.DIRAC:
            parts = {
                'D3': sigma_minus4_d3(),
                'alpha': sandwich(alpha(), 3),
                'PhiStar': sandwich(twisted_sum('PhiStar'), 3) * (-2),
                'Phi': RationalSymbol.from_clifford(twisted_sum('Phi') * (-2), norm_power=2),
            }
        else:
            parts = {
                'D3': sigma_minus4_d3(),
                'p': sandwich(m_term(), 3),
                'vartheta': sandwich(vartheta(star=True), 3),
                'w': (RationalSymbol.from_clifford(hat_c_w(), norm_power=2)
                      - sandwich(hat_c_w(star=True), 3)),
            }
        return CatalogEntry.from_parts(-4, parts, source)
    raise UnsupportedOrderError(f"Brak symbolu rzędu {order} dla D*DD*")


def invert_cubed(p3: CatalogEntry, p2: CatalogEntry,
                 source_eq: str = '(2.26)') -> Tuple[CatalogEntry, CatalogEntry]:
    """
    q₋₃ = p₃⁻¹, q₋₄ = -p₃⁻¹[p₂p₃⁻¹ + Σⱼ ∂ξⱼp₃ · Dₓⱼ(p₃⁻¹)], Dₓ = -i∂ₓ.

    Odwrotność p₃ wymaga p₃² = κ|ξ|^d ze stałą κ ≠ 0.
    """
    leading = p3.expr
    square = leading * leading
    orders = square.homogeneity_orders()
    if len(orders) != 1 or next(iter(orders)) % 2:
        raise NonInvertibleSymbolError(f"p₃² nie jest jednorodny parzystego rzędu: {orders}")
    degree = orders.pop()
    _, numerator = square.numerator()
    top = numerator[max(numerator)] if numerator else CliffordElement.zero()
    kappa = None
    if set(top.terms) == {(0, ())}:
        kappa = top.terms[(0, ())].constant_value()
    if not kappa or not square.equals(RationalSymbol.norm_squared(degree // 2) * kappa):
        raise NonInvertibleSymbolError("p₃² nie jest skalarną wielokrotnością |ξ|^d")

    inverse = (leading * kappa.inverse()).shifted(degree // 2)
    correction = p2.expr * inverse
    correction = correction + derive(leading, 'xi_n') * (-I) * derive(inverse, 'x_n')
    for j in range(1, DIMENSION):
        correction = correction + derive(leading, 'xi_j', j) * (-I) * derive(inverse, 'x_prime')
    q4 = -(inverse * correction)
    logger.debug(f"invert_cubed: q₋₃ {len(inverse.terms)} wyrazów, q₋₄ {len(q4.terms)} wyrazów")
    return (CatalogEntry(p3.order - degree, inverse, source_eq),
            CatalogEntry(p3.order - degree - 1, q4, source_eq))


# =====================================================================
# KATALOG
# =====================================================================

@dataclass
class OperatorCatalog:
    family: OperatorFamily
    lower: Dict[int, CatalogEntry]
    cubed: Dict[int, CatalogEntry]

    def first_order(self, order: int) -> CatalogEntry:
        if order not in self.lower:
            raise UnsupportedOrderError(f"Brak σ_{order} w katalogu {self.family.value}")
        return self.lower[order]

    def cubed_order(self, order: int) -> CatalogEntry:
        if order not in self.cubed:
            raise UnsupportedOrderError(f"Brak symbolu rzędu {order} w katalogu {self.family.value}")
        return self.cubed[order]

    def zeroed(self) -> 'OperatorCatalog':
        """Katalog z samymi zerami (tryb testowy dla assemble)"""
        return OperatorCatalog(
            self.family,
            {order: entry.zeroed() for order, entry in self.lower.items()},
            {order: entry.zeroed() for order, entry in self.cubed.items()},
        )

    def to_dict(self) -> Dict:
        return {
            'family': self.family.value,
            'trace_rep': self.family.trace_rep,
            'lower': {str(o): e.to_dict() for o, e in self.lower.items()},
            'cubed': {str(o): e.to_dict() for o, e in self.cubed.items()},
        }


def build_catalog(fam: OperatorFamily) -> OperatorCatalog:
    logger.debug(f"Buduję katalog symboli: {fam.value}")
    return OperatorCatalog(fam, fam.lower_symbols(), fam.cubed_symbols())
