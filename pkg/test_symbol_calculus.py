"""
Testy rachunku symboli (symbol_calculus)

Sprawdza:
1. Rozkład na ułamki proste i projekcję π⁺ (hypothesis)
2. Pochodne po ξₙ, ξⱼ, xₙ
3. Całkę po prostej - porównanie z sympy
"""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from clifford_algebra import DIMENSION, CliffordElement, c_xi_prime
from coeff_ring import GaussianRational, Scalar, tangential_norm_squared
from operator_catalog import OperatorFamily, first_order_sigma
from stated_values import pi_plus_sigma_minus1
from symbol_calculus import (DivergenceError, ImproperSymbolError, RationalSymbol, RestrictionError,
                             UnsupportedDerivativeError, derive, integrate_line, mul,
                             partial_fractions, pi_plus, restrict)

ONE = CliffordElement.identity()
PI = Scalar.symbol('PI')
H1 = Scalar.symbol('H1')


def scalar_part(element: CliffordElement) -> Scalar:
    """Ślad 'skalarny': współczynnik przy słowie pustym"""
    return element.terms.get((0, ()), Scalar())


def restricted(terms) -> RationalSymbol:
    return RationalSymbol({key: ONE * GaussianRational.coerce(value) for key, value in terms.items()},
                          restricted=True)


proper_keys = st.tuples(
    st.integers(min_value=0, max_value=3),
    st.integers(min_value=0, max_value=3),
    st.integers(min_value=0, max_value=3),
).filter(lambda key: key[0] < key[1] + key[2])
proper_symbols = st.dictionaries(
    proper_keys, st.integers(min_value=-3, max_value=3).filter(bool), min_size=1, max_size=4,
).map(restricted)


# =====================================================================
# Konstrukcja i porównanie
# =====================================================================

def test_unrestricted_requires_equal_poles():
    with pytest.raises(RestrictionError):
        RationalSymbol({(0, 1, 0): ONE})


def test_mixing_restricted_and_free():
    with pytest.raises(RestrictionError):
        RationalSymbol.xi_n() + restrict(RationalSymbol.xi_n())


def test_functional_equality():
    # ξₙ²/|ξ|⁴ + |ξ'|²/|ξ|⁴ = 1/|ξ|²
    lhs = RationalSymbol({(2, 2, 2): ONE, (0, 2, 2): ONE * tangential_norm_squared()})
    assert lhs == RationalSymbol.from_clifford(ONE, norm_power=1)
    assert lhs != RationalSymbol.from_clifford(ONE, norm_power=2)


def test_homogeneity_orders():
    assert (RationalSymbol.xi_n() * RationalSymbol.from_clifford(ONE, norm_power=2)).homogeneity_orders() == {-3}
    assert RationalSymbol.from_clifford(c_xi_prime(), norm_power=1).homogeneity_orders() == {-1}


# =====================================================================
# Ułamki proste i π⁺
# =====================================================================

@settings(max_examples=50)
@given(proper_symbols)
def test_partial_fractions_recombine(s):
    assert partial_fractions(s).recombine() == s


@settings(max_examples=50)
@given(proper_symbols)
def test_pi_plus_is_projection(s):
    projected = pi_plus(s)
    assert pi_plus(projected) == projected
    assert not partial_fractions(s - projected).plus_part


def test_partial_fractions_require_restriction():
    with pytest.raises(RestrictionError):
        partial_fractions(RationalSymbol.from_clifford(ONE, norm_power=1))


def test_improper_symbol():
    with pytest.raises(ImproperSymbolError):
        partial_fractions(restricted({(2, 1, 1): 1}))


def test_pi_plus_simple_pole():
    # 1/(1+ξ²) = (1/2i)/(ξ-i) - (1/2i)/(ξ+i)
    projected = pi_plus(restricted({(0, 1, 1): 1}))
    assert projected == restricted({(0, 1, 0): GaussianRational(0, Fraction(-1, 2))})


def test_pi_plus_sigma_minus1():
    sigma = first_order_sigma(OperatorFamily.DIRAC, -1).expr
    projected = pi_plus(restrict(sigma))
    c6 = CliffordElement.c(DIMENSION)
    expected = RationalSymbol({(0, 1, 0): (c_xi_prime() + c6 * GaussianRational(0, 1))
                               * Fraction(1, 2)}, restricted=True)
    assert projected == expected
    # postać podana różni się znakiem
    assert projected == -pi_plus_sigma_minus1()


# =====================================================================
# Pochodne
# =====================================================================

def test_derive_xi_n():
    inverse = RationalSymbol.from_clifford(ONE, norm_power=1)
    assert derive(inverse, 'xi_n') == RationalSymbol({(1, 2, 2): ONE * -2})
    assert derive(restrict(inverse), 'xi_n') == restrict(RationalSymbol({(1, 2, 2): ONE * -2}))


def test_derive_xi_j():
    inverse = RationalSymbol.from_clifford(ONE, norm_power=1)
    expected = RationalSymbol({(0, 2, 2): ONE * (Scalar.symbol('XI_2') * -2)})
    assert derive(inverse, 'xi_j', 2) == expected
    with pytest.raises(UnsupportedDerivativeError):
        derive(inverse, 'xi_j', 6)
    with pytest.raises(RestrictionError):
        derive(restrict(inverse), 'xi_j', 1)


def test_derive_x_n():
    half_h = H1 * Fraction(1, 2)
    c_prime = RationalSymbol.from_clifford(c_xi_prime())
    assert derive(c_prime, 'x_n') == RationalSymbol.from_clifford(c_xi_prime() * half_h)
    # ∂xₙ|ξ|⁻² = -h'(0)|ξ'|²/|ξ|⁴
    inverse = RationalSymbol.from_clifford(ONE, norm_power=1)
    expected = RationalSymbol({(0, 2, 2): ONE * (H1 * tangential_norm_squared() * -1)})
    assert derive(inverse, 'x_n') == expected
    with pytest.raises(UnsupportedDerivativeError):
        derive(derive(inverse, 'x_n'), 'x_n')


def test_derive_x_prime_vanishes():
    sigma = first_order_sigma(OperatorFamily.DIRAC, -2).expr
    assert derive(sigma, 'x_prime', 1).is_structurally_zero()


def test_unknown_variable():
    with pytest.raises(UnsupportedDerivativeError):
        derive(RationalSymbol.xi_n(), 't')


# =====================================================================
# Całka po prostej
# =====================================================================

def _sympy_line_integral(p: int, q: int) -> Fraction:
    x = sympy.symbols('x', real=True)
    value = sympy.integrate(x ** p / (1 + x ** 2) ** q, (x, -sympy.oo, sympy.oo)) / sympy.pi
    value = sympy.nsimplify(value)
    return Fraction(int(value.p), int(value.q))


def test_integrate_line_against_sympy():
    for p, q in [(0, 1), (0, 2), (2, 2), (0, 3), (2, 3), (4, 3), (1, 2), (3, 3)]:
        s = restricted({(p, q, q): 1})
        expected = PI * _sympy_line_integral(p, q)
        assert integrate_line(s, scalar_part) == expected, (p, q)


def test_integrate_line_reference():
    assert integrate_line(restricted({(0, 2, 2): 1}), scalar_part) == PI * Fraction(1, 2)


def test_integrate_line_with_trace():
    s = restricted({(0, 2, 2): 1})
    assert integrate_line(s, 'spin') == PI * Scalar.symbol('DIMF') * 4


def test_integrate_line_divergent():
    with pytest.raises(DivergenceError):
        integrate_line(restricted({(1, 1, 1): 1}), scalar_part)


def test_integrate_line_requires_restriction():
    with pytest.raises(RestrictionError):
        integrate_line(RationalSymbol.from_clifford(ONE, norm_power=2), scalar_part)


def test_product_of_inverse_symbols():
    # p₃·q₋₃ = ic(ξ)|ξ|² · ic(ξ)/|ξ|⁴ = 1
    c_xi = RationalSymbol({(0, 0, 0): c_xi_prime(), (1, 0, 0): CliffordElement.c(DIMENSION)})
    p3 = c_xi * GaussianRational(0, 1) * RationalSymbol.norm_squared(1)
    q3 = c_xi * GaussianRational(0, 1) * RationalSymbol.from_clifford(ONE, norm_power=2)
    assert mul(p3, q3) == RationalSymbol.constant(1)


def main():
    """Uruchom testy"""
    tests = [obj for name, obj in globals().items() if name.startswith('test_') and callable(obj)]
    failed = 0
    for test in tests:
        try:
            test()
            print(f"✅ {test.__name__}")
        except Exception as e:
            failed += 1
            print(f"❌ {test.__name__}: {e}")

    if failed:
        print(f"\n❌ BŁĄD: {failed} z {len(tests)} testów nie przeszło")
        return 1
    print("\n✅ Wszystkie testy przeszły pomyślnie!")
    return 0


if __name__ == '__main__':
    exit(main())
