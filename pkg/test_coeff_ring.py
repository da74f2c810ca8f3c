"""
Testy pierścienia współczynników (coeff_ring)

Sprawdza:
1. Arytmetykę liczb gaussowsko-wymiernych
2. Aksjomaty pierścienia dla Scalar (hypothesis)
3. Redukcję na sferze S⁴ i momenty sfery
"""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from coeff_ring import (I, GaussianRational, Scalar, reduce_unit_sphere, ring_arith,
                        sphere_integrate, sphere_moment, symbol_key, tangential_norm_squared,
                        trace_symbol_name)

SYMBOLS = ['H1', 'DIMF', 'XI_1', 'XI_5', 'T[Phi][6]']

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
gaussians = st.builds(GaussianRational, fractions, fractions)
monomials = st.lists(
    st.tuples(st.sampled_from(SYMBOLS), st.integers(min_value=1, max_value=2)),
    max_size=2, unique_by=lambda item: item[0],
).map(lambda items: tuple(sorted(items, key=lambda item: symbol_key(item[0]))))
scalars = st.dictionaries(monomials, st.integers(min_value=-3, max_value=3).map(GaussianRational),
                          max_size=3).map(Scalar)


# =====================================================================
# GaussianRational
# =====================================================================

def test_imaginary_unit():
    assert I * I == -1
    assert (-I) ** 2 == -1
    assert I ** 4 == 1
    assert I ** -1 == -I


def test_gaussian_product():
    assert GaussianRational(1, 2) * GaussianRational(3, -1) == GaussianRational(5, 5)
    assert GaussianRational(1, 1) / 2 == GaussianRational(Fraction(1, 2), Fraction(1, 2))


@given(gaussians)
def test_gaussian_inverse(z):
    if not z:
        with pytest.raises(ZeroDivisionError):
            z.inverse()
        return
    assert z * z.inverse() == 1


def test_gaussian_render():
    assert GaussianRational(Fraction(-15, 16)).render() == '-15/16'
    assert I.render() == 'I'
    assert GaussianRational(0, -2).render() == '-2*I'


def test_gaussian_rejects_float():
    with pytest.raises(TypeError):
        GaussianRational.coerce(0.5)


# =====================================================================
# Scalar
# =====================================================================

@settings(max_examples=60)
@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@given(scalars, scalars)
def test_ring_arith_matches_operators(a, b):
    assert ring_arith(a, b, 'add') == a + b
    assert ring_arith(a, b, 'mul') == a * b
    assert ring_arith(a, None, 'neg') == -a


def test_ring_arith_unknown_op():
    with pytest.raises(ValueError):
        ring_arith(Scalar(), Scalar(), 'div')


def test_symbol_alphabet():
    assert symbol_key('PI') < symbol_key('H1') < symbol_key('XI_5')
    assert symbol_key('XI_5') < symbol_key(trace_symbol_name('sigmaF', 6))
    with pytest.raises(ValueError):
        Scalar.symbol('OMEGA')
    with pytest.raises(ValueError):
        trace_symbol_name('nieznana', 1)


def test_render_canonical_order():
    value = Scalar.symbol('H1') * Scalar.symbol('PI') * Fraction(-15, 16)
    assert value.render() == '-15/16*PI*H1'
    assert (Scalar.symbol('K') - Scalar.symbol('H1')).render() == '-H1 + K'
    assert Scalar().render() == '0'


def test_diff_and_substitute():
    h1 = Scalar.symbol('H1')
    value = h1 ** 2 * 3 + h1
    assert value.diff('H1') == h1 * 6 + 1
    assert value.substitute('H1', Scalar.constant(2)) == Scalar.constant(14)


def test_evaluate_matches_sympy():
    h1, dimf = sympy.symbols('H1 DIMF')
    value = Scalar.symbol('H1') ** 2 * Scalar.symbol('DIMF') * GaussianRational(1, 2) + 3
    expected = complex((h1 ** 2 * dimf * (1 + 2 * sympy.I) + 3).subs({h1: 0.75, dimf: 3}))
    assert abs(value.evaluate({'H1': 0.75, 'DIMF': 3}) - expected) < 1e-12


def test_evaluate_missing_symbol():
    with pytest.raises(KeyError):
        Scalar.symbol('H1').evaluate({})


def test_xi_euler_counts_degree():
    value = Scalar.symbol('XI_1') ** 2 * Scalar.symbol('XI_2') + Scalar.symbol('H1')
    assert value.xi_euler() == Scalar.symbol('XI_1') ** 2 * Scalar.symbol('XI_2') * 3


# =====================================================================
# Sfera S⁴
# =====================================================================

def test_tangential_norm_is_one_on_sphere():
    assert reduce_unit_sphere(tangential_norm_squared()) == Scalar.constant(1)


def test_reduce_eliminates_high_xi5():
    xi5 = Scalar.symbol('XI_5')
    reduced = reduce_unit_sphere(xi5 ** 3)
    assert all(dict(m).get('XI_5', 0) < 2 for m in reduced.terms)
    first_four = Scalar.constant(1)
    for name in ('XI_1', 'XI_2', 'XI_3', 'XI_4'):
        first_four = first_four - Scalar.symbol(name, 2)
    assert reduced == xi5 * first_four


def test_sphere_moments():
    assert sphere_moment((0, 0, 0, 0, 0)) == 1
    assert sphere_moment((2, 0, 0, 0, 0)) == Fraction(1, 5)
    assert sphere_moment((4, 0, 0, 0, 0)) == Fraction(3, 35)
    assert sphere_moment((2, 2, 0, 0, 0)) == Fraction(1, 35)
    assert sphere_moment((1, 1, 0, 0, 0)) == 0


def test_sphere_integrate():
    omega = Scalar.symbol('OMEGA4')
    assert sphere_integrate(Scalar.symbol('XI_3') ** 2 * Scalar.symbol('H1')) == omega * Scalar.symbol('H1') * Fraction(1, 5)
    assert sphere_integrate(Scalar.symbol('XI_1')).is_zero()
    # ∫|ξ'|² = Ω₄ niezależnie od redukcji
    assert sphere_integrate(tangential_norm_squared()) == omega
    assert sphere_integrate(reduce_unit_sphere(tangential_norm_squared())) == omega


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
