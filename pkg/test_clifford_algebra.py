"""
Testy algebry Clifforda (clifford_algebra)

Sprawdza:
1. Relacje generatorów c, ĉ i ich macierzy reprezentacji
2. Ślady spinorowy i zewnętrzny
3. Liczby b₆,ₘ
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clifford_algebra import (CHAT, C, DIMENSION, EXTERIOR_DIM, SPIN_DIM, CliffordElement,
                              UnsupportedEndomorphismDepthError, UnsupportedRepresentationError,
                              WrongRepresentationError, b6m, b6m_formula, blade_matrix,
                              blade_trace_exterior, get_trace, normal_form, rep_matrix, trace_ext,
                              trace_spin)
from coeff_ring import Scalar

DIMF = Scalar.symbol('DIMF')
indices = st.integers(min_value=1, max_value=DIMENSION)


@given(indices, indices)
def test_generator_relations(i, j):
    ci, cj = CliffordElement.c(i), CliffordElement.c(j)
    hi, hj = CliffordElement.chat(i), CliffordElement.chat(j)
    one = CliffordElement.identity()
    assert ci * ci == -one
    assert hi * hi == one
    assert ci * hj == -(hj * ci)
    if i != j:
        assert ci * cj == -(cj * ci)
        assert hi * hj == -(hj * hi)


def test_normal_form_of_word():
    assert normal_form([C(2), C(1)]) == -(CliffordElement.c(1) * CliffordElement.c(2))
    assert normal_form([C(3), C(3)]) == -CliffordElement.identity()


@pytest.mark.parametrize('rep, size', [('spin', SPIN_DIM), ('exterior', EXTERIOR_DIM)])
def test_matrix_relations(rep, size):
    identity = np.eye(size)
    for i in range(1, DIMENSION + 1):
        ci = rep_matrix(C(i), rep)
        assert np.allclose(ci @ ci, -identity)
        for j in range(i + 1, DIMENSION + 1):
            cj = rep_matrix(C(j), rep)
            assert np.allclose(ci @ cj + cj @ ci, 0)


def test_exterior_hat_relations():
    identity = np.eye(EXTERIOR_DIM)
    for i in range(1, DIMENSION + 1):
        hi = rep_matrix(CHAT(i), 'exterior')
        assert np.allclose(hi @ hi, identity)
        for j in range(1, DIMENSION + 1):
            cj = rep_matrix(C(j), 'exterior')
            assert np.allclose(hi @ cj + cj @ hi, 0)


def test_spin_has_no_hat():
    with pytest.raises(UnsupportedRepresentationError):
        rep_matrix(CHAT(1), 'spin')


@given(st.integers(min_value=0, max_value=2 ** DIMENSION - 1))
def test_spin_trace_rule_matches_matrices(mask):
    expected = SPIN_DIM if mask == 0 else 0
    assert abs(np.trace(blade_matrix(mask, 'spin')) - expected) < 1e-9


def test_trace_spin():
    c1 = CliffordElement.c(1)
    assert trace_spin(c1 * c1) == DIMF * -8
    assert trace_spin(c1).is_zero()
    phi = CliffordElement.endo('Phi', 1)
    assert trace_spin(c1 * phi * c1) == Scalar.trace_symbol('Phi', 1) * -8
    with pytest.raises(WrongRepresentationError):
        trace_spin(CliffordElement.chat(2))


def test_trace_ext():
    assert trace_ext(CliffordElement.identity()) == DIMF * EXTERIOR_DIM
    assert trace_ext(CliffordElement.c(1)).is_zero()
    assert trace_ext(CliffordElement.c(1) * CliffordElement.chat(1)).is_zero()
    assert trace_ext(CliffordElement.c(6) * CliffordElement.c(6)) == DIMF * -EXTERIOR_DIM
    assert blade_trace_exterior(0) == EXTERIOR_DIM


def test_get_trace():
    assert get_trace('spin') is trace_spin
    assert get_trace('exterior') is trace_ext
    with pytest.raises(UnsupportedRepresentationError):
        get_trace('adjoint')


def test_endomorphism_depth():
    phi = CliffordElement.endo('Phi', 1)
    assert len((phi * phi).terms) == 1
    with pytest.raises(UnsupportedEndomorphismDepthError):
        phi * phi * phi


def test_endomorphisms_do_not_commute():
    phi = CliffordElement.endo('Phi', 1)
    sigma = CliffordElement.endo('sigmaF', 2)
    assert phi * sigma != sigma * phi
    assert trace_spin(phi * sigma) == Scalar.symbol('T2[Phi*sigmaF][1,2]') * SPIN_DIM


def test_b6m_matrix_equals_formula():
    for m in range(DIMENSION + 1):
        assert b6m(m) == b6m_formula(m)
    assert sum(b6m(m) for m in range(DIMENSION + 1)) == 0
    assert b6m(0) == 1


def main():
    """Uruchom testy"""
    tests = [obj for name, obj in globals().items() if name.startswith('test_') and callable(obj)]
    failed = 0
    for test in tests:
        try:
            if test is test_matrix_relations:
                test('spin', SPIN_DIM)
                test('exterior', EXTERIOR_DIM)
            else:
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
