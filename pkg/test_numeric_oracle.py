"""
Testy wyroczni numerycznej (numeric_oracle)

Sprawdza:
1. Deterministyczne przypisania wartości z ziarna
2. Kubaturę sfery, wagi Cauchy'ego i kwadraturę po prostej
3. Zgodność wyroczni z wartościami dokładnymi
4. Niezależność wyroczni od rachunku symboli silnika
"""

import math
from itertools import product

import numpy as np
import pytest

import boundary_terms
from boundary_terms import case_by_id, evaluate_case
from coeff_ring import sphere_moment
from numeric_oracle import (DIMF_RANGE, ORACLE_VALUE_RANGE, OracleAssignment, OracleFailureError,
                            cauchy_weights, numeric_oracle, quad_line, sphere_rule, values_match,
                            _contour)
from operator_catalog import OperatorFamily, build_catalog


def test_assignment_is_deterministic():
    first = OracleAssignment.from_seed(5)
    second = OracleAssignment.from_seed(5)
    assert first.values['H1'] == second.values['H1']
    assert first.values['T[Phi][6]'] == second.values['T[Phi][6]']
    assert OracleAssignment.from_seed(6).values['H1'] != first.values['H1']


def test_assignment_ranges():
    assignment = OracleAssignment.from_seed(11)
    low, high = ORACLE_VALUE_RANGE
    assert low <= assignment.values['H1'] <= high
    dimf = assignment.values['DIMF']
    assert isinstance(dimf, int) and DIMF_RANGE[0] <= dimf <= DIMF_RANGE[1]
    assert assignment.values['PI'] == math.pi
    assert assignment.values['OMEGA4'] == pytest.approx(8 * math.pi ** 2 / 3)
    with pytest.raises(KeyError):
        assignment.values['XI_1']


def test_values_match():
    assert values_match(1.0, 1.0 + 1e-10)
    assert values_match(1e6, 1e6 * (1 + 1e-9))
    assert not values_match(1.0, 1.001)
    assert values_match(0.0, 1e-9)


def test_sphere_rule_reproduces_moments():
    points, weights = sphere_rule()
    assert len(points) == 50
    assert np.allclose(np.sum(points ** 2, axis=1), 1.0)
    for exponents in product(range(6), repeat=5):
        if sum(exponents) > 5:
            continue
        cubature = float(weights @ np.prod(points ** np.array(exponents), axis=1))
        assert cubature == pytest.approx(float(sphere_moment(exponents)), abs=1e-14), exponents


def test_cauchy_weights_project_upper_poles():
    # f = 1/(1+z²): część z biegunem w +i to 1/(2i(ξ-i)), jej pochodna -1/(2i(ξ-i)²)
    nodes, offsets = _contour(1j)
    samples = 1 / (1 + nodes ** 2)
    for xi in (-2.0, 0.0, 0.7, 5.0):
        assert complex(cauchy_weights(nodes, offsets, xi, 0) @ samples) == pytest.approx(
            1 / (2j * (xi - 1j)), abs=1e-13)
        assert complex(cauchy_weights(nodes, offsets, xi, 1) @ samples) == pytest.approx(
            -1 / (2j * (xi - 1j) ** 2), abs=1e-13)


def test_quad_line_reference():
    # ∫ dξ/(1+ξ²)² = π/2
    assert quad_line(lambda x: 1 / (1 + x * x) ** 2) == pytest.approx(math.pi / 2, abs=1e-10)
    assert abs(quad_line(lambda x: x / (1 + x * x) ** 2)) < 1e-10
    assert quad_line(lambda x: 0j) == 0


def test_quad_line_accepts_vanishing_real_part():
    # duża część urojona, rzeczywista zero co do zaokrągleń
    value = quad_line(lambda x: 2e4j / (1 + x * x) + 1e-13 * x / (1 + x * x) ** 3)
    assert value.imag == pytest.approx(2e4 * math.pi, rel=1e-12)
    assert abs(value.real) < 1e-9


def test_oracle_case_a_dirac():
    fam = OperatorFamily.DIRAC
    assignment = OracleAssignment.from_seed(3)
    values = assignment.values
    assert abs(numeric_oracle(case_by_id('aI'), fam, assignment)) < 1e-8
    expected = -15 / 16 * values['PI'] * values['H1'] * values['OMEGA4'] * values['DIMF']
    assert values_match(expected, numeric_oracle(case_by_id('aII'), fam, assignment))
    expected = 25 / 16 * values['PI'] * values['H1'] * values['OMEGA4'] * values['DIMF']
    assert values_match(expected, numeric_oracle(case_by_id('aIII'), fam, assignment))


def test_oracle_matches_exact_block():
    fam = OperatorFamily.DIRAC
    case = case_by_id('b')
    result = evaluate_case(case, fam, build_catalog(fam))
    assignment = OracleAssignment.from_seed(1)
    oracle = numeric_oracle(case, fam, assignment, second_part='Phi')
    assert values_match(assignment.evaluate(result.block_values['Phi']), oracle)
    values = assignment.values
    assert values_match(-2 * values['PI'] * values['OMEGA4'] * values['T[Phi][6]'], oracle)


def test_oracle_matches_exact_signature():
    fam = OperatorFamily.SIGNATURE
    catalog = build_catalog(fam)
    assignment = OracleAssignment.from_seed(2)
    for case_id in ('aII', 'aIII', 'b', 'c'):
        case = case_by_id(case_id)
        result = evaluate_case(case, fam, catalog)
        assert values_match(assignment.evaluate(result.exact_value),
                            numeric_oracle(case, fam, assignment)), case_id


def test_oracle_signature_blocks():
    fam = OperatorFamily.SIGNATURE
    catalog = build_catalog(fam)
    assignment = OracleAssignment.from_seed(4)
    for case_id, source in (('b', 'second_part'), ('c', 'first_part')):
        case = case_by_id(case_id)
        result = evaluate_case(case, fam, catalog)
        for name, value in result.block_values.items():
            oracle = numeric_oracle(case, fam, assignment, **{source: name})
            assert values_match(assignment.evaluate(value), oracle), (case_id, name)


def test_oracle_ignores_engine_calculus():
    # zepsuty rachunek symboli silnika nie może zmienić wartości wyroczni
    def broken(*args, **kwargs):
        raise AssertionError("wyrocznia użyła rachunku symboli")

    saved = {name: getattr(boundary_terms, name) for name in ('derive', 'pi_plus', 'mul', 'restrict')}
    fam = OperatorFamily.DIRAC
    assignment = OracleAssignment.from_seed(3)
    values = assignment.values
    try:
        for name in saved:
            setattr(boundary_terms, name, broken)
        oracle = numeric_oracle(case_by_id('aII'), fam, assignment)
    finally:
        for name, fn in saved.items():
            setattr(boundary_terms, name, fn)
    expected = -15 / 16 * values['PI'] * values['H1'] * values['OMEGA4'] * values['DIMF']
    assert values_match(expected, oracle)


def test_oracle_detects_wrong_exact_value():
    # błędny współczynnik ∂xₙ w wartości dokładnej nie przechodzi przez wyrocznię
    fam = OperatorFamily.DIRAC
    assignment = OracleAssignment.from_seed(3)
    values = assignment.values
    oracle = numeric_oracle(case_by_id('aII'), fam, assignment)
    doubled = -15 / 8 * values['PI'] * values['H1'] * values['OMEGA4'] * values['DIMF']
    assert not values_match(doubled, oracle)


def test_oracle_unknown_block():
    with pytest.raises(OracleFailureError):
        numeric_oracle(case_by_id('b'), OperatorFamily.DIRAC, OracleAssignment.from_seed(1),
                       second_part='p')


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
