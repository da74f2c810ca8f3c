"""
Stated Values - Wartości i postaci pośrednie do porównania
==========================================================

Podane wartości przypadków i bloków, sumy Φ/Ψ, postaci twierdzenia
po podstawieniu K oraz postaci pośrednie symboli (po restrykcji |ξ'| = 1).
Wszystko tu to adnotacje referencyjne: raport porównuje je z silnikiem,
ale niezgodność jest wynikiem, nie błędem.

Odczyt "dim F · trace[X]":
    literal     - DIMF·T[X]
    normalized  - rep_dim·T[X] (8 dla spinorów, 64 dla form), DIMF znika
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Union

from clifford_algebra import DIMENSION, SPIN_DIM, EXTERIOR_DIM, CliffordElement, c_xi_prime
from coeff_ring import I, GaussianRational, Scalar
from symbol_calculus import RationalSymbol

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, GaussianRational]

REP_DIMENSIONS = {'dirac': SPIN_DIM, 'signature': EXTERIOR_DIM}


def _t(family: str) -> Scalar:
    return Scalar.trace_symbol(family, DIMENSION)


PI = Scalar.symbol('PI')
H1 = Scalar.symbol('H1')
K = Scalar.symbol('K')
BASE = PI * Scalar.symbol('OMEGA4') * Scalar.symbol('DIMF')
BASE_NO_PI = Scalar.symbol('OMEGA4') * Scalar.symbol('DIMF')


# =====================================================================
# WARTOŚCI PRZYPADKÓW I BLOKÓW (odczyt literalny)
# =====================================================================

CASE_EQUATIONS = {
    'dirac': {'aI': '(3.12)', 'aII': '(3.18)', 'aIII': '(3.23)', 'b': '(3.49)', 'c': '(3.64)'},
    'signature': {'aI': '(5.5)', 'aII': '(5.10)', 'aIII': '(5.15)', 'b': '(5.49)', 'c': '(5.37)'},
}

BLOCK_EQUATIONS = {
    'dirac': {
        'b': {'D3': '(3.33)', 'alpha': '(3.38)', 'PhiStar': '(3.43)', 'Phi': '(3.48)'},
        'c': {'A': '(3.59)', 'beta': '(3.63)'},
    },
    'signature': {
        'b': {'D3': '(5.43)', 'p': '(5.45)', 'vartheta': '(5.47)', 'w': '(5.48)'},
        'c': {'theta': '(5.35)', 'vartheta': '(5.36)'},
    },
}

STATED_VALUES: Dict[str, Dict[str, Scalar]] = {
    'dirac': {
        '(3.12)': Scalar(),
        '(3.18)': BASE * H1 * Fraction(-15, 16),
        '(3.23)': BASE * H1 * Fraction(25, 16),
        '(3.33)': BASE * H1 * Fraction(-129, 16),
        '(3.38)': BASE * (_t('sigmaF') - _t('PhiStar')) * Fraction(3, 2),
        '(3.43)': BASE * _t('PhiStar') * (-3),
        '(3.48)': -(BASE * _t('Phi')),
        '(3.59)': BASE * H1 * Fraction(55, 16),
        '(3.63)': BASE * (_t('sigmaF') + _t('Phi')) * (-2),
        # czynnik h'(0) przy drugim wyrazie jest w oryginale
        '(3.64)': BASE * H1 * Fraction(55, 16) - BASE * H1 * (_t('sigmaF') + _t('Phi')) * 2,
    },
    'signature': {
        '(5.5)': Scalar(),
        '(5.10)': BASE * H1 * Fraction(-15, 2),
        '(5.15)': BASE * H1 * Fraction(25, 2),
        '(5.35)': BASE * H1 * Fraction(45, 2),
        # bez π w oryginale
        '(5.36)': BASE_NO_PI * _t('sigmaFe') * (-16),
        '(5.37)': BASE * (H1 * Fraction(45, 2) - _t('sigmaFe') * 16),
        '(5.43)': BASE * H1 * Fraction(-129, 2),
        '(5.45)': Scalar(),
        '(5.47)': BASE * _t('sigmaFe') * 12,
        '(5.48)': BASE * (_t('w') * 4 - _t('wStar') * 12),
    },
}
STATED_VALUES['dirac']['(3.49)'] = (STATED_VALUES['dirac']['(3.33)'] + STATED_VALUES['dirac']['(3.38)']
                                    + STATED_VALUES['dirac']['(3.43)'] + STATED_VALUES['dirac']['(3.48)'])
STATED_VALUES['signature']['(5.49)'] = (STATED_VALUES['signature']['(5.43)']
                                        + STATED_VALUES['signature']['(5.47)']
                                        + STATED_VALUES['signature']['(5.48)'])

STATED_TOTALS = {
    'dirac': {
        '(3.65)': BASE * (H1 * 4 - _t('Phi') - _t('PhiStar') * 3
                          + (_t('sigmaF') - _t('PhiStar')) * Fraction(3, 2)
                          - (_t('sigmaF') + _t('Phi')) * 2),
        '(3.67)': BASE * (K * Fraction(-8, 5) - _t('Phi') - _t('PhiStar') * 3
                          + (_t('sigmaF') - _t('PhiStar')) * Fraction(3, 2)
                          - (_t('sigmaF') + _t('Phi')) * 2),
    },
    'signature': {
        '(5.50)': BASE * (H1 * 23 - _t('sigmaFe') * 4 + _t('w') * 4 - _t('wStar') * 12),
        # w i w* zamienione względem (5.50)
        '(5.52)': BASE * (K * Fraction(-46, 5) - _t('sigmaFe') * 4 + _t('wStar') * 4 - _t('w') * 12),
    },
}

TOTAL_EQUATIONS = {
    'dirac': ('(3.65)', '(3.67)'),
    'signature': ('(5.50)', '(5.52)'),
}

INTERIOR_TERMS = {
    'dirac': ('(3.10)', "8*PI^3 * int_M Tr[-s/12 + c(Phi*)c(Phi) - 1/4*sum_i [c(Phi*)c(e_i) - c(e_i)c(Phi)]^2"
                        " - 1/2*sum_j nabla_j(c(Phi*))c(e_j) - 1/2*sum_j c(e_j)nabla_j(c(Phi))] dvol_M"),
    'signature': ('(5.3)', "8*PI^3 * int_M Tr[-s/12 + 3/8*[c^(w*) - c^(w)]^2 - 1/4*c^(w*)c^(w)"
                           " - 1/4*sum_j nabla_j(c^(w*))c(e_j) + 1/4*sum_j c(e_j)nabla_j(c^(w))] dvol_M"),
}

K_RELATION = ('(3.66)', "K = sum_i K_ii = -5/2*H1")


def stated_value(family: str, equation_id: str) -> Optional[Scalar]:
    return STATED_VALUES.get(family, {}).get(equation_id)


def stated_case_value(family: str, case_id: str) -> Optional[Scalar]:
    equation = CASE_EQUATIONS.get(family, {}).get(case_id)
    return stated_value(family, equation) if equation else None


def normalized_reading(value: Scalar, rep_dim: int) -> Scalar:
    """DIMF·T[X] -> rep_dim·T[X]: w jednomianach ze śladem endomorfizmu DIMF zastępuje rep_dim"""
    result = Scalar()
    for monomial, coeff in value.items():
        names = [name for name, _ in monomial]
        if 'DIMF' in names and any(name.startswith('T') for name in names):
            rest = tuple((name, e) for name, e in monomial if name != 'DIMF')
            exponent = dict(monomial)['DIMF']
            result = result + Scalar({rest: coeff * rep_dim ** exponent})
        else:
            result = result + Scalar({monomial: coeff})
    return result


def stated_readings(family: str, value: Scalar) -> Dict[str, Scalar]:
    return {
        'literal': value,
        'normalized': normalized_reading(value, REP_DIMENSIONS[family]),
    }


# =====================================================================
# POSTACI POŚREDNIE (po restrykcji)
# =====================================================================

def over(numerator: Dict[int, Number], element: CliffordElement,
         plus_order: int, minus_order: int) -> RationalSymbol:
    """Σₚ aₚξₙᵖ · element / ((ξₙ-i)^plus_order (ξₙ+i)^minus_order)"""
    terms = {}
    for power, coeff in numerator.items():
        terms[(power, plus_order, minus_order)] = element * GaussianRational.coerce(coeff)
    return RationalSymbol(terms, restricted=True)


def total(symbols: Iterable[RationalSymbol]) -> RationalSymbol:
    result = RationalSymbol.zero(restricted=True)
    for symbol in symbols:
        result = result + symbol
    return result


def _blocks():
    c6 = CliffordElement.c(DIMENSION)
    cp = c_xi_prime()
    dcp = cp * (H1 * Fraction(1, 2))
    return c6, cp, dcp


def pi_plus_sigma_minus1() -> RationalSymbol:
    """-(c(ξ') + ic(dxₙ))/(2(ξₙ-i))"""
    c6, cp, _ = _blocks()
    return over({0: Fraction(-1, 2)}, cp + c6 * I, 1, 0)


def pi_plus_dxn_sigma_minus1() -> RationalSymbol:
    c6, cp, dcp = _blocks()
    return total([
        over({0: Fraction(1, 2)}, dcp, 1, 0),
        over({0: I * I * Fraction(1, 4)}, cp * H1, 1, 0),
        over({0: I * Fraction(1, 4)}, (cp + c6 * I) * H1, 2, 0),
    ])


def dxi2_sigma_minus3() -> RationalSymbol:
    c6, cp, _ = _blocks()
    return total([
        over({2: I * 20, 0: I * -4}, cp, 4, 4),
        over({3: I * 12, 1: I * -12}, c6, 4, 4),
    ])


def dxi_pi_plus_sigma_minus1() -> RationalSymbol:
    c6, cp, _ = _blocks()
    return over({0: Fraction(-1, 2)}, cp + c6 * I, 2, 0)


def dxi_dxn_sigma_minus3() -> RationalSymbol:
    c6, cp, dcp = _blocks()
    return total([
        over({1: I * -4}, dcp, 3, 3),
        over({1: I * 12}, cp * H1, 4, 4),
        over({0: I * -2, 2: I * 10}, c6 * H1, 4, 4),
    ])


def dxi_sigma_minus3() -> RationalSymbol:
    c6, cp, _ = _blocks()
    return total([
        over({1: I * -4}, cp, 3, 3),
        over({0: I, 2: I * -3}, c6, 3, 3),
    ])


def sigma_minus4_d3_expanded() -> RationalSymbol:
    c6, cp, dcp = _blocks()
    cpc6cp = cp * c6 * cp
    return total([
        over({0: Fraction(-17, 4), 2: Fraction(-9, 4)}, cpc6cp * H1, 4, 4),
        over({1: Fraction(33, 2), 3: Fraction(17, 2)}, cp * H1, 4, 4),
        over({2: Fraction(49, 2), 4: Fraction(25, 2)}, c6 * H1, 4, 4),
        over({0: 1}, cp * c6 * dcp, 3, 3),
        over({1: -3}, dcp, 3, 3),
        over({2: -2}, cp * H1, 3, 3),
        over({0: 1, 2: -1}, c6 * H1, 3, 3),
    ])


def dxi_sigma_minus4_d3_expanded() -> RationalSymbol:
    c6, cp, dcp = _blocks()
    cpc6cp = cp * c6 * cp
    return total([
        over({1: Fraction(59, 2), 3: Fraction(27, 2)}, cpc6cp * H1, 5, 5),
        over({0: Fraction(33, 2), 2: -90, 4: Fraction(-85, 2)}, cp * H1, 5, 5),
        over({1: Fraction(49, 2), 3: Fraction(-97, 2), 5: -25}, c6 * H1, 5, 5),
        over({1: -6}, cp * c6 * dcp, 4, 4),
        over({0: -3, 2: 15}, dcp, 4, 4),
        over({3: 4, 1: -8}, c6 * H1, 4, 4),
        over({0: 2, 2: -10}, cp * H1, 4, 4),
    ])


def dxi_sandwich_over_norm6(middle: CliffordElement) -> RationalSymbol:
    """∂ξₙ(c(ξ)Xc(ξ)/|ξ|⁶) w postaci podanej dla X = α, c(Φ*), p"""
    c6, cp, _ = _blocks()
    return total([
        over({0: 1}, c6 * middle * cp + cp * middle * c6, 3, 3),
        over({1: 2}, c6 * middle * c6, 3, 3),
        over({1: -6}, cp * middle * cp, 4, 4),
        over({2: -6}, cp * middle * c6 + c6 * middle * cp, 4, 4),
        over({3: -6}, c6 * middle * c6, 4, 4),
    ])


def dxi_phi_over_norm4(c_phi: CliffordElement) -> RationalSymbol:
    return over({1: -2}, c_phi, 3, 3)


def a1_block() -> RationalSymbol:
    """A₁ = B₁: [(5/2)h'c₆ - (5i/2)h'c(ξ') - (2+iξₙ)c(ξ')c₆∂c(ξ') + i∂c(ξ')]/(4(ξₙ-i)²)"""
    c6, cp, dcp = _blocks()
    return total([
        over({0: Fraction(5, 8)}, c6 * H1, 2, 0),
        over({0: I * Fraction(-5, 8)}, cp * H1, 2, 0),
        over({0: Fraction(-1, 2), 1: I * Fraction(-1, 4)}, cp * c6 * dcp, 2, 0),
        over({0: I * Fraction(1, 4)}, dcp, 2, 0),
    ])


def a2_block() -> RationalSymbol:
    c6, cp, _ = _blocks()
    return total([
        over({0: I * Fraction(-1, 8)}, c6 * H1, 1, 0),
        over({0: Fraction(1, 16)}, (c6 - cp * I) * H1, 2, 0),
        over({1: Fraction(3, 16), 0: I * Fraction(-7, 16)}, (cp * I - c6) * H1, 3, 0),
    ])


def pi_plus_sandwich_over_norm4(middle: CliffordElement) -> RationalSymbol:
    """π⁺(c(ξ)Xc(ξ)/|ξ|⁴) w postaci podanej dla X = β, ϑ"""
    c6, cp, _ = _blocks()
    return total([
        over({0: Fraction(-1, 2), 1: I * Fraction(-1, 4)}, cp * middle * cp, 2, 0),
        over({0: I * Fraction(-1, 4)}, c6 * middle * cp + cp * middle * c6, 2, 0),
        over({1: I * Fraction(-1, 4)}, c6 * middle * c6, 2, 0),
    ])


# Tożsamości śladu w x₀ przy |ξ'| = 1: (opis, element, wartość podana)
def trace_identities() -> List[Tuple[str, CliffordElement, Scalar]]:
    c6, cp, dcp = _blocks()
    dimf = Scalar.symbol('DIMF')
    return [
        ("tr[c(xi')c(dxn)] = 0", cp * c6, Scalar()),
        ("tr[c(dxn)^2] = -8 dimF", c6 * c6, dimf * -8),
        ("tr[c(xi')^2] = -8 dimF", cp * cp, dimf * -8),
        ("tr[d_xn c(xi') c(dxn)] = 0", dcp * c6, Scalar()),
        ("tr[d_xn c(xi') c(xi')] = -4 H1 dimF", dcp * cp, H1 * dimf * -4),
    ]
