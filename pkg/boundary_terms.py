"""
Boundary Terms - Wyrazy brzegowe residuum Wodzickiego (n = 6)
==============================================================

Suma brzegowa biegnie po (r, ℓ, j, k, α) z

    r + ℓ - j - k - |α| - 1 = -6,   r ≤ -1,   ℓ ≤ -3

co daje dokładnie pięć przypadków:

    aI   (-1, -3, 0, 0, 1)   prefaktor -1
    aII  (-1, -3, 1, 0, 0)   prefaktor -1/2
    aIII (-1, -3, 0, 1, 0)   prefaktor -1/2
    b    (-1, -4, 0, 0, 0)   prefaktor -i
    c    (-2, -3, 0, 0, 0)   prefaktor -i

Każdy przypadek:
    pierwszy czynnik:  ∂ξ'^α → ∂xₙʲ → restrykcja → π⁺ → ∂ξₙᵏ
    drugi czynnik:     ∂x'^α → ∂xₙᵏ → restrykcja → ∂ξₙ^(j+1)
    potem iloczyn, ślad, całka po ξₙ (residua), całka po S⁴, prefaktor.

Użycie:
    from boundary_terms import enumerate_cases, evaluate_case, assemble
    from operator_catalog import OperatorFamily
    for case in enumerate_cases():
        print(evaluate_case(case, OperatorFamily.DIRAC).exact_value)
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

from clifford_algebra import DIMENSION
from coeff_ring import I, GaussianRational, Scalar, reduce_unit_sphere, sphere_integrate
from operator_catalog import OperatorCatalog, OperatorFamily, build_catalog
from stated_values import stated_case_value
from symbol_calculus import RationalSymbol, derive, integrate_line, mul, pi_plus, restrict

logger = logging.getLogger(__name__)


BOUNDARY_DIMENSION = 6
# Zakresy przeszukiwania reguły sumy (pełne rozwiązania leżą głęboko w środku)
R_RANGE = range(-6, 0)
ELL_RANGE = range(-8, -2)
DERIVATIVE_RANGE = range(0, 6)

CASE_IDS = {
    (-1, -3, 0, 0, 1): 'aI',
    (-1, -3, 1, 0, 0): 'aII',
    (-1, -3, 0, 1, 0): 'aIII',
    (-1, -4, 0, 0, 0): 'b',
    (-2, -3, 0, 0, 0): 'c',
}


@dataclass(frozen=True)
class BoundaryCase:
    r: int
    ell: int
    j: int
    k: int
    alpha_order: int

    @property
    def case_id(self) -> str:
        return CASE_IDS.get(self.key, f"r{self.r}l{self.ell}j{self.j}k{self.k}a{self.alpha_order}")

    @property
    def key(self) -> Tuple[int, int, int, int, int]:
        return (self.r, self.ell, self.j, self.k, self.alpha_order)

    @property
    def prefactor(self) -> GaussianRational:
        """(-i)^(|α|+j+k+1) / (α!·(j+k+1)!); dla |α| ≤ 1 α! = 1"""
        power = self.alpha_order + self.j + self.k + 1
        return (-I) ** power * Fraction(1, math.factorial(self.j + self.k + 1))

    def satisfies_sum_rule(self) -> bool:
        return (self.r + self.ell - self.j - self.k - self.alpha_order - 1 == -BOUNDARY_DIMENSION
                and self.r <= -1 and self.ell <= -3)

    def to_dict(self) -> Dict:
        return {
            'id': self.case_id,
            'r': self.r,
            'ell': self.ell,
            'j': self.j,
            'k': self.k,
            'alpha': self.alpha_order,
            'prefactor': self.prefactor.render(),
        }


@dataclass
class CaseResult:
    case: BoundaryCase
    exact_value: Scalar
    stated: Optional[Scalar] = None
    block_values: Dict[str, Scalar] = field(default_factory=dict)

    @property
    def case_id(self) -> str:
        return self.case.case_id

    def blocks_total(self) -> Scalar:
        total = Scalar()
        for value in self.block_values.values():
            total = total + value
        return total

    def to_dict(self) -> Dict:
        return {
            'case_id': self.case_id,
            'exact': self.exact_value.render(),
            'stated': self.stated.render() if self.stated is not None else 'n/a',
            'blocks': {name: value.render() for name, value in self.block_values.items()},
        }


def enumerate_cases() -> List[BoundaryCase]:
    """Wszystkie rozwiązania reguły sumy (pełne przeszukanie siatki)"""
    cases = []
    for r, ell, j, k, alpha_order in product(R_RANGE, ELL_RANGE, DERIVATIVE_RANGE,
                                             DERIVATIVE_RANGE, DERIVATIVE_RANGE):
        case = BoundaryCase(r, ell, j, k, alpha_order)
        if case.satisfies_sum_rule():
            cases.append(case)
    order = list(CASE_IDS)
    return sorted(cases, key=lambda c: order.index(c.key) if c.key in CASE_IDS else len(order))


def case_by_id(case_id: str) -> BoundaryCase:
    for case in enumerate_cases():
        if case.case_id == case_id:
            return case
    raise KeyError(f"Nieznany przypadek brzegowy: {case_id}")


def block_source(case: BoundaryCase) -> Optional[str]:
    """Który czynnik dzieli się na bloki: drugi dla ℓ = -4, pierwszy dla r = -2"""
    if case.ell == -4:
        return 'second'
    if case.r == -2:
        return 'first'
    return None


def _tangential_directions(alpha_order: int) -> List[Tuple[int, ...]]:
    if alpha_order > 1:
        raise ValueError("Multiindeksy |α| > 1 nie występują w sumie dla n = 6")
    if not alpha_order:
        return [()]
    return [(j,) for j in range(1, DIMENSION)]


def case_integrands(case: BoundaryCase, catalog: OperatorCatalog,
                    first_part: Optional[str] = None,
                    second_part: Optional[str] = None) -> List[Tuple[RationalSymbol, RationalSymbol]]:
    """
    Pary (π⁺-czynnik, drugi czynnik) po restrykcji; całka przypadku to
    prefaktor · Σ ∫∫ tr[pierwszy · drugi].
    """
    first_entry = catalog.first_order(case.r)
    second_entry = catalog.cubed_order(case.ell)
    sigma_r = first_entry.parts[first_part] if first_part else first_entry.expr
    sigma_ell = second_entry.parts[second_part] if second_part else second_entry.expr

    pairs = []
    for direction in _tangential_directions(case.alpha_order):
        first, second = sigma_r, sigma_ell
        for index in direction:
            first = derive(first, 'xi_j', index)
            second = derive(second, 'x_prime', index)
        for _ in range(case.j):
            first = derive(first, 'x_n')
        first = pi_plus(restrict(first))
        for _ in range(case.k):
            first = derive(first, 'xi_n')

        for _ in range(case.k):
            second = derive(second, 'x_n')
        second = restrict(second)
        for _ in range(case.j + 1):
            second = derive(second, 'xi_n')
        pairs.append((first, second))
    return pairs


def integrate_pairs(pairs: List[Tuple[RationalSymbol, RationalSymbol]],
                    case: BoundaryCase, rep: str) -> Scalar:
    total = Scalar()
    for first, second in pairs:
        integrand = mul(first, second)
        if integrand.is_structurally_zero():
            continue
        total = total + integrate_line(integrand, rep)
    return sphere_integrate(reduce_unit_sphere(total)) * case.prefactor


def evaluate_case(case: BoundaryCase, fam: OperatorFamily,
                  catalog: Optional[OperatorCatalog] = None) -> CaseResult:
    """Dokładna wartość przypadku (plus bloki, jeśli czynnik jest dzielony)"""
    catalog = catalog or build_catalog(fam)
    rep = fam.trace_rep
    exact = integrate_pairs(case_integrands(case, catalog), case, rep)

    blocks: Dict[str, Scalar] = {}
    source = block_source(case)
    if source == 'second':
        for name in catalog.cubed_order(case.ell).parts:
            pairs = case_integrands(case, catalog, second_part=name)
            blocks[name] = integrate_pairs(pairs, case, rep)
    elif source == 'first':
        for name in catalog.first_order(case.r).parts:
            pairs = case_integrands(case, catalog, first_part=name)
            blocks[name] = integrate_pairs(pairs, case, rep)

    logger.info(f"[{fam.value}] przypadek {case.case_id}: {exact.render()}")
    return CaseResult(case, exact, stated_case_value(fam.value, case.case_id), blocks)


def assemble(fam: OperatorFamily, catalog: Optional[OperatorCatalog] = None,
             results: Optional[List[CaseResult]] = None) -> Scalar:
    """Φ (Dirac) albo Ψ (sygnatura): suma wszystkich przypadków"""
    if results is None:
        catalog = catalog or build_catalog(fam)
        results = [evaluate_case(case, fam, catalog) for case in enumerate_cases()]
    total = Scalar()
    for result in results:
        total = total + result.exact_value
    return total


def substitute_K(s: Scalar) -> Scalar:
    """h'(0) = -(2/5)K, bo K(x₀) = -(5/2)h'(0) dla n = 6"""
    return s.substitute('H1', Scalar.symbol('K') * Fraction(-2, 5))
