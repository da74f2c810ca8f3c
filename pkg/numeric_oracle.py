"""
Numeric Oracle - Niezależne sprawdzenie liczbowe przypadków brzegowych
======================================================================

Dla losowego przypisania wartości symbolom (h'(0), ślady endomorfizmów, dim F)
przypadek liczony jest bez algebry symboli silnika:

    - symbole to macierze reprezentacji w punktach (ξ', z), odwrotności
      z rekurencji parametriksu przez odwracanie macierzy,
    - ∂xₙ z części dualnej (ξ' skalowane przez e^{h'(0)xₙ/2}),
    - π⁺ i pochodne po ξₙ ze wzoru Cauchy'ego na okręgach wokół ±i,
    - całka po S⁴ kubaturą stopnia 5,
    - całka po ξₙ ∈ R kwadraturą scipy (podstawienie ξₙ = tg θ).

Endomorfizmy F wchodzą przez swoje ślady: każdy iloczyn zawiera co najwyżej
jeden, a iloczyn dwóch jest zgłaszany jako błąd wyroczni.

Użycie:
    from numeric_oracle import OracleAssignment, numeric_oracle
    assignment = OracleAssignment.from_seed(7)
    value = numeric_oracle(case, OperatorFamily.DIRAC, assignment)
"""

import hashlib
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, Mapping, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from boundary_terms import BoundaryCase
from clifford_algebra import CHAT, DIMENSION, C, rep_matrix
from coeff_ring import XI_SYMBOLS, Scalar, trace_symbol_name
from operator_catalog import OperatorFamily

logger = logging.getLogger(__name__)


ORACLE_VALUE_RANGE = (0.5, 2.0)
DIMF_RANGE = (1, 4)
QUAD_ABS_TOLERANCE = 1e-10
QUAD_REL_TOLERANCE = 1e-12
QUAD_LIMIT = 200
ORACLE_REL_TOLERANCE = 1e-8

# Okręgi Cauchy'ego wokół ±i: błąd trapezów ~ promień^węzły
CONTOUR_RADIUS = 0.25
CONTOUR_NODES = 24

# Symbole bez losowania
FIXED_VALUES = {
    'PI': math.pi,
    'OMEGA4': 8 * math.pi ** 2 / 3,
}


class OracleFailureError(Exception):
    """Kwadratura nie zbiegła albo przypisanie jest niepełne"""


class _LazyValues(dict):
    """Słownik wartości losowanych przy pierwszym odczycie (deterministycznie z ziarna)"""

    def __init__(self, seed: int):
        super().__init__(FIXED_VALUES)
        self.seed = seed

    def _rng(self, name: str) -> np.random.Generator:
        digest = int(hashlib.sha256(name.encode('utf-8')).hexdigest()[:16], 16)
        return np.random.default_rng([self.seed, digest])

    def __missing__(self, name: str) -> float:
        if name in XI_SYMBOLS:
            raise KeyError(f"{name} jest zmienną całkowania, nie parametrem")
        rng = self._rng(name)
        if name == 'DIMF':
            value = int(rng.integers(DIMF_RANGE[0], DIMF_RANGE[1] + 1))
        else:
            value = float(rng.uniform(*ORACLE_VALUE_RANGE))
        self[name] = value
        return value


@dataclass
class OracleAssignment:
    seed: int
    values: Dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_seed(cls, seed: int) -> 'OracleAssignment':
        return cls(seed, _LazyValues(seed))

    def evaluate(self, value: Scalar) -> complex:
        return value.evaluate(self.values)

    def snapshot(self) -> Dict[str, str]:
        """Wylosowane dotąd wartości (do raportu)"""
        return {name: f"{value:.6g}" for name, value in sorted(self.values.items())}


def values_match(exact: complex, numeric: complex,
                 rel_tol: float = ORACLE_REL_TOLERANCE) -> bool:
    """|exact - oracle| ≤ rel_tol · max(1, |oracle|)"""
    return abs(exact - numeric) <= rel_tol * max(1.0, abs(numeric))


# =====================================================================
# SFERA
# =====================================================================

@lru_cache(maxsize=None)
def sphere_rule() -> Tuple[np.ndarray, np.ndarray]:
    """
    Kubatura stopnia 5 na S⁴ (średnia, wagi sumują się do 1).

    Punkty ±eᵢ z wagą -1/70 oraz (±eᵢ ± eⱼ)/√2 z wagą 1/35. Zbiór jest
    niezmienniczy na zmianę znaku każdej współrzędnej, więc jednomiany
    z nieparzystym wykładnikiem dają 0 w każdym stopniu.
    """
    eye = np.eye(DIMENSION - 1)
    points, weights = [], []
    for axis in eye:
        for sign in (1.0, -1.0):
            points.append(sign * axis)
            weights.append(-1.0 / 70)
    for i, j in combinations(range(DIMENSION - 1), 2):
        for si in (1.0, -1.0):
            for sj in (1.0, -1.0):
                points.append((si * eye[i] + sj * eye[j]) / math.sqrt(2))
                weights.append(1.0 / 35)
    return np.array(points), np.array(weights)


# =====================================================================
# SYMBOLE JAKO MACIERZE
# =====================================================================

MatrixPart = Tuple[int, int]   # (rząd w xₙ, liczba endomorfizmów)


def _batched(factor):
    """Skalar albo tablica (B,) -> kształt mnożący się z macierzami (B, n, n)"""
    if np.ndim(factor) == 0:
        return factor
    return np.asarray(factor)[:, None, None]


def _accumulate(parts: Dict[MatrixPart, np.ndarray], key: MatrixPart, value: np.ndarray):
    parts[key] = parts[key] + value if key in parts else value


class Dual:
    """Skalar a + b·ε (ε² = 0): wartość w x₀ i pochodna po xₙ"""
    __slots__ = ('value', 'slope')

    def __init__(self, value, slope=0.0):
        self.value = value
        self.slope = slope

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.value * other.value,
                        self.value * other.slope + self.slope * other.value)
        return Dual(self.value * other, self.slope * other)

    __rmul__ = __mul__

    def power(self, exponent: int) -> 'Dual':
        return Dual(self.value ** exponent,
                    exponent * self.value ** (exponent - 1) * self.slope)


class NumericSymbol:
    """
    Symbol w wiązce punktów: {(rząd xₙ, liczba endo): macierze (B, n, n)}.

    Część endomorfizmowa ma już podstawiony ślad po F, więc mnożenie obcina
    rząd xₙ powyżej 1 i odrzuca iloczyn dwóch endomorfizmów.
    """
    __slots__ = ('parts',)

    def __init__(self, parts: Optional[Dict[MatrixPart, np.ndarray]] = None):
        self.parts = dict(parts or {})

    @classmethod
    def constant(cls, matrix: np.ndarray, endo: int = 0) -> 'NumericSymbol':
        return cls({(0, endo): matrix})

    def __add__(self, other: 'NumericSymbol') -> 'NumericSymbol':
        parts = dict(self.parts)
        for key, value in other.parts.items():
            _accumulate(parts, key, value)
        return NumericSymbol(parts)

    def __neg__(self) -> 'NumericSymbol':
        return NumericSymbol({key: -value for key, value in self.parts.items()})

    def __sub__(self, other: 'NumericSymbol') -> 'NumericSymbol':
        return self + (-other)

    def __matmul__(self, other: 'NumericSymbol') -> 'NumericSymbol':
        parts: Dict[MatrixPart, np.ndarray] = {}
        for (x1, e1), a in self.parts.items():
            for (x2, e2), b in other.parts.items():
                if x1 + x2 > 1:
                    continue
                if e1 + e2 > 1:
                    raise OracleFailureError("Iloczyn dwóch endomorfizmów: ślad się nie rozkłada")
                _accumulate(parts, (x1 + x2, e1 + e2), a @ b)
        return NumericSymbol(parts)

    def scaled(self, factor) -> 'NumericSymbol':
        """Mnożenie przez liczbę, tablicę (B,) albo Dual"""
        if not isinstance(factor, Dual):
            return NumericSymbol({key: _batched(factor) * value
                                  for key, value in self.parts.items()})
        parts: Dict[MatrixPart, np.ndarray] = {}
        for (x, e), value in self.parts.items():
            _accumulate(parts, (x, e), _batched(factor.value) * value)
            if x == 0 and np.any(factor.slope):
                _accumulate(parts, (1, e), _batched(factor.slope) * value)
        return NumericSymbol(parts)

    def inverse(self) -> 'NumericSymbol':
        """Odwrotność macierzowa: (P + εP')⁻¹ = Q - εQP'Q"""
        if any(e for _, e in self.parts):
            raise OracleFailureError("Odwracany symbol zawiera endomorfizm")
        value = np.linalg.inv(self.parts[(0, 0)])
        parts = {(0, 0): value}
        if (1, 0) in self.parts:
            parts[(1, 0)] = -(value @ self.parts[(1, 0)] @ value)
        return NumericSymbol(parts)

    def at_x0(self) -> 'NumericSymbol':
        return NumericSymbol({(0, e): v for (x, e), v in self.parts.items() if x == 0})

    def x_derivative(self) -> 'NumericSymbol':
        """∂xₙ w x₀"""
        return NumericSymbol({(0, e): v for (x, e), v in self.parts.items() if x == 1})


@dataclass(frozen=True)
class _Generators:
    c: Tuple[np.ndarray, ...]
    chat: Optional[Tuple[np.ndarray, ...]]


@lru_cache(maxsize=None)
def _generators(rep: str) -> _Generators:
    c = tuple(np.asarray(rep_matrix(C(j), rep), dtype=np.complex128) for j in range(1, DIMENSION + 1))
    chat = None
    if rep == 'exterior':
        chat = tuple(np.asarray(rep_matrix(CHAT(j), rep), dtype=np.complex128)
                     for j in range(1, DIMENSION + 1))
    return _Generators(c, chat)


class _Point:
    """Klocki symboli w punkcie ξ' ∈ S⁴ dla węzłów z (tablica (B,))"""

    def __init__(self, gens: _Generators, values: Mapping[str, float],
                 xi_prime: np.ndarray, nodes: np.ndarray):
        self.gens = gens
        self.values = values
        self.h1 = values['H1']
        self.nodes = nodes
        prime = sum(x * c for x, c in zip(xi_prime, gens.c[:DIMENSION - 1]))
        # xₙ wchodzi tylko przez metrykę na brzegu: ξ' ↦ e^{h'(0)xₙ/2}ξ'
        self.c_prime = NumericSymbol({(0, 0): prime, (1, 0): 0.5 * self.h1 * prime})
        self.c6 = NumericSymbol.constant(gens.c[DIMENSION - 1])
        self.c_xi = self.c_prime + self.c6.scaled(nodes)
        tangential = float(xi_prime @ xi_prime)
        self.norm2 = Dual(tangential + nodes ** 2, self.h1 * tangential)

    def twisted(self, family: str, hat: bool = False) -> NumericSymbol:
        """Σⱼ c(eⱼ)·tr_F E(eⱼ) (albo z ĉ)"""
        gens = self.gens.chat if hat else self.gens.c
        if gens is None:
            raise OracleFailureError("ĉ nie działa na spinorach")
        total = sum(self.values[trace_symbol_name(family, j)] * gens[j - 1]
                    for j in range(1, DIMENSION + 1))
        return NumericSymbol.constant(total, endo=1)

    def constant(self, matrix: np.ndarray) -> NumericSymbol:
        return NumericSymbol.constant(matrix)


# =====================================================================
# DANE OPERATORÓW
# =====================================================================

def _sigma0_geometric(point: _Point) -> np.ndarray:
    return -1.25 * point.h1 * point.gens.c[DIMENSION - 1]


def _m_matrix(point: _Point) -> np.ndarray:
    c, chat = point.gens.c, point.gens.chat
    return 0.25 * point.h1 * sum(c[i] @ chat[DIMENSION - 1] @ chat[i] for i in range(DIMENSION - 1))


def _sigma0_parts(fam: OperatorFamily, point: _Point) -> Dict[str, NumericSymbol]:
    """σ₀ operatora pierwszego rzędu; pierwszy blok niesie część geometryczną"""
    if fam is OperatorFamily.DIRAC:
        return {
            'A': point.constant(_sigma0_geometric(point)),
            'beta': point.twisted('sigmaF') + point.twisted('Phi'),
        }
    return {
        'theta': point.constant(_sigma0_geometric(point) + _m_matrix(point)),
        'vartheta': point.twisted('sigmaFe') - point.twisted('w', hat=True).scaled(0.5),
    }


def _sigma2_parts(fam: OperatorFamily, point: _Point) -> Dict[str, NumericSymbol]:
    """σ₂ operatora D*DD*; pierwszy blok niesie część geometryczną"""
    h1, c_xi, c6, z = point.h1, point.c_xi, point.c6, point.nodes
    norm2 = point.norm2
    d3 = ((c_xi @ point.c_prime @ c6).scaled(h1)
          - c_xi.scaled(5 * h1 * z)
          - c6.scaled(norm2).scaled(0.25 * h1))
    if fam is OperatorFamily.DIRAC:
        alpha = point.twisted('sigmaF') - point.twisted('PhiStar')
        return {
            'D3': d3,
            'alpha': alpha.scaled(norm2),
            'Phi': (c_xi @ point.twisted('Phi') @ c_xi).scaled(-2),
            'PhiStar': point.twisted('PhiStar').scaled(norm2).scaled(-2),
        }
    vartheta_star = point.twisted('sigmaFe') - point.twisted('wStar', hat=True).scaled(0.5)
    return {
        'D3': d3,
        'p': point.constant(_m_matrix(point)).scaled(norm2),
        'vartheta': vartheta_star.scaled(norm2),
        'w': c_xi @ point.twisted('w') @ c_xi - point.twisted('wStar').scaled(norm2),
    }


def _first_order_inverse(fam: OperatorFamily, point: _Point, order: int) -> Dict[str, NumericSymbol]:
    """σ₋₁ albo bloki σ₋₂ z rekurencji: q₋₂ = -q₋₁[σ₀q₋₁ + ∂ξₙσ₁·Dₓₙq₋₁]"""
    q1 = point.c_xi.scaled(1j).inverse()
    if order == -1:
        return {'': q1}
    q1_x0 = q1.at_x0()
    parts = {}
    for index, (name, sigma0) in enumerate(_sigma0_parts(fam, point).items()):
        inner = sigma0 @ q1_x0
        if index == 0:
            inner = inner + point.c6.scaled(1j) @ q1.x_derivative().scaled(-1j)
        parts[name] = -(q1_x0 @ inner)
    return parts


def _cubed_inverse(fam: OperatorFamily, point: _Point, order: int) -> Dict[str, NumericSymbol]:
    """q₋₃ albo bloki q₋₄ z rekurencji: q₋₄ = -q₋₃[p₂q₋₃ + ∂ξₙp₃·Dₓₙq₋₃]"""
    q3 = point.c_xi.scaled(point.norm2).scaled(1j).inverse()
    if order == -3:
        return {'': q3}
    q3_x0 = q3.at_x0()
    p3_xi = (point.c6.scaled(point.norm2) + point.c_xi.scaled(2 * point.nodes)).scaled(1j).at_x0()
    parts = {}
    for index, (name, p2) in enumerate(_sigma2_parts(fam, point).items()):
        inner = p2.at_x0() @ q3_x0
        if index == 0:
            inner = inner + p3_xi @ q3.x_derivative().scaled(-1j)
        parts[name] = -(q3_x0 @ inner)
    return parts


SymbolSource = Callable[[OperatorFamily, _Point, int], Dict[str, NumericSymbol]]

# Pochodną po xₙ niosą tylko symbole liczone wprost z odwrotności
X_DIFFERENTIABLE_ORDERS = (-1, -3)


def _select(source: SymbolSource, fam: OperatorFamily, point: _Point, order: int,
            part: Optional[str], x_order: int) -> NumericSymbol:
    if x_order > 1 or (x_order and order not in X_DIFFERENTIABLE_ORDERS):
        raise OracleFailureError(f"∂xₙ^{x_order} symbolu rzędu {order} poza zakresem wyroczni")
    parts = source(fam, point, order)
    if part is not None:
        if part not in parts:
            raise OracleFailureError(f"Nieznany blok {part!r} symbolu rzędu {order}")
        symbol = parts[part]
    else:
        symbol = NumericSymbol()
        for value in parts.values():
            symbol = symbol + value
    return symbol.x_derivative() if x_order else symbol.at_x0()


# =====================================================================
# π⁺, POCHODNE PO ξₙ, ŚLAD
# =====================================================================

@lru_cache(maxsize=None)
def _contour(center: complex) -> Tuple[np.ndarray, np.ndarray]:
    """(węzły, przesunięcia względem środka) trapezów na okręgu wokół `center`"""
    angles = 2 * math.pi * np.arange(CONTOUR_NODES) / CONTOUR_NODES
    offsets = CONTOUR_RADIUS * np.exp(1j * angles)
    return center + offsets, offsets


def cauchy_weights(nodes: np.ndarray, offsets: np.ndarray, xi: float, order: int) -> np.ndarray:
    """
    Wagi ∂ξₙ^order części o biegunach wewnątrz okręgu, w punkcie rzeczywistym ξ.

    Dla f zanikającego w ∞: P f(ξ) = -Res[f(z)/(z - ξ)] w biegunie, stąd
    ∂ᵏ P f(ξ) ≈ -(k!/N) Σₘ f(zₘ)·(zₘ - c)/(zₘ - ξ)^(k+1).
    """
    return -math.factorial(order) / CONTOUR_NODES * offsets / (nodes - xi) ** (order + 1)


def _broadcast(symbol: NumericSymbol, size: int) -> NumericSymbol:
    return NumericSymbol({key: np.broadcast_to(value, (size,) + value.shape[-2:])
                          for key, value in symbol.parts.items()})


def _trace_pairs(first: NumericSymbol, second: NumericSymbol, dimf: int) -> np.ndarray:
    """Tablica tr[f(zₘ)·g(z'ₖ)] po reprezentacji ⊗ F"""
    table = 0
    for (_, e1), a in first.parts.items():
        for (_, e2), b in second.parts.items():
            if e1 + e2 > 1:
                raise OracleFailureError("Iloczyn dwóch endomorfizmów: ślad się nie rozkłada")
            size = a.shape[-1] * a.shape[-1]
            # tr(AB) = Σᵢⱼ Aᵢⱼ Bⱼᵢ
            pairs = a.reshape(a.shape[0], size) @ b.transpose(0, 2, 1).reshape(b.shape[0], size).T
            table = table + (dimf if e1 + e2 == 0 else 1) * pairs
    return table


@dataclass
class _TraceTable:
    """∫_{S⁴} tr[f(ξ', zₘ)·g(ξ', z'ₖ)] dσ wraz z węzłami obu czynników"""
    table: np.ndarray
    first_nodes: Tuple[np.ndarray, np.ndarray]
    second_nodes: Tuple[np.ndarray, np.ndarray]

    def integrand(self, first_order: int, second_order: int) -> Callable[[float], complex]:
        def at(xi: float) -> complex:
            left = cauchy_weights(*self.first_nodes, xi, first_order)
            right = cauchy_weights(*self.second_nodes, xi, second_order)
            return complex(left @ self.table @ right)
        return at


def trace_table(case: BoundaryCase, fam: OperatorFamily, values: Mapping[str, float],
                first_part: Optional[str] = None,
                second_part: Optional[str] = None) -> _TraceTable:
    """
    Pierwszy czynnik w węzłach wokół +i (π⁺ zatrzymuje tylko ten biegun),
    drugi wokół +i i -i (zanika w ∞, więc jest sumą obu części).
    """
    gens = _generators(fam.trace_rep)
    plus = _contour(1j)
    minus = _contour(-1j)
    second_nodes = (np.concatenate([plus[0], minus[0]]), np.concatenate([plus[1], minus[1]]))
    dimf = values['DIMF']
    points, weights = sphere_rule()
    table = np.zeros((len(plus[0]), len(second_nodes[0])), dtype=np.complex128)
    for xi_prime, weight in zip(points, weights):
        first = _select(_first_order_inverse, fam, _Point(gens, values, xi_prime, plus[0]),
                        case.r, first_part, case.j)
        second = _select(_cubed_inverse, fam, _Point(gens, values, xi_prime, second_nodes[0]),
                         case.ell, second_part, case.k)
        table += weight * _trace_pairs(_broadcast(first, len(plus[0])),
                                       _broadcast(second, len(second_nodes[0])), dimf)
    return _TraceTable(table * values['OMEGA4'], plus, second_nodes)


# =====================================================================
# CAŁKA PO PROSTEJ
# =====================================================================

def _quad_part(fn: Callable[[float], float], scale: float) -> Tuple[float, float]:
    half = math.pi / 2
    result = quad(fn, -half, half, epsabs=max(QUAD_ABS_TOLERANCE, 1e-13 * scale),
                  epsrel=QUAD_REL_TOLERANCE, limit=QUAD_LIMIT, full_output=1)
    value, error = result[0], result[1]
    if len(result) > 3:
        logger.debug(f"quad: {result[3]} (błąd {error:.3g})")
    return value, error


def quad_line(integrand: Callable[[float], complex]) -> complex:
    """
    ∫_R f(ξ) dξ przez ξ = tg θ, θ ∈ (-π/2, π/2); części rzeczywista i urojona osobno.

    Ostrzeżenie quad o zaokrągleniach jest akceptowane, gdy oszacowany błąd
    mieści się w tolerancji wyroczni (zerowa część rzeczywista lub urojona).
    """
    cache: Dict[float, complex] = {}

    def substituted(theta: float) -> complex:
        if theta not in cache:
            cache[theta] = integrand(math.tan(theta)) / math.cos(theta) ** 2
        return cache[theta]

    samples = np.linspace(-1.5, 1.5, 7)
    scale = max(abs(substituted(float(theta))) for theta in samples)
    real, real_error = _quad_part(lambda t: substituted(t).real, scale)
    imag, imag_error = _quad_part(lambda t: substituted(t).imag, scale)
    value = complex(real, imag)
    if not all(map(math.isfinite, (real, imag, real_error, imag_error))):
        raise OracleFailureError("Kwadratura dała wartość nieskończoną")
    if real_error + imag_error > 0.1 * ORACLE_REL_TOLERANCE * max(1.0, abs(value)):
        raise OracleFailureError(
            f"Kwadratura nie zbiegła: błąd {real_error + imag_error:.3g} przy wartości {abs(value):.6g}")
    return value


def numeric_oracle(case: BoundaryCase, fam: OperatorFamily, assignment: OracleAssignment,
                   first_part: Optional[str] = None,
                   second_part: Optional[str] = None) -> complex:
    """Wartość liczbowa przypadku (albo bloku) przy danym przypisaniu"""
    if case.alpha_order:
        # w x₀ symbole nie zależą od x', więc ∂x'σ_ℓ = 0
        logger.debug(f"[{fam.value}] oracle {case.case_id}: ∂x' znika")
        return 0j
    try:
        table = trace_table(case, fam, assignment.values, first_part, second_part)
    except KeyError as e:
        raise OracleFailureError(f"Brak wartości symbolu: {e}") from e
    value = quad_line(table.integrand(case.k, case.j + 1)) * complex(case.prefactor)
    logger.debug(f"[{fam.value}] oracle {case.case_id} (seed {assignment.seed}): {value:.10g}")
    return value
