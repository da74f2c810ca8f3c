"""
Clifford Algebra - Słowa Clifforda i ślady
==========================================

Algebra generowana przez c(ẽ₁..ẽ₆), ĉ(ẽ₁..ẽ₆) oraz symbole endomorfizmów F:

    c(ẽᵢ)² = -1, ĉ(ẽᵢ)² = +1, różne generatory antykomutują,
    c(ẽᵢ)ĉ(ẽⱼ) = -ĉ(ẽⱼ)c(ẽᵢ) dla wszystkich i, j.

Endomorfizmy (ENDO) działają na czynniku F: komutują z c/ĉ, ale nie ze sobą.
Ślady: spinorowy (wymiar 8) i zewnętrzny (wymiar 64, przez jawne macierze).

Słowo c/ĉ trzymamy jako maskę bitową: bity 0-5 to c(ẽ₁..ẽ₆), bity 6-11 to
ĉ(ẽ₁..ẽ₆). Posortowana maska = postać normalna.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Dict, Iterable, Optional, Tuple

import numpy as np

from coeff_ring import (ENDO_FAMILIES, GaussianRational, Scalar,
                        trace2_symbol_name, trace_symbol_name)

logger = logging.getLogger(__name__)

DIMENSION = 6
SPIN_DIM = 8
EXTERIOR_DIM = 2 ** DIMENSION
MAX_ENDO_DEPTH = 2

_C_MASK = (1 << DIMENSION) - 1


class CliffordError(Exception):
    """Błąd warstwy algebry Clifforda"""


class UnsupportedEndomorphismDepthError(CliffordError):
    """Słowo endomorfizmów dłuższe niż 2"""


class WrongRepresentationError(CliffordError):
    """ĉ w śladzie spinorowym"""


class UnsupportedRepresentationError(CliffordError):
    """Para (generator, reprezentacja) bez macierzy"""


class GeneratorKind(Enum):
    C = 'C'
    CHAT = 'CHAT'
    ENDO = 'ENDO'


@dataclass(frozen=True)
class Generator:
    """Pojedynczy generator: c(ẽⱼ), ĉ(ẽⱼ) albo endomorfizm fam(eⱼ)"""
    kind: GeneratorKind
    index: int
    endo_family: Optional[str] = None

    def __post_init__(self):
        if not 1 <= self.index <= DIMENSION:
            raise ValueError(f"Indeks generatora poza 1..{DIMENSION}: {self.index}")
        if self.kind is GeneratorKind.ENDO and self.endo_family not in ENDO_FAMILIES:
            raise ValueError(f"Nieznana rodzina endomorfizmów: {self.endo_family}")

    @property
    def bit(self) -> int:
        if self.kind is GeneratorKind.C:
            return self.index - 1
        if self.kind is GeneratorKind.CHAT:
            return DIMENSION + self.index - 1
        raise ValueError("ENDO nie ma bitu w słowie Clifforda")


def C(index: int) -> Generator:
    return Generator(GeneratorKind.C, index)


def CHAT(index: int) -> Generator:
    return Generator(GeneratorKind.CHAT, index)


def ENDO(family: str, index: int) -> Generator:
    return Generator(GeneratorKind.ENDO, index, family)


@lru_cache(maxsize=None)
def blade_product(first: int, second: int) -> Tuple[int, int]:
    """(znak, maska) iloczynu dwóch posortowanych słów"""
    swaps = 0
    for bit in range(2 * DIMENSION):
        if second >> bit & 1:
            swaps += bin(first >> (bit + 1)).count('1')
    sign = -1 if swaps % 2 else 1
    # wspólne c(ẽᵢ) dają -1, wspólne ĉ(ẽᵢ) dają +1
    if bin(first & second & _C_MASK).count('1') % 2:
        sign = -sign
    return sign, first ^ second


Key = Tuple[int, Tuple[Tuple[str, int], ...]]


class CliffordElement:
    """
    Kombinacja liniowa {(maska c/ĉ, słowo ENDO) -> Scalar}.
    Niemutowalna; operacje zwracają nowe elementy.
    """

    __slots__ = ('terms',)

    def __init__(self, terms: Optional[Dict[Key, Scalar]] = None):
        self.terms: Dict[Key, Scalar] = {
            key: coeff for key, coeff in (terms or {}).items() if not coeff.is_zero()
        }

    # --- konstruktory -------------------------------------------------

    @classmethod
    def scalar(cls, value) -> 'CliffordElement':
        coeff = value if isinstance(value, Scalar) else Scalar.constant(value)
        return cls({(0, ()): coeff})

    @classmethod
    def identity(cls) -> 'CliffordElement':
        return cls.scalar(1)

    @classmethod
    def zero(cls) -> 'CliffordElement':
        return cls()

    @classmethod
    def generator(cls, g: Generator) -> 'CliffordElement':
        if g.kind is GeneratorKind.ENDO:
            return cls({(0, ((g.endo_family, g.index),)): Scalar.constant(1)})
        return cls({(1 << g.bit, ()): Scalar.constant(1)})

    @classmethod
    def c(cls, index: int) -> 'CliffordElement':
        return cls.generator(C(index))

    @classmethod
    def chat(cls, index: int) -> 'CliffordElement':
        return cls.generator(CHAT(index))

    @classmethod
    def endo(cls, family: str, index: int) -> 'CliffordElement':
        return cls.generator(ENDO(family, index))

    # --- arytmetyka ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms[key] + coeff if key in terms else coeff
        return CliffordElement(terms)

    def __neg__(self):
        return CliffordElement({key: -coeff for key, coeff in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Scalar, GaussianRational, int, Fraction)):
            return CliffordElement({key: coeff * other for key, coeff in self.terms.items()})
        if not isinstance(other, CliffordElement):
            return NotImplemented
        terms: Dict[Key, Scalar] = {}
        for (mask1, endo1), coeff1 in self.terms.items():
            for (mask2, endo2), coeff2 in other.terms.items():
                endo = endo1 + endo2
                if len(endo) > MAX_ENDO_DEPTH:
                    raise UnsupportedEndomorphismDepthError(
                        f"Słowo endomorfizmów długości {len(endo)}: {endo}")
                sign, mask = blade_product(mask1, mask2)
                product = coeff1 * coeff2
                if sign < 0:
                    product = -product
                key = (mask, endo)
                terms[key] = terms[key] + product if key in terms else product
        return CliffordElement(terms)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, GaussianRational, int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def map_scalars(self, fn: Callable[[Scalar], Scalar]) -> 'CliffordElement':
        return CliffordElement({key: fn(coeff) for key, coeff in self.terms.items()})

    def __repr__(self):
        parts = [f"[{coeff.render()}]{_render_key(key)}" for key, coeff in self.terms.items()]
        return 'CliffordElement(' + (' + '.join(parts) or '0') + ')'


def _render_key(key: Key) -> str:
    mask, endo = key
    names = [f"c{i + 1}" for i in range(DIMENSION) if mask >> i & 1]
    names += [f"ĉ{i + 1}" for i in range(DIMENSION) if mask >> (DIMENSION + i) & 1]
    names += [f"{fam}({j})" for fam, j in endo]
    return '·' + '·'.join(names) if names else ''


def normal_form(word: Iterable[Generator], coeff: Optional[Scalar] = None) -> CliffordElement:
    """Redukuje surowe słowo generatorów do postaci normalnej"""
    result = CliffordElement.scalar(coeff if coeff is not None else Scalar.constant(1))
    for g in word:
        result = result * CliffordElement.generator(g)
    return result


def c_xi_prime() -> CliffordElement:
    """c(ξ') = Σ_{j<6} ξⱼ c(ẽⱼ)"""
    result = CliffordElement.zero()
    for j in range(1, DIMENSION):
        result = result + CliffordElement.c(j) * Scalar.symbol(f'XI_{j}')
    return result


# =====================================================================
# ŚLADY
# =====================================================================

def endo_trace(endo: Tuple[Tuple[str, int], ...]) -> Scalar:
    """tr_F słowa endomorfizmów: puste -> DIMF, jedno -> T, dwa -> T2"""
    if not endo:
        return Scalar.symbol('DIMF')
    if len(endo) == 1:
        family, index = endo[0]
        return Scalar.symbol(trace_symbol_name(family, index))
    return Scalar.symbol(trace2_symbol_name(endo[0], endo[1]))


def trace_spin(e: CliffordElement) -> Scalar:
    """Ślad po S(TM)⊗F: tylko słowo puste przeżywa, z czynnikiem 8"""
    total = Scalar()
    for (mask, endo), coeff in e.terms.items():
        if mask >> DIMENSION:
            raise WrongRepresentationError("ĉ(ẽⱼ) nie działa na spinorach")
        if mask == 0:
            total = total + coeff * endo_trace(endo) * SPIN_DIM
    return total


def trace_ext(e: CliffordElement) -> Scalar:
    """Ślad po ∧*(T*M)⊗F przez jawne macierze 64×64"""
    total = Scalar()
    for (mask, endo), coeff in e.terms.items():
        value = blade_trace_exterior(mask)
        if value:
            total = total + coeff * endo_trace(endo) * value
    return total


TRACES = {
    'spin': trace_spin,
    'exterior': trace_ext,
}


def get_trace(rep: str) -> Callable[[CliffordElement], Scalar]:
    try:
        return TRACES[rep]
    except KeyError:
        raise UnsupportedRepresentationError(f"Nieznana reprezentacja: {rep}") from None


# =====================================================================
# MACIERZE REPREZENTACJI
# =====================================================================

@lru_cache(maxsize=None)
def _spin_generators() -> Tuple[np.ndarray, ...]:
    # γ-macierze z iloczynów Pauliego; c = i·γ, więc c² = -1
    sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sy = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    sz = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    id2 = np.eye(2, dtype=np.complex128)
    gammas = (
        np.kron(np.kron(sx, id2), id2),
        np.kron(np.kron(sy, id2), id2),
        np.kron(np.kron(sz, sx), id2),
        np.kron(np.kron(sz, sy), id2),
        np.kron(np.kron(sz, sz), sx),
        np.kron(np.kron(sz, sz), sy),
    )
    matrices = tuple(1j * gamma for gamma in gammas)
    for matrix in matrices:
        matrix.setflags(write=False)
    return matrices


@lru_cache(maxsize=None)
def exterior_operators() -> Tuple[Tuple[np.ndarray, ...], Tuple[np.ndarray, ...]]:
    """(ε(ẽⱼ*), ι(ẽⱼ*)) dla j = 1..6 w bazie podzbiorów {1..6} (maski bitowe)"""
    eps = [np.zeros((EXTERIOR_DIM, EXTERIOR_DIM), dtype=np.int64) for _ in range(DIMENSION)]
    iota = [np.zeros((EXTERIOR_DIM, EXTERIOR_DIM), dtype=np.int64) for _ in range(DIMENSION)]
    for basis in range(EXTERIOR_DIM):
        for j in range(DIMENSION):
            sign = -1 if bin(basis & ((1 << j) - 1)).count('1') % 2 else 1
            if basis >> j & 1:
                iota[j][basis ^ (1 << j), basis] = sign
            else:
                eps[j][basis | (1 << j), basis] = sign
    for matrix in eps + iota:
        matrix.setflags(write=False)
    return tuple(eps), tuple(iota)


def rep_matrix(g: Generator, rep: str) -> np.ndarray:
    """Macierz generatora w reprezentacji 'spin' (8×8) lub 'exterior' (64×64)"""
    if rep == 'spin':
        if g.kind is not GeneratorKind.C:
            raise UnsupportedRepresentationError(f"{g.kind.value} nie ma macierzy spinorowej")
        return _spin_generators()[g.index - 1]
    if rep == 'exterior':
        eps, iota = exterior_operators()
        if g.kind is GeneratorKind.C:
            return eps[g.index - 1] - iota[g.index - 1]
        if g.kind is GeneratorKind.CHAT:
            return eps[g.index - 1] + iota[g.index - 1]
        raise UnsupportedRepresentationError("ENDO działa na F, nie na ∧*(T*M)")
    raise UnsupportedRepresentationError(f"Nieznana reprezentacja: {rep}")


def mask_generators(mask: int) -> Tuple[Generator, ...]:
    """Generatory posortowanego słowa zakodowanego maską"""
    word = [C(i + 1) for i in range(DIMENSION) if mask >> i & 1]
    word += [CHAT(i + 1) for i in range(DIMENSION) if mask >> (DIMENSION + i) & 1]
    return tuple(word)


@lru_cache(maxsize=None)
def blade_matrix(mask: int, rep: str) -> np.ndarray:
    size = SPIN_DIM if rep == 'spin' else EXTERIOR_DIM
    dtype = np.complex128 if rep == 'spin' else np.int64
    matrix = np.eye(size, dtype=dtype)
    for g in mask_generators(mask):
        matrix = matrix @ rep_matrix(g, rep)
    matrix.setflags(write=False)
    return matrix


@lru_cache(maxsize=None)
def blade_trace_exterior(mask: int) -> int:
    return int(np.trace(blade_matrix(mask, 'exterior')))


# =====================================================================
# b₆,ₘ
# =====================================================================

def b6m(m: int) -> int:
    """Ślad po ∧ᵐ iloczynu [ε₁ι₁ - ι₁ε₁][ε₆ι₆ - ι₆ε₆], liczony z macierzy"""
    eps, iota = exterior_operators()
    first = eps[0] @ iota[0] - iota[0] @ eps[0]
    last = eps[5] @ iota[5] - iota[5] @ eps[5]
    product = first @ last
    return int(sum(product[basis, basis] for basis in range(EXTERIOR_DIM)
                   if bin(basis).count('1') == m))


def _safe_comb(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def b6m_formula(m: int) -> int:
    """C(4, m-2) + C(4, m) - 2·C(4, m-1)"""
    return _safe_comb(4, m - 2) + _safe_comb(4, m) - 2 * _safe_comb(4, m - 1)
