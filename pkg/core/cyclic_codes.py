# core/cyclic_codes.py
"""
Cyclic and BCH codes over a tower subfield GF(q).

Coordinate j of every codeword is the point γ^j, where γ is the fixed
primitive n-th root of unity of the ambient field (γ = β from the norm-one
group when n = q + 1). A code is identified by its cyclicity-defining set E:
the lifted codewords are exactly (Σ_{e∈E} a_e γ^{je})_j, so membership means
c(γ^{-i}) = 0 for every i outside E.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from typing import FrozenSet, Iterable, List, Optional

import galois
import numpy as np

from core import cyclotomy
from core.errors import ParameterError, VerificationFailure
from core.field_tower import (
    FieldTower,
    Subfield,
    build_tower,
    frobenius,
    prime_power,
    relative_trace,
)
from core.poly_ring import minimal_polynomial, poly_divmod, poly_lcm, reciprocal

logger = logging.getLogger(__name__)


# ---------- Code type ----------

@dataclass(frozen=True, eq=False)
class CyclicCode:
    """Length-n cyclic code over GF(q), q a subfield of the ambient tower"""
    tower: FieldTower
    q: int
    n: int
    defining_set: FrozenSet[int]
    generator: galois.Poly
    gamma: "galois.FieldArray"
    delta: Optional[int] = None
    h: Optional[int] = None

    @property
    def dimension(self) -> int:
        return len(self.defining_set)

    @property
    def scalar_field(self) -> Subfield:
        return self.tower.subfield_of_order(self.q)

    @cached_property
    def check_exponents(self) -> List[int]:
        """Exponents s with c(γ^s) = 0 for every codeword c"""
        return sorted(cyclotomy.complement(cyclotomy.negate(self.defining_set, self.n), self.n))

    @cached_property
    def points(self):
        """Coordinate labels γ^0..γ^{n-1}"""
        return self.gamma ** np.arange(self.n)

    @cached_property
    def point_index(self) -> dict:
        return {int(u): j for j, u in enumerate(self.points)}

    @cached_property
    def root_matrix(self):
        """Rows (γ^{s j})_j for s in check_exponents"""
        s = np.array(self.check_exponents, dtype=np.int64)
        j = np.arange(self.n, dtype=np.int64)
        return self.gamma ** ((s[:, np.newaxis] * j[np.newaxis, :]) % self.n)

    @cached_property
    def generator_matrix(self):
        """k shifts of g(x), one per row"""
        GF = self.tower.GF
        k = self.dimension
        G = GF.Zeros((k, self.n))
        g = self.generator.coefficients(order="asc")
        for i in range(k):
            G[i, i:i + len(g)] = g
        return G

    @property
    def check_polynomial(self) -> galois.Poly:
        quotient, remainder = poly_divmod(_x_n_minus_1(self.tower.GF, self.n), self.generator)
        assert remainder == 0
        return quotient

    def same_code(self, other: "CyclicCode") -> bool:
        return (
            self.q == other.q
            and self.n == other.n
            and self.defining_set == other.defining_set
            and self.generator == other.generator
        )


def _x_n_minus_1(GF, n: int) -> galois.Poly:
    return galois.Poly.Degrees([n, 0], coeffs=GF([1, int(-GF(1))]), field=GF)


def _root_of_unity(tower: FieldTower, n: int):
    if (tower.order - 1) % n != 0:
        raise ParameterError(f"GF({tower.order}) has no primitive {n}-th root of unity")
    gamma = tower.GF.primitive_element ** ((tower.order - 1) // n)
    return gamma


def tower_for_length(q: int, n: int) -> FieldTower:
    """Ambient field GF(q^ord_n(q)) holding the n-th roots of unity"""
    p, k = prime_power(q)
    return build_tower(p, k * cyclotomy.multiplicative_order(q, n))


def _check_length(q: int, n: int) -> None:
    p, _ = prime_power(q)
    if n < 1 or n % p == 0:
        raise ParameterError(f"length n={n} must be coprime to q={q}")


# ---------- Constructors ----------

def cyclic_code(
    q: int,
    n: int,
    defining_set: Iterable[int],
    tower: Optional[FieldTower] = None,
) -> CyclicCode:
    """Cyclic code with the given q-invariant cyclicity-defining set"""
    _check_length(q, n)
    E = frozenset(e % n for e in defining_set)
    if not cyclotomy.is_invariant(E, q, n):
        raise ParameterError(f"defining set {sorted(E)} is not {q}-invariant modulo {n}")
    tower = tower or tower_for_length(q, n)
    gamma = _root_of_unity(tower, n)

    roots_exp = sorted(cyclotomy.complement(cyclotomy.negate(E, n), n))
    if roots_exp:
        generator = galois.Poly.Roots(gamma ** np.array(roots_exp), field=tower.GF)
    else:
        generator = galois.Poly.One(field=tower.GF)
    if not tower.subfield_of_order(q).contains(generator.coeffs):
        raise VerificationFailure("generator polynomial has coefficients outside GF(q)")
    return CyclicCode(tower=tower, q=q, n=n, defining_set=E, generator=generator, gamma=gamma)


def bch(q: int, n: int, delta: int, h: int = 1, tower: Optional[FieldTower] = None) -> CyclicCode:
    """C_(q,n,δ,h): generator lcm{M_{γ^h}, ..., M_{γ^{h+δ-2}}}"""
    _check_length(q, n)
    if not 2 <= delta <= n:
        raise ParameterError(f"designed distance must satisfy 2 <= δ <= n, got δ={delta}")
    tower = tower or tower_for_length(q, n)
    gamma = _root_of_unity(tower, n)
    sub = tower.subfield_of_order(q)

    minimal_polys = [minimal_polynomial(gamma ** (h + i), sub) for i in range(delta - 1)]
    generator = reduce(poly_lcm, minimal_polys)

    defining_set = defining_set_from_generator(generator, gamma, n)
    code = CyclicCode(
        tower=tower, q=q, n=n, defining_set=frozenset(defining_set),
        generator=generator, gamma=gamma, delta=delta, h=h,
    )
    if generator.degree != n - code.dimension:
        raise VerificationFailure("deg g != n - |E|")
    logger.debug("bch(q=%d, n=%d, δ=%d, h=%d): k=%d", q, n, delta, h, code.dimension)
    return code


@lru_cache(maxsize=None)
def antiprimitive_bch(q: int, delta: int) -> CyclicCode:
    """Narrow-sense BCH code of length q+1 over GF(q)"""
    return bch(q, q + 1, delta, 1)


def defining_set_from_generator(generator: galois.Poly, gamma, n: int) -> List[int]:
    """E = Z_n \\ (-Z), Z the exponents s with g(γ^s) = 0"""
    values = generator(gamma ** np.arange(n))
    roots = {int(s) for s in np.nonzero(values == 0)[0]}
    return sorted(cyclotomy.complement(cyclotomy.negate(roots, n), n))


def dual(C: CyclicCode) -> CyclicCode:
    """Generator of the dual: monic reciprocal of h(x) = (x^n - 1)/g(x)"""
    generator = reciprocal(C.check_polynomial)
    E = defining_set_from_generator(generator, C.gamma, C.n)
    expected = cyclotomy.complement(cyclotomy.negate(C.defining_set, C.n), C.n)
    if set(E) != expected:
        raise VerificationFailure("dual defining set is not the negated complement of E")
    return CyclicCode(
        tower=C.tower, q=C.q, n=C.n, defining_set=frozenset(E),
        generator=generator, gamma=C.gamma,
    )


def lift(C: CyclicCode, ell: int) -> CyclicCode:
    """GF(q^ell) ⊗ C: same E, same generator, scalars extended"""
    if ell < 1:
        raise ParameterError(f"lift degree must be positive, got {ell}")
    if ell == 1:
        return C
    big = C.q ** ell
    C.tower.subfield_of_order(big)  # raises when the ambient field is too small
    return CyclicCode(
        tower=C.tower, q=big, n=C.n, defining_set=C.defining_set,
        generator=C.generator, gamma=C.gamma, delta=C.delta, h=C.h,
    )


# ---------- Membership ----------

def _as_vector(C: CyclicCode, w):
    GF = C.tower.GF
    if not isinstance(w, GF):
        w = GF(np.asarray(w, dtype=np.int64))
    return w


def contains(C: CyclicCode, w) -> bool:
    w = _as_vector(C, w)
    if w.shape[-1] != C.n:
        raise ParameterError(f"word has length {w.shape[-1]}, code has length {C.n}")
    if not C.scalar_field.contains(w):
        return False
    if not C.check_exponents:
        return True
    return bool(np.all(C.root_matrix @ w == 0))


def contains_rows(C: CyclicCode, W) -> np.ndarray:
    """Vectorized membership for a matrix of candidate words (one per row)"""
    W = _as_vector(C, W)
    if W.shape[-1] != C.n:
        raise ParameterError(f"words have length {W.shape[-1]}, code has length {C.n}")
    in_field = np.all(frobenius(W, C.scalar_field.sub_degree) == W, axis=1)
    if not C.check_exponents:
        return in_field
    syndromes = W @ C.root_matrix.T
    return in_field & np.all(syndromes == 0, axis=1)


def weight(w) -> int:
    return int(np.count_nonzero(np.asarray(w) != 0))


# ---------- Trace representation of the dual BCH code ----------

def trace_codewords(q: int, delta: int, A, tower: Optional[FieldTower] = None):
    """
    Rows (Tr_{q²/q}(Σ_{i=1}^{δ-1} a_i u^i))_{u=β^0..β^q} for each row a of A.
    A has shape (N, δ-1) over GF(q²).
    """
    tower = tower or tower_for_length(q, q + 1)
    beta = _root_of_unity(tower, q + 1)
    exponents = np.arange(1, delta)[:, np.newaxis] * np.arange(q + 1)[np.newaxis, :]
    powers = beta ** (exponents % (q + 1))
    return relative_trace(A @ powers, q * q, q)


def trace_codeword(q: int, delta: int, a, tower: Optional[FieldTower] = None):
    """Single trace codeword; asserted to lie in the dual of bch(q, q+1, δ, 1)"""
    tower = tower or tower_for_length(q, q + 1)
    a = tower.GF(np.asarray(a, dtype=np.int64)) if not isinstance(a, tower.GF) else a
    if len(a) != delta - 1:
        raise ParameterError(f"expected {delta - 1} coefficients, got {len(a)}")
    if not tower.subfield_of_order(q * q).contains(a):
        raise ParameterError("trace coefficients must lie in GF(q²)")
    word = trace_codewords(q, delta, a[np.newaxis, :], tower)[0]
    if not contains(dual(antiprimitive_bch(q, delta)), word):
        raise VerificationFailure("trace codeword is not in the dual BCH code")
    return word


# ---------- Linear algebra helpers ----------

def rank(M) -> int:
    if M.shape[0] == 0 or M.shape[1] == 0:
        return 0
    return int(np.linalg.matrix_rank(M))


def row_spaces_equal(A, B) -> bool:
    ra, rb = rank(A), rank(B)
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank(np.vstack((A, B))) == ra


def dual_basis(G):
    """Rows spanning {x : G x = 0}"""
    return G.null_space()


def expand_over_subfield(M, theta, q: int):
    """
    Rewrite each GF(q²) row z as two GF(q) rows (z0, z1) with z = z0 + z1·θ,
    so that z·x = 0 for x over GF(q) iff z0·x = 0 and z1·x = 0.
    """
    theta_bar = theta ** q
    z1 = (M - M ** q) / (theta - theta_bar)
    z0 = M - z1 * theta
    return np.vstack((z0, z1))


# ---------- LCD and scaled codes ----------

def is_lcd(C: CyclicCode) -> bool:
    """C ∩ C^⊥ = {0}, via rank of the stacked generator matrices"""
    D = dual(C)
    if C.dimension == 0 or D.dimension == 0:
        return True
    return rank(np.vstack((C.generator_matrix, D.generator_matrix))) == C.n


@dataclass(frozen=True, eq=False)
class ScaledCode:
    """a·C = {(a_j c_j)_j : c ∈ C}"""
    base: CyclicCode
    scales: "galois.FieldArray"

    @property
    def generator_matrix(self):
        return self.base.generator_matrix * self.scales[np.newaxis, :]


def scale(a, C: CyclicCode) -> ScaledCode:
    a = _as_vector(C, a)
    if len(a) != C.n:
        raise ParameterError(f"expected {C.n} scale entries, got {len(a)}")
    if np.any(a == 0):
        raise ParameterError("scale entries must be nonzero")
    if not C.scalar_field.contains(a):
        raise ParameterError("scale entries must lie in GF(q)")
    return ScaledCode(base=C, scales=a)


def scaled_dual_identity_holds(a, C: CyclicCode) -> bool:
    """(a·C)^⊥ = a^{-1}·C^⊥, checked by row-space equality of generator matrices"""
    scaled = scale(a, C)
    if C.dimension == 0:
        return True
    left = dual_basis(scaled.generator_matrix)
    D = dual(C)
    right = scale(scaled.scales ** -1, D).generator_matrix
    if D.dimension == 0:
        return left.shape[0] == 0
    return row_spaces_equal(left, right)
