# core/moebius.py
"""
PGL(2, q²) acting on PG(1, q²), its stabilizer of the norm-one group
U_{q+1}, the bridge from PG(1, q) onto U_{q+1}, and the monomial maps and
the ∘ representation that stabilizer elements induce on codes.

Points of a projective line are serialized field elements (ints) or the
INFINITY marker. Group elements are ProjMap, kept scalar-normalized so that
equal elements compare equal.
"""

from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np

from core.cyclic_codes import antiprimitive_bch, contains, dual, trace_codewords
from core.errors import ParameterError, VerificationFailure
from core.field_tower import FieldTower, code_tower, in_norm_one_group, norm_one_group
from core.poly_ring import interpolate_on_Un
from core.schemas import ProjMapModel

logger = logging.getLogger(__name__)


class Infinity(enum.Enum):
    POINT = "∞"

    def __repr__(self) -> str:
        return "∞"


INFINITY = Infinity.POINT
ProjPoint = Union[int, Infinity]


# ---------- Group elements ----------

@dataclass(frozen=True)
class ProjMap:
    """x -> (ax + b)/(cx + d), first nonzero of (a, b, c, d) equal to 1"""
    a: int
    b: int
    c: int
    d: int
    GF: Any = field(compare=False, repr=False, hash=False)

    @classmethod
    def from_matrix(cls, M) -> "ProjMap":
        GF = type(M)
        flat = M.reshape(-1)
        if flat[0] * flat[3] - flat[1] * flat[2] == 0:
            raise ParameterError("matrix is singular")
        lead = flat[np.nonzero(flat != 0)[0][0]]
        a, b, c, d = (int(v) for v in flat / lead)
        return cls(a, b, c, d, GF)

    @classmethod
    def identity(cls, GF) -> "ProjMap":
        return cls(1, 0, 0, 1, GF)

    @property
    def matrix(self):
        return self.GF([[self.a, self.b], [self.c, self.d]])

    def compose(self, other: "ProjMap") -> "ProjMap":
        """self after other"""
        return ProjMap.from_matrix(self.matrix @ other.matrix)

    def inverse(self) -> "ProjMap":
        return ProjMap.from_matrix(np.linalg.inv(self.matrix))

    def to_json(self) -> Dict[str, int]:
        return ProjMapModel(a=self.a, b=self.b, c=self.c, d=self.d).model_dump()


def compose(g1: ProjMap, g2: ProjMap) -> ProjMap:
    return g1.compose(g2)


def _matrix(GF, a, b, c, d):
    """2x2 field matrix from four scalars"""
    return GF([[int(a), int(b)], [int(c), int(d)]])


def _as_matrix(g):
    return g.matrix if isinstance(g, ProjMap) else g


def apply(g: ProjMap, x: ProjPoint) -> ProjPoint:
    """Linear fractional action; -d/c -> ∞ and ∞ -> a/c (∞ when c = 0)"""
    GF = g.GF
    a, b, c, d = GF(g.a), GF(g.b), GF(g.c), GF(g.d)
    if x is INFINITY:
        return INFINITY if c == 0 else int(a / c)
    x = GF(int(x))
    denominator = c * x + d
    if denominator == 0:
        return INFINITY
    return int((a * x + b) / denominator)


def apply_on_points(g, points):
    """Vectorized action on field points that avoid the pole"""
    M = _as_matrix(g)
    return (M[0, 0] * points + M[0, 1]) / (M[1, 0] * points + M[1, 1])


# ---------- Sharp 3-transitivity ----------

def _homogeneous(x: ProjPoint) -> Tuple[int, int]:
    return (1, 0) if x is INFINITY else (int(x), 1)


def sharp_transitivity_witness(GF, a: ProjPoint, b: ProjPoint, c: ProjPoint) -> ProjMap:
    """The unique map taking ∞ to a, 0 to b and 1 to c"""
    if len({a, b, c}) != 3:
        raise ParameterError("the three points must be distinct")
    # columns s·P(a) and t·P(b) with s·P(a) + t·P(b) = P(c)
    (a0, a1), (b0, b1) = _homogeneous(a), _homogeneous(b)
    basis = _matrix(GF, a0, b0, a1, b1)
    s, t = np.linalg.solve(basis, GF(list(_homogeneous(c))))
    solved = ProjMap.from_matrix(basis * GF([int(s), int(t)])[np.newaxis, :])

    if INFINITY not in (a, b, c):
        A, B, C = GF(int(a)), GF(int(b)), GF(int(c))
        closed = ProjMap.from_matrix(_matrix(GF, A * (B - C), B * (C - A), B - C, C - A))
        if closed != solved:
            raise VerificationFailure("closed-form and solved witnesses differ")
    return solved


# ---------- Stabilizer of U_{q+1} ----------

def in_stabilizer(g: ProjMap, q: int) -> bool:
    """g is scalar-equivalent to [[d^q, c^q], [c, d]]"""
    GF = g.GF
    a, b, c, d = GF(g.a), GF(g.b), GF(g.c), GF(g.d)
    mu = a / d ** q if d != 0 else b / c ** q
    return bool(a == mu * d ** q and b == mu * c ** q and in_norm_one_group(mu, q))


def stab_element(tower: FieldTower, q: int, c, d) -> ProjMap:
    GF = tower.GF
    c, d = GF(int(c)), GF(int(d))
    if c ** (q + 1) == d ** (q + 1):
        raise ParameterError("stab_element needs c^(q+1) != d^(q+1)")
    return ProjMap.from_matrix(_matrix(GF, d ** q, c ** q, c, d))


def stab_matrix(tower: FieldTower, q: int, c, d):
    """Raw GL(2, q²) matrix [[d^q, c^q], [c, d]], no normalization"""
    GF = tower.GF
    c, d = GF(int(c)), GF(int(d))
    if c ** (q + 1) == d ** (q + 1):
        raise ParameterError("stab_matrix needs c^(q+1) != d^(q+1)")
    return _matrix(GF, d ** q, c ** q, c, d)


def random_stab_pair(tower: FieldTower, q: int, rng: np.random.Generator) -> Tuple[int, int]:
    GF = tower.GF
    while True:
        c, d = (int(v) for v in rng.integers(0, tower.order, size=2))
        if GF(c) ** (q + 1) != GF(d) ** (q + 1):
            return c, d


def perm_closure(generators: Sequence[np.ndarray], limit: int = 0) -> List[Tuple[int, ...]]:
    """Permutation group generated by `generators`, breadth-first from the identity"""
    n = len(generators[0])
    identity = tuple(range(n))
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    while queue:
        perm = np.array(queue.popleft())
        for gen in generators:
            image = tuple(int(v) for v in gen[perm])
            if image not in seen:
                seen.add(image)
                order.append(image)
                queue.append(image)
                if limit and len(order) > limit:
                    return order
    return order


@dataclass(eq=False)
class StabilizerGroup:
    """Stab_{U_{q+1}} given by verified generators, acting on U_{q+1} = β^0..β^q"""
    tower: FieldTower
    q: int
    generators: Tuple[ProjMap, ...]

    @property
    def full_order(self) -> int:
        return (self.q + 1) * self.q * (self.q - 1)

    @cached_property
    def points(self):
        return norm_one_group(self.tower, self.q)

    @cached_property
    def point_index(self) -> Dict[int, int]:
        return {int(u): j for j, u in enumerate(self.points)}

    def permutation(self, g) -> np.ndarray:
        """perm[j] = index of g(β^j)"""
        images = apply_on_points(g, self.points)
        return np.array([self.point_index[int(u)] for u in images], dtype=np.int64)

    @cached_property
    def generator_permutations(self) -> List[np.ndarray]:
        return [self.permutation(g) for g in self.generators]

    @cached_property
    def permutations(self) -> List[Tuple[int, ...]]:
        return perm_closure(self.generator_permutations)

    @cached_property
    def elements(self) -> List[ProjMap]:
        """Group elements as maps, closure order; the action on U_{q+1} is faithful"""
        GF = self.tower.GF
        identity = ProjMap.identity(GF)
        seen = {tuple(range(self.q + 1)): identity}
        queue = deque([(np.arange(self.q + 1), identity)])
        while queue:
            perm, g = queue.popleft()
            for gen, gen_perm in zip(self.generators, self.generator_permutations):
                image = tuple(int(v) for v in gen_perm[perm])
                if image not in seen:
                    h = gen.compose(g)
                    seen[image] = h
                    queue.append((np.array(image), h))
        return list(seen.values())

    def random_elements(self, rng: np.random.Generator, count: int) -> List[ProjMap]:
        pool = self.elements
        return [pool[int(i)] for i in rng.integers(0, len(pool), size=count)]


def stabilizer_group(q: int) -> StabilizerGroup:
    return _stabilizer_group(int(q))


@lru_cache(maxsize=None)
def _stabilizer_group(q: int) -> StabilizerGroup:
    tower = code_tower(q)
    GF = tower.GF
    rotation = stab_element(tower, q, 0, GF.primitive_element)
    group = StabilizerGroup(tower=tower, q=q, generators=(rotation,))
    rotation_perm = group.generator_permutations[0]

    for t in range(tower.order):
        if GF(t) ** (q + 1) == 1:
            continue
        second = stab_element(tower, q, 1, t)
        perms = [rotation_perm, group.permutation(second)]
        size = len(perm_closure(perms, limit=group.full_order))
        if size == group.full_order:
            logger.debug("stabilizer for q=%d generated with t=%d (order %d)", q, t, size)
            return StabilizerGroup(tower=tower, q=q, generators=(rotation, second))
    raise VerificationFailure(f"no generating pair found for the stabilizer at q={q}")


def is_sharply_3_transitive(perms: Sequence[Tuple[int, ...]], n: int) -> bool:
    """Images of the triple (0, 1, 2) are pairwise distinct and exhaust all ordered triples"""
    if len(perms) != n * (n - 1) * (n - 2):
        return False
    images = {(p[0], p[1], p[2]) for p in perms}
    return len(images) == len(perms)


def ordered_triple_maps(tower: FieldTower, points: Sequence[ProjPoint]) -> set:
    """Witness maps over every ordered triple of distinct points"""
    return {sharp_transitivity_witness(tower.GF, a, b, c) for a, b, c in permutations(points, 3)}


# ---------- Bridge PG(1, q) -> U_{q+1} ----------

@dataclass(frozen=True)
class Bridge:
    """x -> (u0·x + 1)/(x + u0), ∞ -> u0"""
    tower: FieldTower
    q: int
    u0: int

    def __call__(self, x: ProjPoint) -> int:
        GF = self.tower.GF
        u0 = GF(self.u0)
        if x is INFINITY:
            return self.u0
        x = GF(int(x))
        return int((u0 * x + GF(1)) / (x + u0))

    @property
    def matrix(self):
        GF = self.tower.GF
        return GF([[self.u0, 1], [1, self.u0]])


def bridge(q: int, u0: int) -> Bridge:
    tower = code_tower(q)
    GF = tower.GF
    u = GF(int(u0))
    if not in_norm_one_group(u, q):
        raise ParameterError(f"u0={int(u0)} is not in U_{q + 1}")
    if u == 1 or u == -GF(1):
        raise ParameterError("u0 must differ from 1 and -1")
    return Bridge(tower=tower, q=q, u0=int(u0))


# ---------- Monomial maps and the ∘ representation ----------

@dataclass(frozen=True, eq=False)
class MonomialMap:
    """w -> (scales[j] · w[perm[j]])_j"""
    scales: Any
    perm: np.ndarray

    def __post_init__(self):
        if np.any(self.scales == 0):
            raise ParameterError("monomial scales must be nonzero")
        if sorted(self.perm.tolist()) != list(range(len(self.perm))):
            raise ParameterError("perm is not a bijection")

    def __call__(self, w):
        return self.scales * w[..., self.perm]


def monomial_map(delta: int, g: ProjMap, group: StabilizerGroup, dual_side: bool = False) -> MonomialMap:
    """Scale (cu+d)^(∓(q+1)(δ-1)) at u, entry taken from g^{-1}(u)"""
    q = group.q
    if not in_stabilizer(g, q):
        raise ParameterError("g does not stabilize U_{q+1}")
    M = g.inverse().matrix
    exponent = (q + 1) * (delta - 1)
    base = M[1, 0] * group.points + M[1, 1]
    scales = base ** (exponent if dual_side else -exponent)
    if not group.tower.subfield_of_order(q).contains(scales):
        raise VerificationFailure("monomial scales fall outside GF(q)")
    return MonomialMap(scales=scales, perm=group.permutation(M))


def monomial_action(delta: int, g: ProjMap, w, dual_side: bool = False, group: StabilizerGroup | None = None):
    group = group or stabilizer_group(len(w) - 1)
    return monomial_map(delta, g, group, dual_side)(w)


def trace_values(q: int, delta: int, coeffs, tower: FieldTower | None = None):
    """Values of Tr_{q²/q}(Σ_{i=1}^{δ-1} a_i u^i) on U_{q+1}"""
    tower = tower or code_tower(q)
    coeffs = coeffs if isinstance(coeffs, tower.GF) else tower.GF(np.asarray(coeffs, dtype=np.int64))
    return trace_codewords(q, delta, coeffs[np.newaxis, :], tower)[0]


def circ_on_values(delta: int, A, values, group: StabilizerGroup):
    """(A∘f)(u) = (cu+d)^((q+1)(δ-1)) f((au+b)/(cu+d)), [[a,b],[c,d]] = A^{-1} raw"""
    q = group.q
    M = np.linalg.inv(_as_matrix(A))
    scales = (M[1, 0] * group.points + M[1, 1]) ** ((q + 1) * (delta - 1))
    return scales * values[group.permutation(M)]


def circ_action(delta: int, A, f_coeffs, group: StabilizerGroup | None = None):
    """A∘f on U_{q+1}, asserted to stay inside the dual BCH code"""
    group = group or stabilizer_group(_q_from_field(A))
    q = group.q
    values = circ_on_values(delta, A, trace_values(q, delta, f_coeffs, group.tower), group)
    if not contains(dual(antiprimitive_bch(q, delta)), values):
        raise VerificationFailure("A∘f left the trace code")
    return values


def _q_from_field(A) -> int:
    order = type(_as_matrix(A)).order
    return int(round(order ** 0.5))


# ---------- Expansion identities on U_{q+1} ----------

def frac_poly_identity_holds(q: int, c) -> bool:
    """(u - c^q)/(-cu + 1) = Σ_{i=1}^q c^{i-1} u^i on all of U_{q+1}"""
    tower = code_tower(q)
    GF = tower.GF
    c = GF(int(c))
    if c == 0 or in_norm_one_group(c, q):
        raise ParameterError("c must lie in GF(q²)* outside U_{q+1}")
    U = norm_one_group(tower, q)
    left = (U - c ** q) / (-c * U + GF(1))
    powers = U[np.newaxis, :] ** np.arange(1, q + 1)[:, np.newaxis]
    right = (c ** np.arange(q)) @ powers
    return bool(np.all(left == right))


def interpolation_head(q: int, c, e: int):
    """(a_0, a_1) of the expansion of u -> (g u)^e, g = [[1, -c^q], [-c, 1]]^{-1}"""
    tower = code_tower(q)
    GF = tower.GF
    c = GF(int(c))
    if c == 0 or in_norm_one_group(c, q):
        raise ParameterError("c must lie in GF(q²)* outside U_{q+1}")
    g = np.linalg.inv(_matrix(GF, 1, -(c ** q), -c, 1))
    U = norm_one_group(tower, q)
    coeffs = interpolate_on_Un(apply_on_points(g, U) ** e, U)
    return coeffs[0], coeffs[1]
