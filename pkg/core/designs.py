# core/designs.py
"""
Incidence structures: support designs of codes, orbit designs on PG(1, q),
t-design certificates, isomorphism under a given point bijection and the
p-rank of incidence matrices.
"""

from __future__ import annotations

import logging
import math
from collections import Counter, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import galois
import numpy as np

from core.cyclic_codes import CyclicCode
from core.errors import ParameterError, VerificationFailure
from core.field_tower import code_tower, log_base, norm_one_group, prime_power
from core.moebius import INFINITY, ProjMap, ProjPoint, apply, bridge
from core.weight_tools import MAX_MESSAGES, MAX_SUPPORTS, all_codewords, iter_words_of_weight

logger = logging.getLogger(__name__)


# ---------- Types ----------

@dataclass(frozen=True)
class IncidenceStructure:
    """v points, blocks as sorted index tuples in sorted order"""
    v: int
    blocks: Tuple[Tuple[int, ...], ...]
    points: Tuple[object, ...] = ()

    @property
    def block_sizes(self) -> set:
        return {len(b) for b in self.blocks}

    @property
    def k(self) -> Optional[int]:
        sizes = self.block_sizes
        return sizes.pop() if len(sizes) == 1 else None


@dataclass(frozen=True)
class DesignCertificate:
    t: int
    v: int
    k: int
    lambda_: int

    @property
    def steiner(self) -> bool:
        return self.lambda_ == 1 and self.t >= 2

    def describe(self) -> str:
        kind = " Steiner" if self.steiner else ""
        return f"{self.t}-({self.v},{self.k},{self.lambda_}){kind}"


def incidence_structure(v: int, blocks: Iterable[Iterable[int]], points: Sequence = ()) -> IncidenceStructure:
    normalized = {tuple(sorted(int(i) for i in block)) for block in blocks}
    for block in normalized:
        if block and (block[0] < 0 or block[-1] >= v):
            raise ParameterError(f"block {block} leaves the point range [0, {v})")
    return IncidenceStructure(v=v, blocks=tuple(sorted(normalized)), points=tuple(points))


def complete_design(v: int, k: int) -> IncidenceStructure:
    return incidence_structure(v, combinations(range(v), k))


# ---------- Support designs ----------

def support_design(
    C: CyclicCode,
    w: int,
    max_supports: int = MAX_SUPPORTS,
    progress: bool = False,
) -> IncidenceStructure:
    """Distinct supports of the weight-w codewords of C"""
    supports = {support for support, _ in iter_words_of_weight(C, w, max_supports, progress)}
    logger.info("weight %d: %d supports on %d points", w, len(supports), C.n)
    return incidence_structure(C.n, supports, [int(u) for u in C.points])


def support_designs_by_weight(C: CyclicCode, max_messages: int = MAX_MESSAGES) -> Dict[int, IncidenceStructure]:
    """Support structure of every nonzero weight class, from a full enumeration"""
    words = all_codewords(C, max_messages)
    nonzero = words != 0
    weights = np.count_nonzero(nonzero, axis=1)
    by_weight: Dict[int, set] = {}
    for row, wt in zip(nonzero, weights):
        if wt:
            by_weight.setdefault(int(wt), set()).add(tuple(np.nonzero(row)[0].tolist()))
    points = [int(u) for u in C.points]
    return {wt: incidence_structure(C.n, blocks, points) for wt, blocks in sorted(by_weight.items())}


# ---------- t-design verification ----------

def _count_tsubsets(blocks: Sequence[Tuple[int, ...]], t: int) -> Counter:
    counts: Counter = Counter()
    for block in blocks:
        counts.update(combinations(block, t))
    return counts


def verify_t_design(D: IncidenceStructure, t: int, threads: int = 1) -> Optional[DesignCertificate]:
    """Certificate when every t-subset lies in the same positive number of blocks"""
    k = D.k
    if k is None or not D.blocks or not 0 < t <= k:
        return None
    workers = max(1, threads)
    shards = [D.blocks[i::workers] for i in range(workers)]
    counts: Counter = Counter()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for partial in pool.map(lambda shard: _count_tsubsets(shard, t), shards):
            counts.update(partial)

    if len(counts) != math.comb(D.v, t):
        return None
    values = set(counts.values())
    if len(values) != 1:
        return None
    lam = values.pop()
    if len(D.blocks) * math.comb(k, t) != lam * math.comb(D.v, t):
        raise VerificationFailure("block count disagrees with λ·C(v,t)/C(k,t)")
    return DesignCertificate(t=t, v=D.v, k=k, lambda_=lam)


def lambda_formula(t: int, v: int, k: int, group_order: int, stab_order: int) -> Fraction:
    """λ = C(k,t)|G| / (C(v,t)|Stab_B|)"""
    if min(t, v, k, group_order, stab_order) <= 0:
        raise ParameterError("all arguments of the λ formula must be positive")
    return Fraction(math.comb(k, t) * group_order, math.comb(v, t) * stab_order)


def pgl2_order(q: int) -> int:
    return (q + 1) * q * (q - 1)


# ---------- Orbit designs on PG(1, q) ----------

def projective_line(q: int) -> List[ProjPoint]:
    """GF(q) by serialization, then ∞ at index q"""
    tower = code_tower(q)
    return [int(x) for x in tower.subfield_of_order(q).elements()] + [INFINITY]


def pgl2_generators(q: int) -> List[ProjMap]:
    """x -> x+1, x -> ωx, x -> 1/x"""
    tower = code_tower(q)
    GF = tower.GF
    omega = int(tower.subfield_of_order(q).primitive_element())
    return [
        ProjMap(1, 1, 0, 1, GF),
        ProjMap(1, 0, 0, int(GF(omega) ** -1), GF),
        ProjMap(0, 1, 1, 0, GF),
    ]


def pgl2_permutations(q: int) -> List[np.ndarray]:
    line = projective_line(q)
    index = {x: i for i, x in enumerate(line)}
    return [np.array([index[apply(g, x)] for x in line]) for g in pgl2_generators(q)]


def block_orbit(base: Iterable[int], perms: Sequence[np.ndarray]) -> List[FrozenSet[int]]:
    start = frozenset(base)
    seen = {start}
    queue = deque([start])
    while queue:
        block = queue.popleft()
        for perm in perms:
            image = frozenset(int(perm[i]) for i in block)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return list(seen)


def pgl_orbit_design(q: int, base: Iterable[int]) -> IncidenceStructure:
    """Orbit of a block of PG(1, q) indices under PGL(2, q)"""
    line = projective_line(q)
    blocks = block_orbit(base, pgl2_permutations(q))
    return incidence_structure(q + 1, blocks, [repr(x) if x is INFINITY else x for x in line])


def orbit_design(q: int, delta: int) -> IncidenceStructure:
    """Orbit of PG(1, δ) ⊂ PG(1, q): the S(3, δ+1, q+1) spherical geometry"""
    p, _ = prime_power(q)
    dp, _ = prime_power(delta)
    if p != dp:
        raise ParameterError(f"δ={delta} and q={q} have different characteristics")
    log_base(q, delta)

    line = projective_line(q)
    tower = code_tower(q)
    sub = {int(x) for x in tower.subfield_of_order(delta).elements()}
    base = [i for i, x in enumerate(line) if x is INFINITY or x in sub]
    D = pgl_orbit_design(q, base)
    expected = pgl2_order(q) // pgl2_order(delta)
    if len(D.blocks) != expected:
        raise VerificationFailure(f"orbit has {len(D.blocks)} blocks, expected {expected}")
    logger.debug("orbit design (q=%d, δ=%d): %d blocks", q, delta, len(D.blocks))
    return D


# ---------- Isomorphism and rank ----------

def isomorphic_via(D1: IncidenceStructure, D2: IncidenceStructure, point_bijection: Sequence[int]) -> bool:
    if D1.v != D2.v or len(point_bijection) != D1.v:
        raise ParameterError("designs and bijection must share the point count")
    if sorted(int(i) for i in point_bijection) != list(range(D1.v)):
        raise ParameterError("point map is not a bijection")
    mapped = {tuple(sorted(int(point_bijection[i]) for i in block)) for block in D1.blocks}
    return mapped == set(D2.blocks)


def bridge_bijection(q: int, u0: int) -> List[int]:
    """PG(1, q) index -> coordinate index j of β^j, through the bridge at u0"""
    b = bridge(q, u0)
    index = {int(u): j for j, u in enumerate(norm_one_group(b.tower, q))}
    return [index[b(x)] for x in projective_line(q)]


def incidence_matrix(D: IncidenceStructure) -> np.ndarray:
    A = np.zeros((len(D.blocks), D.v), dtype=np.int64)
    for r, block in enumerate(D.blocks):
        A[r, list(block)] = 1
    return A


def p_rank(D: IncidenceStructure, p: int) -> int:
    """Rank of the blocks x points incidence matrix over GF(p)"""
    if not galois.is_prime(p):
        raise ParameterError(f"p={p} is not prime")
    if not D.blocks:
        return 0
    GF = galois.GF(p)
    return int(np.linalg.matrix_rank(GF(incidence_matrix(D))))


# ---------- Export ----------

def design_to_json(D: IncidenceStructure, certificate: Optional[DesignCertificate] = None) -> dict:
    return {
        "v": D.v,
        "t": certificate.t if certificate else 0,
        "k": D.k or 0,
        "lambda": certificate.lambda_ if certificate else 0,
        "blocks": [list(b) for b in D.blocks],
    }


def incidence_text(D: IncidenceStructure) -> str:
    return "\n".join("".join(str(v) for v in row) for row in incidence_matrix(D))
