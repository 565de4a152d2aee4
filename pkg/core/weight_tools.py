# core/weight_tools.py
"""
Weight distributions, the support search behind minimum-distance
certificates, the explicit minimum-weight codeword and MacWilliams.

Enumerations split their index space into contiguous chunks; partial
distributions are added together, so the result does not depend on the
number of worker threads.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import islice, product
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from core.cyclic_codes import (
    CyclicCode,
    antiprimitive_bch,
    contains,
    expand_over_subfield,
    trace_codewords,
    tower_for_length,
)
from core.errors import GuardExceeded, ParameterError, VerificationFailure
from core.field_tower import in_norm_one_group, log_base, norm_one_group, prime_power

logger = logging.getLogger(__name__)

MAX_MESSAGES = 2 ** 26
MAX_TRACE_PARAMS = 2 ** 28
MAX_SUPPORTS = 10 ** 7
CHUNK = 1 << 14
SUPPORT_BATCH = 4096


# ---------- Distribution type ----------

@dataclass(frozen=True)
class WeightDistribution:
    """A_0..A_n as exact Python integers"""
    counts: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def min_distance(self) -> Optional[int]:
        """Smallest nonzero weight; None for the zero code"""
        for i, a in enumerate(self.counts[1:], start=1):
            if a:
                return i
        return None

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def __add__(self, other: "WeightDistribution") -> "WeightDistribution":
        if self.n != other.n:
            raise ParameterError("cannot merge distributions of different lengths")
        return WeightDistribution(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def to_json(self) -> List[str]:
        return [str(a) for a in self.counts]

    @classmethod
    def from_sparse(cls, n: int, terms: dict) -> "WeightDistribution":
        counts = [0] * (n + 1)
        for i, a in terms.items():
            counts[i] = a
        return cls(tuple(counts))


def _from_bincount(counts: np.ndarray) -> WeightDistribution:
    return WeightDistribution(tuple(int(a) for a in counts))


def _check_guard(size: int, limit: int, what: str, suggestion: str) -> None:
    if size > limit:
        raise GuardExceeded(f"{what}: {size} exceeds the guard of {limit}", suggestion=suggestion)


def _decode_indices(indices: np.ndarray, alphabet, length: int):
    """Row r holds the base-|alphabet| digits of indices[r], least significant first"""
    base = len(alphabet)
    digits = np.empty((len(indices), length), dtype=np.int64)
    rest = indices.copy()
    for j in range(length):
        digits[:, j] = rest % base
        rest //= base
    return alphabet[digits]


def _chunk_ranges(total: int, chunk: int) -> List[Tuple[int, int]]:
    return [(start, min(start + chunk, total)) for start in range(0, total, chunk)]


def _run_chunks(worker, ranges, threads: int, progress: bool, desc: str) -> np.ndarray:
    bar = tqdm(total=len(ranges), desc=desc, disable=not progress, leave=False)
    total = None
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        for partial in pool.map(worker, ranges):
            total = partial if total is None else total + partial
            bar.update(1)
    bar.close()
    return total


# ---------- Exhaustive enumeration ----------

def weight_distribution_exhaustive(
    C: CyclicCode,
    max_messages: int = MAX_MESSAGES,
    threads: int = 1,
    progress: bool = False,
) -> WeightDistribution:
    """Weights of m·G over every message m in GF(q)^k"""
    k, q, n = C.dimension, C.q, C.n
    size = q ** k
    _check_guard(size, max_messages, f"q^k = {q}^{k} messages", "use the trace method or a smaller q")
    if k == 0:
        return WeightDistribution.from_sparse(n, {0: 1})

    G = C.generator_matrix
    alphabet = C.scalar_field.elements()

    def worker(bounds: Tuple[int, int]) -> np.ndarray:
        indices = np.arange(*bounds, dtype=np.int64)
        words = _decode_indices(indices, alphabet, k) @ G
        return np.bincount(np.count_nonzero(words != 0, axis=1), minlength=n + 1)

    logger.info("enumerating %d codewords of a [%d,%d]_%d code", size, n, k, q)
    counts = _run_chunks(worker, _chunk_ranges(size, CHUNK), threads, progress, "codewords")
    return _from_bincount(counts)


def weight_distribution_trace(
    q: int,
    delta: int,
    max_params: int = MAX_TRACE_PARAMS,
    threads: int = 1,
    progress: bool = False,
) -> WeightDistribution:
    """Distribution of dual(bch(q, q+1, δ, 1)) through its trace parameterization"""
    size = (q * q) ** (delta - 1)
    _check_guard(size, max_params, f"(q²)^(δ-1) = {size} trace parameters", "choose a smaller δ or q")
    tower = tower_for_length(q, q + 1)
    alphabet = tower.subfield_of_order(q * q).elements()
    n = q + 1

    def worker(bounds: Tuple[int, int]) -> np.ndarray:
        indices = np.arange(*bounds, dtype=np.int64)
        A = _decode_indices(indices, alphabet, delta - 1)
        words = trace_codewords(q, delta, A, tower)
        return np.bincount(np.count_nonzero(words != 0, axis=1), minlength=n + 1)

    # the top digit is the leading coefficient, so each chunk fixes a range of it
    logger.info("enumerating %d trace parameters for q=%d, δ=%d", size, q, delta)
    counts = _run_chunks(worker, _chunk_ranges(size, CHUNK), threads, progress, "trace params")
    return _from_bincount(counts)


def all_codewords(C: CyclicCode, max_messages: int = MAX_MESSAGES):
    """Every codeword as a row, message order"""
    k = C.dimension
    _check_guard(C.q ** k, max_messages, f"q^k = {C.q}^{k} messages", "choose a smaller code")
    if k == 0:
        return C.tower.GF.Zeros((1, C.n))
    indices = np.arange(C.q ** k, dtype=np.int64)
    return _decode_indices(indices, C.scalar_field.elements(), k) @ C.generator_matrix


# ---------- Support matrix and the support search ----------

def support_matrix(delta: int, points):
    """M_(δ,ℓ): rows u_j^i for i = -(δ-1)..-1, 1..δ-1"""
    exponents = np.array(list(range(-(delta - 1), 0)) + list(range(1, delta)))
    return points[np.newaxis, :] ** exponents[:, np.newaxis]


def colex_combinations(n: int, w: int) -> Iterator[Tuple[int, ...]]:
    """w-subsets of range(n) ordered by largest element, then recursively"""
    if w == 0:
        yield ()
        return
    for top in range(w - 1, n):
        for rest in colex_combinations(top, w - 1):
            yield rest + (top,)


def batched_rank(M) -> np.ndarray:
    """Rank of every matrix in a (B, R, C) stack, by simultaneous elimination"""
    A = M.copy()
    B, R, C = A.shape
    ranks = np.zeros(B, dtype=np.int64)
    rows = np.arange(R)
    for col in range(C):
        eligible = (A[:, :, col] != 0) & (rows[np.newaxis, :] >= ranks[:, np.newaxis])
        batch = np.nonzero(eligible.any(axis=1))[0]
        if len(batch) == 0:
            continue
        pivot = np.argmax(eligible[batch], axis=1)
        target = ranks[batch]

        swapped = A[batch, pivot].copy()
        A[batch, pivot] = A[batch, target]
        pivot_rows = swapped / swapped[:, col][:, np.newaxis]
        A[batch, target] = pivot_rows

        factors = A[batch, :, col].copy()
        factors[np.arange(len(batch)), target] = 0
        A[batch] = A[batch] - factors[:, :, np.newaxis] * pivot_rows[:, np.newaxis, :]
        ranks[batch] += 1
    return ranks


def _require_quadratic_ambient(C: CyclicCode) -> None:
    if C.tower.order != C.q * C.q:
        raise ParameterError("the support search needs the ambient field GF(q²)")


def solution_space(C: CyclicCode, support: Sequence[int]):
    """GF(q)-basis (rows) of the words of C supported inside `support`"""
    _require_quadratic_ambient(C)
    M = C.root_matrix[:, list(support)]
    if M.shape[0] == 0:
        return C.tower.GF.Identity(len(support))
    expanded = expand_over_subfield(M, C.gamma, C.q)
    return expanded.null_space()


def _full_support_words(C: CyclicCode, support: Tuple[int, ...], basis, max_span: int):
    dim = basis.shape[0]
    if dim == 0:
        return []
    if dim == 1:
        if np.any(basis[0] == 0):
            return []
        coeffs = C.scalar_field.elements()[1:]
        return [c * basis[0] for c in coeffs]
    _check_guard(C.q ** dim, max_span, f"{C.q}^{dim} words on one support", "choose a larger weight")
    alphabet = C.scalar_field.elements()
    words = []
    for combo in product(range(C.q), repeat=dim):
        vector = alphabet[list(combo)] @ basis
        if np.all(vector != 0):
            words.append(vector)
    return words


def iter_words_of_weight(
    C: CyclicCode,
    w: int,
    max_supports: int = MAX_SUPPORTS,
    progress: bool = False,
) -> Iterator[Tuple[Tuple[int, ...], "np.ndarray"]]:
    """
    Every (support, codeword) of weight w, supports in colex order.

    A support passes when its GF(q²) root submatrix has rank < w. The root
    exponents are closed under multiplication by q, so that null space is
    Frobenius-stable and has a GF(q)-basis of the same dimension; the screen
    loses nothing.
    """
    _require_quadratic_ambient(C)
    n = C.n
    if not 0 < w <= n:
        raise ParameterError(f"weight must lie in [1, {n}], got {w}")
    total = math.comb(n, w)
    _check_guard(total, max_supports, f"C({n},{w}) supports", "choose a smaller weight")

    root_matrix = C.root_matrix
    supports = colex_combinations(n, w)
    bar = tqdm(total=total, desc=f"weight {w} supports", disable=not progress, leave=False)
    while True:
        batch = list(islice(supports, SUPPORT_BATCH))
        if not batch:
            break
        bar.update(len(batch))
        if root_matrix.shape[0] == 0:
            candidates = range(len(batch))
        else:
            idx = np.array(batch, dtype=np.int64)
            stack = np.moveaxis(root_matrix[:, idx], 1, 0)
            candidates = np.nonzero(batched_rank(stack) < w)[0]
        for b in candidates:
            support = batch[b]
            basis = solution_space(C, support)
            for values in _full_support_words(C, support, basis, max_supports):
                word = C.tower.GF.Zeros(n)
                word[list(support)] = values
                yield support, word
    bar.close()


def exists_word_of_weight(C: CyclicCode, w: int, max_supports: int = MAX_SUPPORTS, progress: bool = False):
    """First (support, codeword) of weight w in colex support order, or None"""
    for support, word in iter_words_of_weight(C, w, max_supports, progress):
        logger.debug("weight %d word found on support %s", w, support)
        return support, word
    return None


# ---------- Explicit minimum-weight word ----------

def _check_delta_q(q: int, delta: int) -> int:
    p, _ = prime_power(q)
    dp, _ = prime_power(delta)
    if dp != p:
        raise ParameterError(f"δ={delta} is not a power of p={p}")
    return log_base(q, delta)


def explicit_min_word(q: int, delta: int, u0):
    """
    Weight δ+1 word of bch(q, q+1, δ, 1): value (c+u0)^((q+1)(δ-1)) at
    (c + u0^q)/(c + u0) for c in GF(δ), and value 1 at the point 1.
    """
    _check_delta_q(q, delta)
    code = antiprimitive_bch(q, delta)
    GF = code.tower.GF
    u0 = GF(int(u0))
    if not in_norm_one_group(u0, q):
        raise ParameterError(f"u0={int(u0)} is not in U_{q + 1}")
    if u0 == 1 or u0 == -GF(1):
        raise ParameterError("u0 must differ from 1 and -1")

    cs = code.tower.subfield_of_order(delta).elements()
    points = (cs + u0 ** q) / (cs + u0)
    values = (cs + u0) ** ((q + 1) * (delta - 1))

    word = GF.Zeros(q + 1)
    index = code.point_index
    word[index[1]] = 1
    for u, a in zip(points, values):
        word[index[int(u)]] = a
    if np.count_nonzero(word != 0) != delta + 1:
        raise VerificationFailure("support points of the explicit word are not distinct")
    if not contains(code, word):
        raise VerificationFailure("explicit word is not a codeword")
    return word


def default_u0(q: int) -> int:
    """Smallest serialized element of U_{q+1} other than 1 and -1"""
    tower = tower_for_length(q, q + 1)
    group = norm_one_group(tower, q)
    minus_one = int(-tower.GF(1))
    return min(int(u) for u in group if int(u) not in (1, minus_one))


# ---------- MacWilliams ----------

def krawtchouk(j: int, i: int, n: int, q: int) -> int:
    return sum(
        (-1) ** s * (q - 1) ** (j - s) * math.comb(i, s) * math.comb(n - i, j - s)
        for s in range(j + 1)
    )


def macwilliams(W: WeightDistribution, n: int, k: int, q: int) -> WeightDistribution:
    """Distribution of the dual, B_j = q^{-k} Σ_i A_i K_j(i)"""
    if W.n != n:
        raise ParameterError(f"distribution has length {W.n}, expected {n}")
    size = q ** k
    if W.total != size or W[0] != 1:
        raise ParameterError(f"distribution sums to {W.total}, expected q^k = {size} with A_0 = 1")
    counts = []
    for j in range(n + 1):
        acc = sum(a * krawtchouk(j, i, n, q) for i, a in enumerate(W.counts) if a)
        if acc % size:
            raise VerificationFailure(f"non-integral dual coefficient at weight {j}")
        counts.append(acc // size)
    return WeightDistribution(tuple(counts))


# ---------- Published q = 25 enumerators ----------

_PUBLISHED_PRIMARY_25 = {
    0: 1,
    6: 3120,
    8: 1053000,
    9: 52478400,
    10: 2246164440,
    11: 76730209920,
    12: 2313008100000,
    13: 59737548888000,
    14: 1331420089708800,
    15: 25563001945153920,
    16: 421789956437369520,
    17: 5954681202248610000,
    18: 71456174963080050000,
    19: 722083451831987107200,
    20: 6065500995657406236960,
    21: 41592006827232472278720,
    22: 226865491784954611290000,
    23: 946916835276318186384000,
    24: 2840750505828957328830600,
    25: 5454240971191597731710304,
    26: 5034683973407628695013720,
}

_PUBLISHED_DUAL_25 = {
    0: 1,
    18: 1645800,
    19: 4180800,
    20: 70265520,
    21: 426192000,
    22: 2393352000,
    23: 9911491200,
    24: 29801335200,
    25: 57185869104,
    26: 52793559000,
}

PUBLISHED_DUAL_LAMBDA_25 = 21522


def published_enumerators() -> Tuple[WeightDistribution, WeightDistribution]:
    """(primary, dual) distributions of bch(25, 26, 5, 1) as published"""
    return (
        WeightDistribution.from_sparse(26, _PUBLISHED_PRIMARY_25),
        WeightDistribution.from_sparse(26, _PUBLISHED_DUAL_25),
    )


# ---------- Binomial divisibility ----------

def binomial_divisibility_holds(delta: int) -> bool:
    """p | C(δ-1+e, s) for 1 <= e <= δ-1 and e <= s <= δ-1"""
    p, _ = prime_power(delta)
    return all(
        math.comb(delta - 1 + e, s) % p == 0
        for e in range(1, delta)
        for s in range(e, delta)
    )
