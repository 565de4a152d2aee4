# core/invariant_classifier.py
"""
Which cyclic codes of length p^m + 1 over GF(p^h) survive the permutation
action of the stabilizer of U_{p^m+1}?

The rotation u -> β·u is one of the generators, so every invariant code is
cyclic and scanning the r-invariant defining sets covers all candidates.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

from core import cyclotomy
from core.cyclic_codes import CyclicCode, cyclic_code, rank, tower_for_length
from core.errors import ParameterError
from core.moebius import StabilizerGroup, stabilizer_group
from core.schemas import ClassificationModel

logger = logging.getLogger(__name__)

EXPECTED_NAMES = ("zero", "repetition", "sum-zero", "whole space")


@dataclass(frozen=True)
class CandidateResult:
    representatives: Tuple[int, ...]
    dimension: int
    invariant: bool
    failed_generator: Optional[int] = None


@dataclass
class ClassificationReport:
    p: int
    m: int
    h: int
    candidates_tested: int = 0
    invariant_codes: List[Tuple[str, List[int]]] = field(default_factory=list)
    candidates: List[CandidateResult] = field(default_factory=list)

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def n(self) -> int:
        return self.q + 1

    @property
    def holds(self) -> bool:
        names = sorted(name for name, _ in self.invariant_codes)
        return names == sorted(EXPECTED_NAMES)


def code_name(E: FrozenSet[int], n: int) -> str:
    """Name of the four trivial codes by defining set, 'other' otherwise"""
    if not E:
        return "zero"
    if E == {0}:
        return "repetition"
    if E == set(range(1, n)):
        return "sum-zero"
    if E == set(range(n)):
        return "whole space"
    return "other"


def defining_set_for_name(name: str, n: int) -> FrozenSet[int]:
    table = {
        "zero": frozenset(),
        "repetition": frozenset({0}),
        "sum-zero": frozenset(range(1, n)),
        "whole space": frozenset(range(n)),
    }
    if name not in table:
        raise ParameterError(f"unknown code name {name!r}")
    return table[name]


def is_perm_invariant(C: CyclicCode, perm) -> bool:
    """Column-permuted generator matrix spans the same row space"""
    if C.dimension == 0:
        return True
    perm = np.asarray(perm, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(C.n)):
        raise ParameterError("perm is not a permutation of the coordinates")
    G = C.generator_matrix
    return rank(np.vstack((G, G[:, perm]))) == C.dimension


def _test_candidate(C: CyclicCode, group: StabilizerGroup, r: int) -> CandidateResult:
    reps = tuple(cyclotomy.representatives(C.defining_set, r, C.n))
    for i, perm in enumerate(group.generator_permutations):
        if not is_perm_invariant(C, perm):
            return CandidateResult(reps, C.dimension, False, failed_generator=i)
    return CandidateResult(reps, C.dimension, True)


def classify(p: int, m: int, h: int, max_cosets: int = cyclotomy.MAX_COSETS, threads: int = 1) -> ClassificationReport:
    q, r = p ** m, p ** h
    n = q + 1
    group = stabilizer_group(q)
    tower = tower_for_length(r, n)
    candidate_sets = list(cyclotomy.all_invariant_sets(r, n, max_cosets))
    codes = [cyclic_code(r, n, E, tower) for E in candidate_sets]
    logger.info("classifying %d cyclic codes of length %d over GF(%d)", len(codes), n, r)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(lambda C: _test_candidate(C, group, r), codes))

    report = ClassificationReport(p=p, m=m, h=h, candidates_tested=len(codes), candidates=results)
    for C, result in zip(codes, results):
        if result.invariant:
            report.invariant_codes.append((code_name(C.defining_set, n), sorted(C.defining_set)))
    return report


def invariant_under_random_elements(
    C: CyclicCode,
    group: StabilizerGroup,
    rng: np.random.Generator,
    count: int,
) -> bool:
    """Spot check over random group elements drawn from the closure"""
    return all(is_perm_invariant(C, group.permutation(g)) for g in group.random_elements(rng, count))


def name_map_consistent(report: ClassificationReport) -> bool:
    """Names and defining sets of the reported codes determine each other"""
    for name, E in report.invariant_codes:
        if name == "other" or defining_set_for_name(name, report.n) != frozenset(E):
            return False
    return True


def summary(report: ClassificationReport) -> ClassificationModel:
    return ClassificationModel(
        p=report.p,
        m=report.m,
        h=report.h,
        candidates_tested=report.candidates_tested,
        invariant_codes=[{"name": name, "defining_set": sorted(E)} for name, E in report.invariant_codes],
        holds=report.holds,
    )
