# core/cyclotomy.py
"""
r-cyclotomic cosets modulo n and the r-invariant sets built from them.
Pure integer code; cosets are sorted lists, systems are keyed by (r mod n, n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, List, Set, Tuple

from core.errors import GuardExceeded, ParameterError

MAX_COSETS = 24


def _check_coprime(r: int, n: int) -> None:
    if n < 1:
        raise ParameterError(f"modulus must be positive, got {n}")
    if math.gcd(r, n) != 1:
        raise ParameterError(f"gcd(r={r}, n={n}) != 1")


def coset_of(e: int, r: int, n: int) -> List[int]:
    """[e]_(r,n) = {r^i e mod n}, sorted"""
    _check_coprime(r, n)
    start = e % n
    orbit = [start]
    x = (start * r) % n
    while x != start:
        orbit.append(x)
        x = (x * r) % n
    return sorted(orbit)


def multiplicative_order(r: int, n: int) -> int:
    _check_coprime(r, n)
    if n == 1:
        return 1
    k, x = 1, r % n
    while x != 1:
        x = (x * r) % n
        k += 1
    return k


@dataclass(frozen=True)
class CosetSystem:
    """Partition of Z_n into orbits of multiplication by r"""
    n: int
    r: int
    cosets: Tuple[Tuple[int, ...], ...]

    def coset_index(self, e: int) -> int:
        for i, coset in enumerate(self.cosets):
            if e % self.n in coset:
                return i
        raise ParameterError(f"{e} not found in Z_{self.n}")


def coset_system(r: int, n: int) -> CosetSystem:
    _check_coprime(r, n)
    return _coset_system(r % n, n)


@lru_cache(maxsize=None)
def _coset_system(r: int, n: int) -> CosetSystem:
    seen: Set[int] = set()
    cosets = []
    for e in range(n):
        if e in seen:
            continue
        coset = coset_of(e, r, n)
        seen.update(coset)
        cosets.append(tuple(coset))
    # ordered by coset minimum, which is the discovery order above
    return CosetSystem(n=n, r=r, cosets=tuple(cosets))


def is_invariant(E: Iterable[int], r: int, n: int) -> bool:
    _check_coprime(r, n)
    members = {e % n for e in E}
    return {(r * e) % n for e in members} == members


def representatives(E: Iterable[int], r: int, n: int) -> List[int]:
    """Coset minima of the cosets making up the r-invariant set E, ascending"""
    members = {e % n for e in E}
    if not is_invariant(members, r, n):
        raise ParameterError(f"{sorted(members)} is not {r}-invariant modulo {n}")
    return sorted({min(coset_of(e, r, n)) for e in members})


def closure(E: Iterable[int], r: int, n: int) -> List[int]:
    """Smallest r-invariant set containing E"""
    out: Set[int] = set()
    for e in E:
        out.update(coset_of(e, r, n))
    return sorted(out)


def all_invariant_sets(r: int, n: int, max_cosets: int = MAX_COSETS) -> Iterator[Set[int]]:
    """
    Every union of r-cyclotomic cosets modulo n. Set number `mask` contains
    coset i (cosets sorted by minimum) iff bit i of mask is set.
    """
    system = coset_system(r, n)
    count = len(system.cosets)
    if count > max_cosets:
        raise GuardExceeded(
            f"{count} cyclotomic cosets modulo {n} exceed the guard of {max_cosets}",
            suggestion="choose a smaller length or raise --max-cosets",
        )
    for mask in range(1 << count):
        members: Set[int] = set()
        for i, coset in enumerate(system.cosets):
            if mask >> i & 1:
                members.update(coset)
        yield members


def negate(E: Iterable[int], n: int) -> Set[int]:
    return {(-e) % n for e in E}


def complement(E: Iterable[int], n: int) -> Set[int]:
    return set(range(n)) - {e % n for e in E}
