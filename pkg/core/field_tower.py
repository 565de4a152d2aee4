# core/field_tower.py
"""
Exact arithmetic in a single ambient field GF(p^d) that hosts the whole tower
GF(p) ⊂ GF(δ) ⊂ GF(q) ⊂ GF(q²).

Subfields are never embedded explicitly: GF(p^e) is the set of elements fixed
by x -> x^(p^e). Arithmetic itself is delegated to galois, which keeps
log/antilog lookup tables for every field used here (all well below 2^20
elements).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List

import galois
import numpy as np

from core.errors import ParameterError
from core.schemas import FieldSpecModel

logger = logging.getLogger(__name__)


# ---------- Integer helpers ----------

def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^k, raising if q is not a prime power"""
    if q < 2 or not galois.is_prime_power(q):
        raise ParameterError(f"{q} is not a prime power")
    primes, multiplicities = galois.factors(q)
    return int(primes[0]), int(multiplicities[0])


def log_base(value: int, base: int) -> int:
    """Exact integer logarithm; raises unless value is a power of base"""
    k, acc = 0, 1
    while acc < value:
        acc *= base
        k += 1
    if acc != value:
        raise ParameterError(f"{value} is not a power of {base}")
    return k


# ---------- Field spec ----------

@dataclass(frozen=True)
class FieldTower:
    """The ambient field GF(p^degree) with its deterministic primitive modulus"""
    p: int
    degree: int
    modulus: galois.Poly = field(compare=False, repr=False)
    GF: Any = field(compare=False, repr=False)

    @property
    def order(self) -> int:
        return self.p ** self.degree

    def element(self, value: int):
        """Deserialize the little-endian base-p integer form"""
        if not 0 <= value < self.order:
            raise ParameterError(f"{value} is not an element of GF({self.order})")
        return self.GF(value)

    def subfield(self, sub_degree: int) -> "Subfield":
        return Subfield(self, sub_degree)

    def subfield_of_order(self, order: int) -> "Subfield":
        p, k = prime_power(order)
        if p != self.p:
            raise ParameterError(f"GF({order}) has characteristic {p}, ambient has {self.p}")
        return Subfield(self, k)

    def to_json(self) -> Dict[str, Any]:
        return FieldSpecModel(
            p=self.p,
            degree=self.degree,
            modulus=[int(c) for c in self.modulus.coefficients(order="asc")],
        ).model_dump()


def build_tower(p: int, degree: int) -> FieldTower:
    """Build (or fetch) the ambient field GF(p^degree)"""
    return _build_tower(int(p), int(degree))


@lru_cache(maxsize=None)
def _build_tower(p: int, degree: int) -> FieldTower:
    if not galois.is_prime(p):
        raise ParameterError(f"p={p} is not prime")
    if degree < 1:
        raise ParameterError(f"degree must be positive, got {degree}")

    # Lexicographically smallest primitive polynomial: reproducible across builds.
    modulus = galois.primitive_poly(p, degree, method="min")
    if not modulus.is_irreducible():
        raise ParameterError(f"modulus {modulus} is reducible over GF({p})")

    GF = galois.GF(p ** degree, irreducible_poly=modulus)
    logger.debug("built GF(%d^%d) with modulus %s", p, degree, modulus)
    return FieldTower(p=p, degree=degree, modulus=modulus, GF=GF)


def code_tower(q: int) -> FieldTower:
    """Ambient field GF(q²) for codes of length q+1 over GF(q)"""
    p, k = prime_power(q)
    return build_tower(p, 2 * k)


def tower_from_json(data: Dict[str, Any] | str) -> FieldTower:
    spec = FieldSpecModel.model_validate_json(data) if isinstance(data, str) else FieldSpecModel.model_validate(data)
    tower = build_tower(spec.p, spec.degree)
    if [int(c) for c in tower.modulus.coefficients(order="asc")] != spec.modulus:
        raise ParameterError("modulus does not match the deterministic choice for (p, degree)")
    return tower


# ---------- Subfields ----------

@dataclass(frozen=True)
class Subfield:
    """GF(p^sub_degree) as the Frobenius^sub_degree-fixed set of the ambient field"""
    tower: FieldTower
    sub_degree: int

    def __post_init__(self):
        if self.sub_degree < 1 or self.tower.degree % self.sub_degree != 0:
            raise ParameterError(
                f"GF({self.tower.p}^{self.sub_degree}) is not a subfield of "
                f"GF({self.tower.p}^{self.tower.degree})"
            )

    @property
    def order(self) -> int:
        return self.tower.p ** self.sub_degree

    def contains(self, x) -> bool:
        return bool(np.all(frobenius(x, self.sub_degree) == x))

    def elements(self):
        """All subfield elements, ascending by serialization"""
        return _subfield_elements(self.tower, self.sub_degree)

    def primitive_element(self):
        GF = self.tower.GF
        return GF.primitive_element ** ((self.tower.order - 1) // (self.order - 1))


@lru_cache(maxsize=None)
def _subfield_elements(tower: FieldTower, sub_degree: int):
    GF = tower.GF
    g = GF.primitive_element ** ((tower.order - 1) // (tower.p ** sub_degree - 1))
    values = {0} | {int(g ** j) for j in range(tower.p ** sub_degree - 1)}
    return GF(sorted(values))


# ---------- Element operations ----------

def _check_same_field(x, y) -> None:
    if type(x) is not type(y):
        raise ParameterError("operands belong to different fields")


def add(x, y):
    _check_same_field(x, y)
    return x + y


def mul(x, y):
    _check_same_field(x, y)
    return x * y


def inv(x):
    if np.any(x == 0):
        raise ParameterError("0 has no multiplicative inverse")
    return np.reciprocal(x)


def power(x, e: int):
    """x^e; a negative e means inv(x)^(-e)"""
    if e < 0:
        return inv(x) ** (-e)
    return x ** e


def frobenius(x, e: int):
    """x^(p^e), with e taken modulo the ambient degree"""
    GF = type(x)
    e %= GF.degree
    return x ** (GF.characteristic ** e)


def trace_to(x, sub: Subfield):
    """Relative trace from the ambient field down to sub"""
    steps = sub.tower.degree // sub.sub_degree
    total = x * 0
    y = x
    for _ in range(steps):
        total = total + y
        y = frobenius(y, sub.sub_degree)
    return total


def norm_to(x, sub: Subfield):
    """Relative norm from the ambient field down to sub"""
    steps = sub.tower.degree // sub.sub_degree
    total = x ** 0
    y = x
    for _ in range(steps):
        total = total * y
        y = frobenius(y, sub.sub_degree)
    return total


def relative_trace(x, big_order: int, small_order: int):
    """Tr_{big/small}(x) for x in GF(big_order) (inside the ambient field)"""
    steps = log_base(big_order, small_order)
    total = x * 0
    y = x
    for _ in range(steps):
        total = total + y
        y = y ** small_order
    return total


def is_in_subfield(x, sub: Subfield) -> bool:
    return sub.contains(x)


# ---------- Norm-one subgroup ----------

def norm_one_generator(tower: FieldTower, q: int):
    """β of multiplicative order exactly q+1 inside GF(q²) ⊂ ambient"""
    if (tower.order - 1) % (q * q - 1) != 0:
        raise ParameterError(f"GF({tower.order}) does not contain GF({q}²)")
    beta = tower.GF.primitive_element ** ((tower.order - 1) // (q + 1))
    assert int(beta.multiplicative_order()) == q + 1
    return beta


def norm_one_group(tower: FieldTower, q: int):
    """U_{q+1} in the fixed coordinate order β^0, β^1, ..., β^q"""
    beta = norm_one_generator(tower, q)
    return beta ** np.arange(q + 1)


def in_norm_one_group(x, q: int) -> bool:
    return bool(np.all(x ** (q + 1) == 1))


def random_elements(tower: FieldTower, size: int, rng: np.random.Generator, nonzero: bool = False):
    low = 1 if nonzero else 0
    values = rng.integers(low, tower.order, size=size)
    return tower.GF(values)


def serialize(x) -> int | List[int]:
    """Little-endian base-p integer form (a list for arrays)"""
    if np.ndim(x) == 0:
        return int(x)
    return [int(v) for v in np.asarray(x).ravel()]


def coefficient_vector(x) -> List[int]:
    """Coefficients over GF(p), lowest degree first"""
    return [int(c) for c in x.vector()[::-1]]
