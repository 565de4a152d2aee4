# core/poly_ring.py
"""
Univariate polynomials over the ambient field (galois.Poly), minimal
polynomials over tower subfields, interpolation on the norm-one group U_n,
elementary symmetric polynomials and the deleted-row Vandermonde identity.

Polynomials are handed around as galois.Poly; "coefficient lists" at the
boundaries are always lowest degree first.
"""

from __future__ import annotations

import logging
import math
from itertools import combinations
from typing import List, Mapping, Sequence

import galois
import numpy as np

from core.errors import ParameterError, VerificationFailure
from core.field_tower import Subfield

logger = logging.getLogger(__name__)

NEG_INF_DEGREE = -math.inf


# ---------- Construction ----------

def poly(coeffs_asc: Sequence, GF) -> galois.Poly:
    """Polynomial from coefficients given lowest degree first"""
    if len(coeffs_asc) == 0:
        return galois.Poly([0], field=GF)
    return galois.Poly(GF(np.asarray(coeffs_asc)), field=GF, order="asc")


def coefficients(f: galois.Poly) -> List[int]:
    """Serialized coefficients, lowest degree first; [] for the zero polynomial"""
    if is_zero(f):
        return []
    return [int(c) for c in f.coefficients(order="asc")]


def is_zero(f: galois.Poly) -> bool:
    return f.degree == 0 and f.coeffs[0] == 0


def degree(f: galois.Poly) -> float:
    """Degree, with -inf for the zero polynomial"""
    if is_zero(f):
        return NEG_INF_DEGREE
    return f.degree


def monic(f: galois.Poly) -> galois.Poly:
    if is_zero(f):
        return f
    return galois.Poly(f.coeffs / f.coeffs[0], field=f.field)


# ---------- Ring operations ----------

def _check_same_field(a: galois.Poly, b: galois.Poly) -> None:
    if a.field is not b.field:
        raise ParameterError("polynomials are defined over different fields")


def poly_mul(a: galois.Poly, b: galois.Poly) -> galois.Poly:
    _check_same_field(a, b)
    return a * b


def poly_divmod(a: galois.Poly, b: galois.Poly) -> tuple[galois.Poly, galois.Poly]:
    _check_same_field(a, b)
    if is_zero(b):
        raise ParameterError("division by the zero polynomial")
    return divmod(a, b)


def poly_gcd(a: galois.Poly, b: galois.Poly) -> galois.Poly:
    """Monic gcd (the zero polynomial only when both inputs are zero)"""
    _check_same_field(a, b)
    if is_zero(b):
        return monic(a)
    if is_zero(a):
        return monic(b)
    return monic(galois.gcd(a, b))


def poly_lcm(a: galois.Poly, b: galois.Poly) -> galois.Poly:
    _check_same_field(a, b)
    if is_zero(a) or is_zero(b):
        return galois.Poly([0], field=a.field)
    return monic((a * b) // poly_gcd(a, b))


def evaluate(f: galois.Poly, x):
    return f(x)


def reciprocal(f: galois.Poly) -> galois.Poly:
    """x^deg(f) · f(1/x), made monic"""
    return monic(galois.Poly(f.coeffs[::-1], field=f.field))


# ---------- Minimal polynomials ----------

def conjugates(x, sub: Subfield):
    """Orbit of x under y -> y^|sub|, in order of discovery"""
    orbit = [x]
    y = x ** sub.order
    while y != x:
        orbit.append(y)
        y = y ** sub.order
    return type(x)(orbit)


def minimal_polynomial(x, sub: Subfield) -> galois.Poly:
    """Minimal polynomial of x over the subfield sub"""
    orbit = conjugates(x, sub)
    f = galois.Poly.Roots(orbit, field=type(x))
    if not sub.contains(f.coeffs):
        raise VerificationFailure(f"minimal polynomial {f} has coefficients outside GF({sub.order})")
    return f


# ---------- Interpolation on U_n ----------

def interpolate_on_Un(values, points) -> "galois.FieldArray":
    """
    Coefficients a_0..a_{n-1} of the expansion f(u) = Σ a_i u^i on the group
    U_n = points, from a_i = Σ_u f(u) u^{-i}.

    values is either an array aligned with points or a mapping from the
    serialized group element to its value.
    """
    GF = type(points)
    n = len(points)
    if n % GF.characteristic != 1 % GF.characteristic:
        raise ParameterError(f"|U_n| = {n} is not 1 mod p; the expansion needs a 1/n factor")

    if isinstance(values, Mapping):
        missing = [int(u) for u in points if int(u) not in values]
        if missing:
            raise ParameterError(f"value map is missing {len(missing)} points of U_{n}")
        values = GF([int(values[int(u)]) for u in points])
    elif len(values) != n:
        raise ParameterError(f"expected {n} values, got {len(values)}")

    inverse_powers = (points ** -1)[np.newaxis, :] ** np.arange(n)[:, np.newaxis]
    return inverse_powers @ values


def evaluate_on_Un(coeffs, points):
    """Values of Σ a_i u^i at every u in points"""
    n = len(coeffs)
    powers = points[np.newaxis, :] ** np.arange(n)[:, np.newaxis]
    return coeffs @ powers


# ---------- Symmetric functions and Vandermonde ----------

def _field_points(points) -> "galois.FieldArray":
    """Accept a FieldArray or a non-empty sequence of field scalars"""
    if isinstance(points, galois.FieldArray):
        return points
    if len(points) == 0:
        raise ParameterError("an empty point list carries no field; pass a FieldArray")
    return type(points[0])([int(u) for u in points])


def elementary_symmetric(ell: int, points) -> "galois.FieldArray":
    """σ_ell(points), read off the product Π(1 + u_i t)"""
    points = _field_points(points)
    n = len(points)
    if not 0 <= ell <= n:
        raise ParameterError(f"ell={ell} outside [0, {n}]")
    GF = type(points)
    sigma = GF.Zeros(n + 1)
    sigma[0] = 1
    for u in points:
        sigma[1:] = sigma[1:] + u * sigma[:-1]
    return sigma[ell]


def elementary_symmetric_bruteforce(ell: int, points):
    points = _field_points(points)
    GF = type(points)
    total = GF(0)
    for subset in combinations(range(len(points)), ell):
        term = GF(1)
        for i in subset:
            term = term * points[i]
        total = total + term
    return total


def _check_distinct(points) -> None:
    if len({int(u) for u in points}) != len(points):
        raise ParameterError("points must be pairwise distinct")


def deleted_row_vandermonde_matrix(ell: int, points):
    """Rows u^0..u^n with the row u^ell removed (n = number of points)"""
    points = _field_points(points)
    n = len(points)
    if not 0 <= ell <= n:
        raise ParameterError(f"ell={ell} outside [0, {n}]")
    exponents = [e for e in range(n + 1) if e != ell]
    return points[np.newaxis, :] ** np.array(exponents)[:, np.newaxis]


def deleted_row_vandermonde(ell: int, points):
    """(Π_{j<i} (u_i - u_j)) · σ_{n-ell}(u_1..u_n)"""
    points = _field_points(points)
    _check_distinct(points)
    n = len(points)
    GF = type(points)
    product = GF(1)
    for i in range(n):
        for j in range(i):
            product = product * (points[i] - points[j])
    return product * elementary_symmetric(n - ell, points)


def determinant(matrix):
    return np.linalg.det(matrix)
