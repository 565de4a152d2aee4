# tests/test_poly_ring.py

import math

import galois
import numpy as np
import pytest

from core.errors import ParameterError
from core.field_tower import build_tower, norm_one_group
from core.poly_ring import (
    coefficients,
    conjugates,
    degree,
    deleted_row_vandermonde,
    deleted_row_vandermonde_matrix,
    determinant,
    elementary_symmetric,
    elementary_symmetric_bruteforce,
    evaluate,
    evaluate_on_Un,
    interpolate_on_Un,
    is_zero,
    minimal_polynomial,
    monic,
    poly,
    poly_divmod,
    poly_gcd,
    poly_lcm,
    poly_mul,
    reciprocal,
)


@pytest.fixture(scope="module")
def GF9():
    return build_tower(3, 2).GF


def test_coefficients_are_lowest_degree_first(GF9):
    f = poly([1, 0, 2], GF9)
    assert coefficients(f) == [1, 0, 2]
    assert degree(f) == 2
    assert degree(poly([], GF9)) == -math.inf
    assert is_zero(poly([0, 0], GF9))


def test_divmod_gcd_lcm(GF9):
    a = poly([1, 1], GF9)        # x + 1
    b = poly([2, 1], GF9)        # x + 2
    product = poly_mul(a, b)
    quotient, remainder = poly_divmod(product, a)
    assert quotient == b and is_zero(remainder)
    assert poly_gcd(product, a) == a
    assert poly_lcm(a, b) == product
    assert monic(poly([2, 2], GF9)) == a
    with pytest.raises(ParameterError):
        poly_divmod(a, poly([], GF9))


def test_reciprocal_reverses_and_normalizes(GF9):
    f = poly([2, 1, 1], GF9)     # x^2 + x + 2
    r = reciprocal(f)
    assert coefficients(r) == [int(c) for c in (GF9(1) / GF9(2)) * GF9([1, 1, 2])]
    assert r.coeffs[0] == 1


def test_minimal_polynomial_of_norm_one_element(tower9):
    beta = norm_one_group(tower9, 9)[1]
    sub = tower9.subfield_of_order(9)
    f = minimal_polynomial(beta, sub)
    assert f.degree == 2
    assert evaluate(f, beta) == 0
    expected = galois.Poly([1, -(beta + beta ** -1), 1], field=tower9.GF)
    assert f == expected
    assert len(conjugates(beta, sub)) == 2


def test_interpolation_roundtrip_from_array_and_mapping(tower9, rng):
    U = norm_one_group(tower9, 9)
    values = tower9.GF(rng.integers(0, 81, size=10))
    coeffs = interpolate_on_Un(values, U)
    assert np.all(evaluate_on_Un(coeffs, U) == values)
    mapping = {int(u): int(v) for u, v in zip(U, values)}
    assert np.all(interpolate_on_Un(mapping, U) == coeffs)


def test_interpolation_rejects_bad_input(tower9):
    U = norm_one_group(tower9, 9)
    with pytest.raises(ParameterError):
        interpolate_on_Un({int(U[0]): 1}, U)
    with pytest.raises(ParameterError):
        interpolate_on_Un(tower9.GF([1, 2]), U)


def test_monomials_interpolate_to_unit_vectors(tower9):
    U = norm_one_group(tower9, 9)
    coeffs = interpolate_on_Un(U ** 3, U)
    assert [int(c) for c in coeffs] == [0, 0, 0, 1, 0, 0, 0, 0, 0, 0]


def test_elementary_symmetric_agrees_with_bruteforce(rng):
    GF = build_tower(3, 4).GF
    points = GF(rng.choice(np.arange(1, 81), size=6, replace=False))
    for ell in range(7):
        assert elementary_symmetric(ell, points) == elementary_symmetric_bruteforce(ell, points)
    assert elementary_symmetric(0, points) == 1
    with pytest.raises(ParameterError):
        elementary_symmetric(7, points)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_deleted_row_vandermonde_is_the_determinant(n, rng):
    GF = build_tower(3, 4).GF
    points = GF(rng.choice(np.arange(1, 81), size=n, replace=False))
    for ell in range(n + 1):
        matrix = deleted_row_vandermonde_matrix(ell, points)
        assert matrix.shape == (n, n)
        assert determinant(matrix) == deleted_row_vandermonde(ell, points)


def test_deleted_row_vandermonde_needs_distinct_points():
    GF = build_tower(3, 4).GF
    with pytest.raises(ParameterError):
        deleted_row_vandermonde(1, GF([5, 5, 7]))


def test_symmetric_functions_accept_a_list_of_scalars(rng):
    GF = build_tower(3, 4).GF
    array = GF(rng.choice(np.arange(1, 81), size=4, replace=False))
    scalars = list(array)
    for ell in range(5):
        assert elementary_symmetric(ell, scalars) == elementary_symmetric(ell, array)
        assert elementary_symmetric_bruteforce(ell, scalars) == elementary_symmetric(ell, array)
        assert deleted_row_vandermonde(ell, scalars) == deleted_row_vandermonde(ell, array)
    assert deleted_row_vandermonde_matrix(2, scalars).shape == (4, 4)
    with pytest.raises(ParameterError):
        elementary_symmetric(0, [])
