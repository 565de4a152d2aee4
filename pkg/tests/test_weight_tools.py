# tests/test_weight_tools.py

import math

import numpy as np
import pytest

from core import cyclic_codes as codes
from core.errors import GuardExceeded, ParameterError
from core.field_tower import build_tower, in_norm_one_group, norm_one_group
from core.weight_tools import (
    WeightDistribution,
    all_codewords,
    batched_rank,
    binomial_divisibility_holds,
    colex_combinations,
    default_u0,
    exists_word_of_weight,
    explicit_min_word,
    iter_words_of_weight,
    krawtchouk,
    macwilliams,
    published_enumerators,
    solution_space,
    support_matrix,
    weight_distribution_exhaustive,
    weight_distribution_trace,
)

DUAL_9_3 = (1, 0, 0, 0, 0, 0, 240, 0, 2160, 2000, 2160)


def test_dual_distribution_by_trace_matches_exhaustive(dual9):
    traced = weight_distribution_trace(9, 3)
    assert traced.counts == DUAL_9_3
    assert traced.total == 9 ** 4
    assert weight_distribution_exhaustive(dual9) == traced


def test_dual_is_almost_mds(dual9):
    dist = weight_distribution_trace(9, 3)
    assert dist.min_distance == 6
    assert dual9.n - dual9.dimension == dist.min_distance


def test_smallest_code_and_its_dual(bch4):
    assert weight_distribution_exhaustive(bch4).counts == (1, 0, 0, 30, 15, 18)
    traced = weight_distribution_trace(4, 2)
    assert traced.counts == (1, 0, 0, 0, 15, 0)
    assert weight_distribution_exhaustive(codes.dual(bch4)) == traced
    assert macwilliams(traced, 5, 2, 4).counts == (1, 0, 0, 30, 15, 18)


def test_thread_count_does_not_change_the_result(dual9):
    single = weight_distribution_exhaustive(dual9, threads=1)
    assert weight_distribution_exhaustive(dual9, threads=4) == single


def test_macwilliams_of_the_dual_gives_the_primary_head():
    primary = macwilliams(WeightDistribution(DUAL_9_3), 10, 4, 9)
    assert primary.total == 9 ** 6
    assert primary.counts[:5] == (1, 0, 0, 0, 240)
    assert macwilliams(primary, 10, 6, 9).counts == DUAL_9_3


@pytest.mark.slow
def test_macwilliams_matches_exhaustive_primary(bch9):
    primary = weight_distribution_exhaustive(bch9, threads=4)
    assert primary == macwilliams(WeightDistribution(DUAL_9_3), 10, 4, 9)


def test_macwilliams_rejects_inconsistent_distributions():
    with pytest.raises(ParameterError):
        macwilliams(WeightDistribution((1, 1, 2)), 2, 1, 3)
    with pytest.raises(ParameterError):
        macwilliams(WeightDistribution((1, 2)), 2, 1, 3)


def test_repetition_code_distribution():
    rep = codes.cyclic_code(3, 4, {0})
    dist = weight_distribution_exhaustive(rep)
    assert dist.counts == (1, 0, 0, 0, 2)
    parity = macwilliams(dist, 4, 1, 3)
    assert parity.total == 27
    assert parity.counts == (1, 0, 12, 8, 6)


def test_krawtchouk_base_cases():
    assert krawtchouk(0, 3, 10, 9) == 1
    assert krawtchouk(1, 0, 10, 9) == 80
    assert krawtchouk(1, 1, 10, 9) == 10 * 8 - 9


def test_guard_stops_large_enumerations(bch9):
    with pytest.raises(GuardExceeded):
        weight_distribution_exhaustive(bch9, max_messages=1000)
    with pytest.raises(GuardExceeded):
        weight_distribution_trace(9, 3, max_params=100)
    with pytest.raises(GuardExceeded):
        exists_word_of_weight(bch9, 4, max_supports=10)


def test_distribution_serializes_as_decimal_strings():
    primary, _ = published_enumerators()
    encoded = primary.to_json()
    assert encoded[6] == "3120"
    assert int(encoded[26]) == primary[26]


def test_colex_order():
    assert list(colex_combinations(4, 2)) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    assert sum(1 for _ in colex_combinations(10, 4)) == math.comb(10, 4)


def test_support_matrix_shape(bch9):
    M = support_matrix(3, bch9.points[:4])
    assert M.shape == (4, 4)
    assert np.all(M[1] * M[2] == 1)


def test_batched_rank_matches_matrix_rank(rng):
    GF = build_tower(3, 4).GF
    stack = GF(rng.integers(0, 81, size=(20, 4, 5)))
    stack[3] = 0
    stack[5, 1] = stack[5, 0]
    expected = [int(np.linalg.matrix_rank(m)) if np.any(m != 0) else 0 for m in stack]
    assert batched_rank(stack).tolist() == expected


@pytest.mark.parametrize("q, delta", [(4, 2), (9, 3), (16, 4)])
def test_no_words_up_to_designed_distance(q, delta):
    C = codes.antiprimitive_bch(q, delta)
    for w in range(1, delta + 1):
        assert exists_word_of_weight(C, w) is None
    found = exists_word_of_weight(C, delta + 1)
    assert found is not None
    support, word = found
    assert len(support) == delta + 1 and codes.contains(C, word)


def test_minimum_words_come_one_per_nonzero_scalar(bch4):
    words = list(iter_words_of_weight(bch4, 3))
    assert len(words) == 30
    assert len({support for support, _ in words}) == 10
    supports = [support for support, _ in words]
    assert supports == sorted(supports, key=lambda s: tuple(reversed(s)))


def test_solution_space_on_a_minimum_support_is_a_line(bch9):
    support, _ = exists_word_of_weight(bch9, 4)
    assert solution_space(bch9, support).shape[0] == 1


def test_explicit_min_word_for_every_u0(bch9):
    GF = bch9.tower.GF
    for u in norm_one_group(bch9.tower, 9):
        if u == 1 or u == -GF(1):
            continue
        word = explicit_min_word(9, 3, int(u))
        assert codes.weight(word) == 4
        assert codes.contains(bch9, word)
        assert word[0] == 1


def test_explicit_min_word_rejects_degenerate_u0(bch9):
    GF = bch9.tower.GF
    with pytest.raises(ParameterError):
        explicit_min_word(9, 3, 1)
    with pytest.raises(ParameterError):
        explicit_min_word(9, 3, int(-GF(1)))
    outside = next(int(x) for x in GF.elements[1:] if not in_norm_one_group(x, 9))
    with pytest.raises(ParameterError):
        explicit_min_word(9, 3, outside)
    with pytest.raises(ParameterError):
        explicit_min_word(9, 2, default_u0(9))


def test_explicit_min_word_at_delta_4():
    word = explicit_min_word(16, 4, default_u0(16))
    assert codes.weight(word) == 5
    assert codes.contains(codes.antiprimitive_bch(16, 4), word)


def test_all_codewords_are_distinct(bch4):
    words = all_codewords(bch4)
    assert words.shape == (64, 5)
    assert len({tuple(int(v) for v in row) for row in words}) == 64


def test_published_q25_enumerators_are_consistent():
    primary, dual_dist = published_enumerators()
    assert primary.total == 25 ** 18
    assert dual_dist.total == 25 ** 8
    assert primary[6] == 3120
    assert macwilliams(dual_dist, 26, 8, 25) == primary
    assert dual_dist[18] == 24 * 21522 * math.comb(26, 3) // math.comb(18, 3) == 1645800


@pytest.mark.slow
def test_q25_minimum_words_number_3120():
    C = codes.antiprimitive_bch(25, 5)
    words = list(iter_words_of_weight(C, 6))
    assert len({support for support, _ in words}) == 130
    assert len(words) == 3120


@pytest.mark.parametrize("delta", [2, 3, 4, 5, 8, 9])
def test_binomial_divisibility(delta):
    assert binomial_divisibility_holds(delta)
