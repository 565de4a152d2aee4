# tests/test_designs.py

import json
from fractions import Fraction

import pytest

from core import cyclic_codes as codes
from core import designs
from core.errors import ParameterError
from core.moebius import INFINITY
from core.schemas import DesignModel
from core.weight_tools import default_u0


def test_complete_design_certificate():
    cert = designs.verify_t_design(designs.complete_design(6, 3), 3)
    assert (cert.t, cert.v, cert.k, cert.lambda_) == (3, 6, 3, 1)
    assert cert.describe() == "3-(6,3,1) Steiner"
    assert designs.verify_t_design(designs.complete_design(6, 3), 2).describe() == "2-(6,3,4)"


def test_non_designs_get_no_certificate():
    assert designs.verify_t_design(designs.incidence_structure(4, [(0, 1, 2)]), 2) is None
    mixed = designs.incidence_structure(4, [(0, 1), (1, 2, 3)])
    assert mixed.k is None
    assert designs.verify_t_design(mixed, 1) is None


def test_blocks_must_stay_in_range():
    with pytest.raises(ParameterError):
        designs.incidence_structure(3, [(0, 3)])


def test_lambda_formula():
    assert designs.lambda_formula(3, 10, 4, designs.pgl2_order(9), designs.pgl2_order(3)) == 1
    assert designs.lambda_formula(3, 26, 6, designs.pgl2_order(25), designs.pgl2_order(5)) == 1
    assert designs.lambda_formula(2, 6, 3, 120, 12) == Fraction(2, 1)
    with pytest.raises(ParameterError):
        designs.lambda_formula(0, 6, 3, 120, 12)


def test_projective_line_layout():
    line = designs.projective_line(9)
    assert len(line) == 10
    assert line[-1] is INFINITY
    assert line[:-1] == sorted(line[:-1])


@pytest.mark.parametrize("q, delta, blocks", [(4, 2, 10), (9, 3, 30), (16, 4, 68)])
def test_orbit_design_is_a_steiner_system(q, delta, blocks):
    D = designs.orbit_design(q, delta)
    assert len(D.blocks) == blocks
    cert = designs.verify_t_design(D, 3, threads=2)
    assert cert.describe() == f"3-({q + 1},{delta + 1},1) Steiner"


def test_orbit_design_needs_a_subfield():
    with pytest.raises(ParameterError):
        designs.orbit_design(9, 2)
    with pytest.raises(ParameterError):
        designs.orbit_design(8, 4)


def test_support_design_is_the_orbit_design_through_the_bridge(bch9):
    support = designs.support_design(bch9, 4)
    orbit = designs.orbit_design(9, 3)
    assert designs.verify_t_design(support, 3).describe() == "3-(10,4,1) Steiner"
    bijection = designs.bridge_bijection(9, default_u0(9))
    assert designs.isomorphic_via(orbit, support, bijection)
    # shuffling two points breaks the block map
    broken = list(bijection)
    broken[0], broken[1] = broken[1], broken[0]
    assert not designs.isomorphic_via(orbit, support, broken)


def test_isomorphism_needs_a_bijection():
    D = designs.complete_design(4, 2)
    with pytest.raises(ParameterError):
        designs.isomorphic_via(D, D, [0, 0, 1, 2])


@pytest.mark.parametrize("q, delta, p", [(4, 2, 2), (9, 3, 3), (16, 4, 2)])
def test_p_rank_of_spherical_geometry(q, delta, p):
    assert designs.p_rank(designs.orbit_design(q, delta), p) == q + 1


@pytest.mark.parametrize("q, p, k, rank", [(9, 3, 3, 9), (9, 3, 4, 10), (4, 2, 2, 4), (4, 2, 3, 5)])
def test_p_rank_of_pgl_invariant_designs(q, p, k, rank):
    D = designs.pgl_orbit_design(q, range(k))
    assert designs.p_rank(D, p) == rank


def test_every_weight_class_of_a_small_code_holds_a_3_design(bch4):
    for side in (bch4, codes.dual(bch4)):
        for weight, D in designs.support_designs_by_weight(side).items():
            assert D.k == weight
            assert designs.verify_t_design(D, 3) is not None


def test_export_round_trips_through_the_schema():
    D = designs.orbit_design(4, 2)
    cert = designs.verify_t_design(D, 3)
    payload = designs.design_to_json(D, cert)
    model = DesignModel(**payload)
    assert json.loads(model.model_dump_json(by_alias=True))["lambda"] == 1
    rows = designs.incidence_text(D).splitlines()
    assert len(rows) == 10
    assert all(len(row) == 5 and row.count("1") == 3 for row in rows)
