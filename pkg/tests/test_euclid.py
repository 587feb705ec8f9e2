"""Crystallographic ranks, Betti numbers with their integral oracle, the
planar worked isometry groups, and the lookup tables."""

import json
from fractions import Fraction

import pytest

from geom3.descriptors import canonical_json
from geom3.euclid import (
    FINITE_VOLUME_COMPACT,
    INFINITE_VOLUME,
    NonSymmorphicError,
    betti_identity_component,
    coinvariant_rank,
    crystal_group_make,
    euclid_quotient_isometry,
    euclid_volume_verdict,
    lookup_table_version,
    preset_crystal,
    spherical_components_lookup,
    translation_rank,
)

HALF = Fraction(1, 2)

ROT90 = ((0, -1), (1, 0))
REFL_Y = ((1, 0), (0, -1))
SWAP = ((0, 1), (1, 0))
MINUS2 = ((-1, 0), (0, -1))

ROT90_Z = ((0, -1, 0), (1, 0, 0), (0, 0, 1))
REFL_Z = ((1, 0, 0), (0, 1, 0), (0, 0, -1))
MINUS3 = ((-1, 0, 0), (0, -1, 0), (0, 0, -1))
CYCLE = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
FLIPXY = ((-1, 0, 0), (0, -1, 0), (0, 0, 1))

Z2_BASIS = [(1, 0), (0, 1)]
RECT_BASIS = [(1, 0), (0, 2)]
CENTERED_BASIS = [(1, 0), (HALF, HALF)]
Z3_BASIS = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
RECT3_BASIS = [(1, 0, 0), (0, 1, 0), (0, 0, 2)]


def test_translation_rank():
    assert translation_rank(preset_crystal("Z3")) == 3
    assert translation_rank(preset_crystal("screw")) == 1
    assert translation_rank(preset_crystal("slab")) == 2
    assert translation_rank(preset_crystal("Z2")) == 2


def test_rank_is_basis_invariant():
    g1 = crystal_group_make([], [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    # unimodular change of basis
    g2 = crystal_group_make([], [(1, 1, 0), (0, 1, 0), (3, 2, 1)])
    assert translation_rank(g1) == translation_rank(g2) == 3
    g3 = crystal_group_make([], [(1, 1, 0), (2, 2, 0)], dim=3)
    assert translation_rank(g3) == 1


def test_volume_verdict():
    assert euclid_volume_verdict(preset_crystal("screw")) == INFINITE_VOLUME
    assert euclid_volume_verdict(preset_crystal("slab")) == INFINITE_VOLUME
    assert euclid_volume_verdict(preset_crystal("Z3")) \
        == FINITE_VOLUME_COMPACT
    with pytest.raises(ValueError):
        euclid_volume_verdict(preset_crystal("Z2"))


def test_validation():
    with pytest.raises(ValueError):
        crystal_group_make([((1, 1), (0, 1))], Z2_BASIS)   # not orthogonal
    with pytest.raises(ValueError):
        crystal_group_make([ROT90], RECT_BASIS)   # does not preserve lattice


def test_betti_examples():
    assert betti_identity_component(preset_crystal("Z3")) == (3, "T3")
    assert betti_identity_component(preset_crystal("Z2xD4")) \
        == (0, "trivial")
    assert betti_identity_component(preset_crystal("Z3xD4xy")) == (1, "S1")


def test_non_symmorphic_rejected():
    g = crystal_group_make([REFL_Y], Z2_BASIS, vector_system=[(HALF, 0)])
    with pytest.raises(NonSymmorphicError):
        betti_identity_component(g)
    # integral vector systems are the split case and pass
    g2 = crystal_group_make([REFL_Y], Z2_BASIS, vector_system=[(1, 0)])
    assert betti_identity_component(g2) == (1, "S1")


GRID = [
    ([], Z2_BASIS),
    ([MINUS2], Z2_BASIS),
    ([REFL_Y], Z2_BASIS),
    ([SWAP], Z2_BASIS),
    ([ROT90], Z2_BASIS),
    ([ROT90, REFL_Y], Z2_BASIS),
    ([REFL_Y, ((-1, 0), (0, 1))], Z2_BASIS),
    ([], RECT_BASIS),
    ([MINUS2], RECT_BASIS),
    ([REFL_Y], RECT_BASIS),
    ([], CENTERED_BASIS),
    ([SWAP], CENTERED_BASIS),
    ([MINUS2], CENTERED_BASIS),
    ([], Z3_BASIS),
    ([MINUS3], Z3_BASIS),
    ([ROT90_Z], Z3_BASIS),
    ([ROT90_Z, ((1, 0, 0), (0, -1, 0), (0, 0, 1))], Z3_BASIS),
    ([REFL_Z], Z3_BASIS),
    ([CYCLE], Z3_BASIS),
    ([FLIPXY], Z3_BASIS),
    ([CYCLE, MINUS3], Z3_BASIS),
    ([], RECT3_BASIS),
    ([ROT90_Z], RECT3_BASIS),
    ([REFL_Z], RECT3_BASIS),
    ([ROT90_Z, REFL_Z], RECT3_BASIS),
]


def test_betti_agrees_with_abelianization_rank_on_grid():
    assert len(GRID) >= 20
    for gens, basis in GRID:
        g = crystal_group_make(gens, basis)
        betti, _ = betti_identity_component(g)
        assert betti == coinvariant_rank(g), (gens, basis)


def test_quotient_isometry_z2():
    d = euclid_quotient_isometry(preset_crystal("Z2"))
    assert d.identity_component == "T2"
    assert d.finite_part["structure"] == "D4"
    assert d.finite_part["order"] == 8


def test_quotient_isometry_z2_d4():
    d = euclid_quotient_isometry(preset_crystal("Z2xD4"))
    assert d.identity_component == "trivial"
    assert d.total_order == 2
    assert d.finite_part["structure"] == "Z2"


def test_quotient_isometry_z3():
    d = euclid_quotient_isometry(preset_crystal("Z3"))
    assert d.identity_component == "T3"
    assert d.finite_part["order"] is None


def test_lookup_families():
    rows = spherical_components_lookup(
        "spherical-orbifold-orientation-preserving")
    assert sorted(r["identity_component"] for r in rows) \
        == ["S1", "S1xS1", "trivial"]
    man = spherical_components_lookup("spherical-manifold")
    assert {"SO(4)", "SO(3)", "O(4)", "O(2)", "O(2)xO(2)", "S1 x_Z2 S1"} \
        <= {r["identity_component"] for r in man}
    acts = spherical_components_lookup("s2xr-free-finite-actions")
    assert sorted(r["data"]["group"] for r in acts) \
        == ["D_n", "Z/p", "Z/pxZ/2"]
    tollefson = spherical_components_lookup("s2xr-manifolds")
    assert len(tollefson) == 4
    with pytest.raises(ValueError):
        spherical_components_lookup("not-a-family")


def test_lookup_round_trip_bit_exact():
    rows = spherical_components_lookup("all")
    blob = canonical_json(rows)
    again = canonical_json(json.loads(blob))
    assert blob == again
    assert isinstance(lookup_table_version(), int)
