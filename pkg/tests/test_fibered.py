"""Sasaki metric on the unit tangent bundle, and S^2 x R decompositions."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from geom3.fibered import (
    LAMBDA_Z,
    LAMBDA_Z_SEMIDIRECT,
    S1_ONLY,
    S1_X_S1,
    SL2_BASIS,
    SO3_X_S1,
    TRIVIAL_L,
    NonDiscreteShiftError,
    S2R_ROT_ID,
    S2RIsometry,
    TangentVector,
    christoffel_h2,
    frame_at_identity,
    hv_decompose,
    psl2_quotient_isometry,
    s2r_decompose,
    s2r_quotient_identity_component,
    s2r_rotation_z,
    sasaki_inner,
    sasaki_norm,
    tangent_action,
    unit_tangent_embed,
)
from geom3.hyperbolic import MobiusMap, expm_sl2
from test_hyperbolic import random_sl2

RHO_Z = ((-1, 0, 0), (0, -1, 0), (0, 0, 1))
RHO_X = ((1, 0, 0), (0, -1, 0), (0, 0, -1))


def test_christoffel_display():
    assert christoffel_h2(1j, 1, 2, 1) == -1.0
    assert christoffel_h2(1j, 2, 1, 1) == -1.0
    assert christoffel_h2(1j, 2, 2, 2) == -1.0
    assert christoffel_h2(2j, 1, 1, 2) == 0.5
    assert christoffel_h2(1j, 1, 1, 1) == 0.0
    assert christoffel_h2(1j, 2, 2, 1) == 0.0
    with pytest.raises(ValueError):
        christoffel_h2(-1j, 1, 1, 1)
    with pytest.raises(ValueError):
        christoffel_h2(1j, 0, 1, 1)


def test_sasaki_norm_examples():
    assert abs(sasaki_norm(TangentVector(1j, 1, 0, 2j)) - 2.0) < 1e-12
    assert sasaki_norm(TangentVector(1j, 1, 0, 0)) == 0.0
    t1 = TangentVector(1j, 1, 2j, 2)
    t3 = TangentVector(1j, 1, 2, -2j)
    assert abs(sasaki_inner(t1, t3)) < 1e-12
    assert abs(sasaki_norm(t1) - sasaki_norm(t3)) < 1e-12


def test_hv_decompose_displayed_split():
    # at (i, 1): vertical part (0, Z - X^2 + X^1 i)
    rng = random.Random(3)
    for _ in range(25):
        x = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        t = TangentVector(1j, 1, x, z)
        h, v = hv_decompose(t)
        assert abs(v.vec_Z - (z - x.imag + x.real * 1j)) < 1e-12
        assert abs(h.vec_Z - (x.imag - x.real * 1j)) < 1e-12


def test_hv_decompose_general_points():
    rng = random.Random(5)
    for _ in range(40):
        base = complex(rng.uniform(-2, 2), rng.uniform(0.3, 3))
        t = TangentVector(base,
                          complex(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                          complex(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                          complex(rng.uniform(-2, 2), rng.uniform(-2, 2)))
        h, v = hv_decompose(t)
        assert abs(h.vec_X + v.vec_X - t.vec_X) < 1e-12
        assert abs(h.vec_Z + v.vec_Z - t.vec_Z) < 1e-12
        assert abs(sasaki_inner(h, v)) < 1e-10
        assert v.vec_X == 0


def test_embed_examples():
    z, w = unit_tangent_embed(MobiusMap.identity())
    assert abs(z - 1j) < 1e-12 and abs(w - 1) < 1e-12
    t = 0.43
    z1, w1 = unit_tangent_embed(expm_sl2(SL2_BASIS[0], t))
    assert abs(z1 - math.exp(2 * t) * 1j) < 1e-10
    assert abs(w1 - math.exp(2 * t)) < 1e-10
    z2, w2 = unit_tangent_embed(expm_sl2(SL2_BASIS[1], t))
    assert abs(z2 - 1j) < 1e-10
    assert abs(w2 - complex(math.cos(2 * t), math.sin(2 * t))) < 1e-10


def test_embed_is_equivariant_and_unit():
    rng = random.Random(7)
    for _ in range(100):
        m1, m2 = random_sl2(rng), random_sl2(rng)
        direct = unit_tangent_embed(m1.compose(m2))
        staged = tangent_action(m1, unit_tangent_embed(m2))
        assert abs(direct[0] - staged[0]) < 1e-10
        assert abs(direct[1] - staged[1]) < 1e-10
        z, w = direct
        assert abs(abs(w) / z.imag - 1.0) < 1e-10


def test_frame_matches_display_and_is_orthonormal():
    frame = frame_at_identity()
    refs = ((2j, 2), (0, 2j), (2, -2j))
    for v, (rx, rz) in zip(frame, refs):
        assert abs(v.vec_X - rx) < 1e-5
        assert abs(v.vec_Z - rz) < 1e-5
    halves = [TangentVector(1j, 1, v.vec_X / 2, v.vec_Z / 2) for v in frame]
    for i, j in itertools.combinations_with_replacement(range(3), 2):
        inner = sasaki_inner(halves[i], halves[j])
        assert abs(inner - (1.0 if i == j else 0.0)) < 1e-8


def test_s2r_compose_inverse():
    g = S2RIsometry(s2r_rotation_z(0.8), 1.5, flip=-1)
    h = S2RIsometry(RHO_X, -0.4)
    prod = g.compose(h)
    assert prod.flip == -1
    gi = g.compose(g.inverse())
    assert abs(float(gi.shift)) < 1e-12 and gi.flip == 1


def test_s2r_decompose_irrational_twist():
    dec = s2r_decompose([S2RIsometry(s2r_rotation_z(1.0), 1.0)])
    assert dec.l_type == LAMBDA_Z
    assert abs(float(dec.lam) - 1.0) < 1e-12
    assert dec.f_order_bound == 1


def test_s2r_decompose_with_finite_part():
    dec = s2r_decompose([S2RIsometry(S2R_ROT_ID, Fraction(1)),
                         S2RIsometry(RHO_Z, Fraction(0))])
    assert dec.l_type == LAMBDA_Z
    assert dec.lam == 1
    assert dec.f_order_bound == 2


def test_s2r_decompose_flip():
    dec = s2r_decompose([S2RIsometry(S2R_ROT_ID, Fraction(1)),
                         S2RIsometry(S2R_ROT_ID, Fraction(0), flip=-1)])
    assert dec.l_type == LAMBDA_Z_SEMIDIRECT
    assert dec.lam == 1


def test_s2r_trivial_l():
    dec = s2r_decompose([S2RIsometry(RHO_Z, Fraction(0))])
    assert dec.l_type == TRIVIAL_L
    with pytest.raises(ValueError):
        s2r_quotient_identity_component(dec)


def test_s2r_recompose_generators():
    gens = [S2RIsometry(s2r_rotation_z(1.0), 2.0),
            S2RIsometry(RHO_Z, 0.0)]
    dec = s2r_decompose(gens)
    lam = float(dec.lam)
    twist = S2RIsometry(dec.twist, lam)
    f_elems = [S2RIsometry(r, 0.0) for r in dec.f_elements]
    for g in gens:
        k = round(float(g.shift) / lam)
        resid = g.compose(
            S2RIsometry(twist.rot, twist.shift).inverse() if k == 1
            else _pow(twist, k).inverse())
        assert abs(float(resid.shift)) < 1e-9
        assert any(resid.key()[0] == f.key()[0] for f in f_elems)


def _pow(iso, k):
    out = S2RIsometry(S2R_ROT_ID, 0.0)
    step = iso if k >= 0 else iso.inverse()
    for _ in range(abs(k)):
        out = out.compose(step)
    return out


def test_s2r_nondiscrete_signalled():
    golden = (math.sqrt(5) - 1) / 2
    gens = [S2RIsometry(S2R_ROT_ID, 1.0),
            S2RIsometry(S2R_ROT_ID, golden)]
    with pytest.raises(NonDiscreteShiftError):
        s2r_decompose(gens)


def test_s2r_identity_components():
    product = s2r_decompose([S2RIsometry(S2R_ROT_ID, 1.0)])
    assert s2r_quotient_identity_component(product) == SO3_X_S1
    twist = s2r_decompose([S2RIsometry(s2r_rotation_z(1.0), 1.0)])
    assert s2r_quotient_identity_component(twist) == S1_X_S1
    klein = s2r_decompose([S2RIsometry(S2R_ROT_ID, 1.0),
                           S2RIsometry(RHO_Z, 0.0),
                           S2RIsometry(RHO_X, 0.0)])
    assert s2r_quotient_identity_component(klein) == S1_ONLY
    # minus the identity in O(3) is central: still the full component
    minus = s2r_decompose([S2RIsometry(((-1, 0, 0), (0, -1, 0), (0, 0, -1)),
                                       1.0)])
    assert s2r_quotient_identity_component(minus) == SO3_X_S1


def test_psl2_quotient_isometry():
    for geom in ("psl2", "h2xr", "sl2r"):
        d = psl2_quotient_isometry(geom)
        assert d.identity_component == "S1"
        assert d.finite_part["structure"] == "unspecified finite group F"
    with pytest.raises(ValueError):
        psl2_quotient_isometry("nil")
    with pytest.raises(ValueError):
        psl2_quotient_isometry("sl2r", "divergent")


def test_tangent_vector_validation():
    with pytest.raises(ValueError):
        TangentVector(-1j, 1, 0, 0)
    blob = TangentVector(1j, 1, 2j, 2).to_json_dict()
    assert blob == {"z": [0.0, 1.0], "w": [1.0, 0.0],
                    "X": [0.0, 2.0], "Z": [2.0, 0.0]}
