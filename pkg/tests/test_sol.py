"""Sol geometry: group law, lattices, normalizer ladder, finite isometry
groups, centralizer triviality and the quadratic-field structure."""

import math
import random
from fractions import Fraction

import pytest

from geom3 import intmat
from geom3.algebra import QuadRat, galois_conjugate
from geom3.intmat import IntMat2, int_mat_pow, mat2_apply, mat2_inv
from geom3.sol import (
    SolPoint,
    sol_centralizer,
    sol_fixed_line,
    sol_inv,
    sol_lattice_make,
    sol_mul,
    sol_normalizer_lattice,
    sol_q_structure,
    sol_quotient_isometry,
    sol_unit,
)

A = IntMat2(2, 1, 1, 1)


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def test_conjugation_scales_the_fiber():
    t, u, v = 0.8, 1.5, -2.5
    g = SolPoint(0.0, 0.0, t)
    h = SolPoint(u, v, 0.0)
    conj = sol_mul(sol_mul(g, h), sol_inv(g))
    assert close(conj.x, math.exp(t) * u)
    assert close(conj.y, math.exp(-t) * v)
    assert close(conj.level, 0.0)


def test_fiber_translations_commute():
    a = SolPoint(1.0, 0.0, 0.0)
    b = SolPoint(0.0, 1.0, 0.0)
    ab = sol_mul(a, b)
    assert close(ab.x, 1.0) and close(ab.y, 1.0) and close(ab.level, 0.0)
    ba = sol_mul(b, a)
    assert close(ab.x, ba.x) and close(ab.y, ba.y)


def test_group_axioms_float():
    rng = random.Random(5)
    for _ in range(60):
        pts = [SolPoint(rng.uniform(-2, 2), rng.uniform(-2, 2),
                        rng.uniform(-1, 1)) for _ in range(3)]
        g, h, k = pts
        lhs = sol_mul(sol_mul(g, h), k)
        rhs = sol_mul(g, sol_mul(h, k))
        assert close(lhs.x, rhs.x) and close(lhs.y, rhs.y) \
            and close(lhs.level, rhs.level)
        gi = sol_mul(g, sol_inv(g))
        assert close(gi.x, 0) and close(gi.y, 0) and close(gi.level, 0)


def test_group_axioms_exact():
    lam = sol_unit(sol_lattice_make(A, 1))
    pts = [SolPoint.exact(Fraction(1), Fraction(2), 1, lam),
           SolPoint.exact(Fraction(-1, 2), Fraction(0), -2, lam),
           SolPoint.exact(Fraction(3), Fraction(1, 3), 1, lam)]
    g, h, k = pts
    lhs = sol_mul(sol_mul(g, h), k)
    rhs = sol_mul(g, sol_mul(h, k))
    assert lhs.x == rhs.x and lhs.y == rhs.y and lhs.level == rhs.level
    gi = sol_mul(g, sol_inv(g))
    assert gi.x == 0 and gi.y == 0 and gi.level == 0


def test_mode_mismatch():
    lam = sol_unit(sol_lattice_make(A, 1))
    with pytest.raises(ValueError):
        sol_mul(SolPoint(1.0, 0.0, 0.0),
                SolPoint.exact(Fraction(1), Fraction(0), 0, lam))


def test_fixed_line_values():
    p, q = sol_fixed_line(SolPoint(1.0, 1.0, math.log(2)))
    assert close(p, -1.0) and close(q, 2.0)
    p0, q0 = sol_fixed_line(SolPoint(1.0, 0.0, math.log(2)))
    assert close(p0, -1.0) and close(q0, 0.0)
    pz, qz = sol_fixed_line(SolPoint(0.0, 0.0, 0.7))
    assert close(pz, 0.0) and close(qz, 0.0)
    with pytest.raises(ValueError):
        sol_fixed_line(SolPoint(1.0, 1.0, 0.0))


def test_fixed_line_translation_property():
    rng = random.Random(9)
    for _ in range(100):
        g = SolPoint(rng.uniform(-3, 3), rng.uniform(-3, 3),
                     rng.choice([-1, 1]) * rng.uniform(0.1, 2.0))
        p, q = sol_fixed_line(g)
        s = rng.uniform(-2, 2)
        moved = sol_mul(g, SolPoint(p, q, s))
        assert close(moved.x, p) and close(moved.y, q)
        assert close(moved.level, g.level + s)


def test_lattice_validation():
    assert sol_lattice_make(A, 1).holonomy() == A
    assert sol_lattice_make(IntMat2(3, 1, 2, 1), 1).a.trace() == 4
    with pytest.raises(ValueError):
        sol_lattice_make(IntMat2(0, -1, 1, 0), 1)     # trace 0
    with pytest.raises(ValueError):
        sol_lattice_make(IntMat2(2, 0, 0, 2), 1)      # det 4
    with pytest.raises(ValueError):
        sol_lattice_make(A, 0)


def lattice_equal(basis1, basis2) -> bool:
    """Z-span equality via an integral unimodular change of basis."""
    m1 = ((basis1[0][0], basis1[1][0]), (basis1[0][1], basis1[1][1]))
    m2 = ((basis2[0][0], basis2[1][0]), (basis2[0][1], basis2[1][1]))
    change = intmat.mat2_mul(mat2_inv(m2), m1)
    entries = [change[i][j] for i in range(2) for j in range(2)]
    if any(e.denominator != 1 for e in entries):
        return False
    det = change[0][0] * change[1][1] - change[0][1] * change[1][0]
    return abs(det) == 1


def test_normalizer_ladder():
    n1 = sol_normalizer_lattice(sol_lattice_make(A, 1))
    assert n1.index == 1
    assert lattice_equal(n1.basis, ((Fraction(1), Fraction(0)),
                                    (Fraction(0), Fraction(1))))
    n2 = sol_normalizer_lattice(sol_lattice_make(A, 2))
    assert n2.index == 5
    fifth = ((Fraction(1, 5), Fraction(0)), (Fraction(0), Fraction(1, 5)))
    # Z^2 <= Lambda_2 <= (1/5) Z^2, each step of index 5
    assert all((5 * c).denominator == 1 for vec in n2.basis for c in vec)
    assert not lattice_equal(n2.basis, fifth)
    n5 = sol_normalizer_lattice(sol_lattice_make(A, 5))
    assert n5.index == 121
    eleventh = ((Fraction(1, 11), Fraction(0)), (Fraction(0), Fraction(1, 11)))
    assert lattice_equal(n5.basis, eleventh)


def test_holonomy_preserves_normalizer_lattice():
    for n in (1, 2, 3, 5):
        lat = sol_lattice_make(A, n)
        nrm = sol_normalizer_lattice(lat)
        hol = lat.holonomy()
        field = ((Fraction(hol.a), Fraction(hol.b)),
                 (Fraction(hol.c), Fraction(hol.d)))
        image = tuple(mat2_apply(field, vec) for vec in nrm.basis)
        assert lattice_equal(image, nrm.basis)


def test_quotient_isometry_table():
    d1 = sol_quotient_isometry(sol_lattice_make(A, 1))
    assert d1.identity_component == "trivial"
    assert d1.finite_part["order"] == 1
    assert d1.finite_part["structure"] == "trivial"
    d2 = sol_quotient_isometry(sol_lattice_make(A, 2))
    assert d2.finite_part["abelian_invariants"] == [5]
    assert d2.finite_part["cyclic_extension"] == 2
    assert d2.finite_part["order"] == 10
    d5 = sol_quotient_isometry(sol_lattice_make(A, 5))
    assert d5.finite_part["abelian_invariants"] == [11, 11]
    assert d5.finite_part["cyclic_extension"] == 5
    assert d5.finite_part["order"] == 605


def test_quotient_isometry_order_formula():
    rng = random.Random(21)
    count = 0
    while count < 12:
        tr = rng.randint(3, 10)
        b = rng.randint(1, 5)
        # build a matrix with trace tr and det 1: [[tr-d, b],[c, d]]
        d = rng.randint(0, tr - 1)
        num = (tr - d) * d - 1
        if num % b:
            continue
        c = num // b
        m = IntMat2(tr - d, b, c, d)
        if m.det() != 1 or m.trace() <= 2:
            continue
        n = rng.randint(1, 4)
        lat = sol_lattice_make(m, n)
        desc = sol_quotient_isometry(lat)
        hol = lat.holonomy()
        assert desc.finite_part["order"] == abs(2 - hol.trace()) * n
        snf = intmat.smith_normal_form(IntMat2.identity() - hol)
        assert desc.finite_part["order"] == snf.d1 * snf.d2 * n
        count += 1


def test_cokernel_bruteforce_oracle():
    from test_intmat import cokernel_order_bruteforce

    rng = random.Random(33)
    samples = 0
    while samples < 8:
        tr = rng.randint(3, 6)
        d = rng.randint(0, tr - 1)
        b = 1
        c = (tr - d) * d - 1
        m = IntMat2(tr - d, b, c, d)
        if m.det() != 1 or m.trace() <= 2:
            continue
        n = rng.randint(1, 3)
        hol = int_mat_pow(m, n)
        rel = IntMat2.identity() - hol
        if abs(rel.det()) > 800:
            continue
        snf = intmat.smith_normal_form(rel)
        assert cokernel_order_bruteforce(rel) == snf.d1 * snf.d2
        samples += 1


def test_cokernel_action_is_an_involution_for_n2():
    d2 = sol_quotient_isometry(sol_lattice_make(A, 2))
    action = d2.finite_part["action_on_invariants"]
    assert len(action) == 1
    val = action[0][1] % 5
    # the extension is genuinely twisted: the action has order exactly 2
    assert val != 1 and (val * val) % 5 == 1


def test_centralizer_trivial():
    for n in (1, 2, 5):
        res = sol_centralizer(sol_lattice_make(A, n))
        assert res["group"] == "trivial" and res["verified"]


def test_q_structure():
    q = sol_q_structure(A)
    assert q["d"] == 5
    assert q["eigenvalues"][0] == QuadRat(Fraction(3, 2), Fraction(1, 2), 5)
    assert q["galois_pair_check"] is True
    q2 = sol_q_structure(IntMat2(3, 1, 2, 1))
    assert q2["d"] == 3
    assert q2["eigenvalues"][0] == QuadRat(2, 1, 3)
    # sigma is an involution on the embedding pair
    twice = tuple(tuple(galois_conjugate(v) for v in row)
                  for row in q["basis_conjugate"])
    assert twice == q["basis"]
    with pytest.raises(ValueError):
        sol_q_structure(IntMat2(1, 1, 0, 1))


def test_exact_point_unit_powers():
    lam = sol_unit(sol_lattice_make(A, 1))
    assert lam * galois_conjugate(lam) == 1
    g = SolPoint.exact(Fraction(0), Fraction(0), 3, lam)
    assert g.scale() == lam ** 3
    assert g.scale_inv() == galois_conjugate(lam) ** 3


def test_json_shapes():
    lat = sol_lattice_make(A, 5)
    assert lat.to_json_dict() == {"matrix": [[2, 1], [1, 1]], "power": 5}
    nrm = sol_normalizer_lattice(lat).to_json_dict()
    assert nrm["index"] == 121
