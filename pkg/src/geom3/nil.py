"""Heisenberg group over exact scalars and isometry groups of its quotients.

Points carry the global coordinates (x, y, z) of the unipotent upper
triangular matrix with rows (1, x, z), (0, 1, y), (0, 0, 1).  The isometry
group splits as the group itself (left translations) extended by O(2); the
O(2) part is restricted to the finite-order rotations and reflections that
are exactly representable over Q or Q(sqrt(3)), which are precisely the
ones that can stabilize a planar lattice.

An orthogonal matrix A acts as the group automorphism

    (v, z)  |->  (A v, det(A) * (z - v1*v2/2) + (Av)1*(Av)2/2),

the unique isometric lift: in the shifted coordinate Z = z - x*y/2 the
group law is symmetric under A and the action is linear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .algebra import QuadRat, Scalar, as_exact, format_scalar, scalar_is_rational
from .descriptors import IsoDescriptor
from .intmat import (
    MAT2_ID,
    Mat2,
    Vec2,
    mat2_apply,
    mat2_det,
    mat2_eq,
    mat2_inv,
    mat2_mul,
    mat2_transpose,
    vec2_cross,
    vec2_dot,
    vec2_sub,
)

HALF = Fraction(1, 2)


def _is_integral(x: Scalar) -> bool:
    if isinstance(x, int):
        return True
    if isinstance(x, Fraction):
        return x.denominator == 1
    if isinstance(x, QuadRat):
        return x.b == 0 and x.a.denominator == 1
    return False


def _to_int(x: Scalar) -> int:
    if isinstance(x, QuadRat):
        return int(x.a)
    return int(x)


# -- points -------------------------------------------------------------------

@dataclass(frozen=True)
class HeisPoint:
    """Group element with global coordinates (x, y, z), all exact."""

    x: Scalar
    y: Scalar
    z: Scalar

    @classmethod
    def of(cls, x, y, z) -> "HeisPoint":
        return cls(as_exact(x), as_exact(y), as_exact(z))

    def planar(self) -> Vec2:
        return (self.x, self.y)

    def is_identity(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def to_json(self):
        return [format_scalar(self.x), format_scalar(self.y),
                format_scalar(self.z)]


HEIS_ID = HeisPoint(Fraction(0), Fraction(0), Fraction(0))


def heis_mul(g: HeisPoint, h: HeisPoint) -> HeisPoint:
    """(x,y,z)*(u,v,w) = (x+u, y+v, z+w+x*v)."""
    return HeisPoint(g.x + h.x, g.y + h.y, g.z + h.z + g.x * h.y)


def heis_inv(g: HeisPoint) -> HeisPoint:
    return HeisPoint(-g.x, -g.y, g.x * g.y - g.z)


def heis_pow(g: HeisPoint, k: int) -> HeisPoint:
    """g**k = (k x, k y, k z + C(k,2) x y), valid for every integer k."""
    binom = k * (k - 1) // 2
    return HeisPoint(k * g.x, k * g.y, k * g.z + binom * g.x * g.y)


def heis_commutator(g: HeisPoint, h: HeisPoint) -> HeisPoint:
    """Central element (0, 0, area of the projected vectors)."""
    return HeisPoint(Fraction(0), Fraction(0),
                     g.x * h.y - h.x * g.y)


def heis_conjugate(g: HeisPoint, t: HeisPoint) -> HeisPoint:
    """g t g^{-1} = (t1, t2, t3 + x*t2 - y*t1) for g = (x, y, .)."""
    return HeisPoint(t.x, t.y, t.z + g.x * t.y - g.y * t.x)


# -- the O(2) part ------------------------------------------------------------

def rot_apply(rot: Mat2, p: HeisPoint) -> HeisPoint:
    """Apply the isometric automorphism attached to an orthogonal matrix."""
    det = mat2_det(rot)
    w = mat2_apply(rot, (p.x, p.y))
    z = det * (p.z - p.x * p.y * HALF) + w[0] * w[1] * HALF
    return HeisPoint(w[0], w[1], z)


def _orthogonal_order(rot: Mat2) -> int:
    """Order of an exactly representable orthogonal matrix.

    The representable finite rotations over Q and Q(sqrt(3)) have order
    dividing 12; the crystallographic orders {1, 2, 3, 4, 6} are the ones
    that can stabilize a lattice, but words in such rotations about
    different centers may still pass through order-12 elements.
    """
    if not mat2_eq(mat2_mul(mat2_transpose(rot), rot), MAT2_ID):
        raise ValueError("rotation part must be orthogonal")
    power = rot
    for k in range(1, 13):
        if mat2_eq(power, MAT2_ID):
            if 12 % k:
                raise ValueError(f"order {k} is not exactly representable")
            return k
        power = mat2_mul(power, rot)
    raise ValueError("rotation part must have finite order dividing 12")


ROT_PI = ((-1, 0), (0, -1))
ROT_PI_2 = ((0, -1), (1, 0))
ROT_PI_3: Mat2 = ((HALF, QuadRat(0, -HALF, 3)),
                  (QuadRat(0, HALF, 3), HALF))
REFLECT = ((1, 0), (0, -1))


@dataclass(frozen=True)
class HeisIsometry:
    """Isometry p |-> trans * sigma_rot(p); rot orthogonal of finite order."""

    rot: Mat2
    trans: HeisPoint

    def __post_init__(self):
        _orthogonal_order(self.rot)

    @classmethod
    def translation(cls, p: HeisPoint) -> "HeisIsometry":
        return cls(MAT2_ID, p)

    @classmethod
    def point_symmetry(cls, rot: Mat2) -> "HeisIsometry":
        return cls(rot, HEIS_ID)

    def apply(self, p: HeisPoint) -> HeisPoint:
        return heis_mul(self.trans, rot_apply(self.rot, p))

    def compose(self, other: "HeisIsometry") -> "HeisIsometry":
        return HeisIsometry(mat2_mul(self.rot, other.rot),
                            heis_mul(self.trans,
                                     rot_apply(self.rot, other.trans)))

    def inverse(self) -> "HeisIsometry":
        rot_inv = mat2_transpose(self.rot)
        return HeisIsometry(rot_inv, rot_apply(rot_inv, heis_inv(self.trans)))

    def conjugate_translation(self, h: HeisPoint) -> HeisPoint:
        """phi L_h phi^{-1} = L_{trans * sigma(h) * trans^{-1}}."""
        return heis_conjugate(self.trans, rot_apply(self.rot, h))

    def is_identity(self) -> bool:
        return mat2_eq(self.rot, MAT2_ID) and self.trans.is_identity()

    def planar_part(self) -> tuple[Mat2, Vec2]:
        """Induced isometry of the plane: p |-> rot p + w."""
        return self.rot, self.trans.planar()


HEIS_ISO_ID = HeisIsometry(MAT2_ID, HEIS_ID)


# -- lattices -----------------------------------------------------------------

@dataclass(frozen=True)
class NilLattice:
    """Lattice generated by (u, r), (v, s) and the central (0, 0, lam/n)."""

    u: Vec2
    v: Vec2
    r: Scalar
    s: Scalar
    n: int
    lam: Scalar

    def generators(self) -> list[HeisPoint]:
        return [HeisPoint(self.u[0], self.u[1], self.r),
                HeisPoint(self.v[0], self.v[1], self.s),
                HeisPoint(Fraction(0), Fraction(0), self.center_step())]

    def center_step(self) -> Scalar:
        lam = self.lam
        if isinstance(lam, int):
            lam = Fraction(lam)
        return lam / self.n

    def planar_coords(self, w: Vec2) -> Optional[tuple[Scalar, Scalar]]:
        """Coordinates (k, l) with k u + l v = w, or None if non-integral."""
        basis = ((self.u[0], self.v[0]), (self.u[1], self.v[1]))
        k, l = mat2_apply(mat2_inv(basis), w)
        if _is_integral(k) and _is_integral(l):
            return (_to_int(k), _to_int(l))
        return None

    def word_z(self, k: int, l: int) -> Scalar:
        """z coordinate of (u,r)^k (v,s)^l."""
        return (k * self.r + l * self.s
                + (k * (k - 1) // 2) * self.u[0] * self.u[1]
                + (l * (l - 1) // 2) * self.v[0] * self.v[1]
                + k * l * self.u[0] * self.v[1])

    def contains(self, p: HeisPoint) -> bool:
        coords = self.planar_coords(p.planar())
        if coords is None:
            return False
        resid = (p.z - self.word_z(*coords)) / self.center_step()
        return _is_integral(resid)

    def to_json_dict(self) -> dict:
        return {
            "u": [format_scalar(self.u[0]), format_scalar(self.u[1])],
            "v": [format_scalar(self.v[0]), format_scalar(self.v[1])],
            "r": format_scalar(self.r),
            "s": format_scalar(self.s),
            "n": self.n,
            "lambda": format_scalar(self.lam),
        }


def nil_lattice_make(u, v, r=0, s=0, n: int = 1) -> NilLattice:
    """Validated lattice descriptor; u, v must be linearly independent."""
    u = (as_exact(u[0]), as_exact(u[1]))
    v = (as_exact(v[0]), as_exact(v[1]))
    lam = vec2_cross(u, v)
    if lam == 0:
        raise ValueError("u and v are linearly dependent")
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    return NilLattice(u, v, as_exact(r), as_exact(s), n, lam)


def lattice_hz() -> NilLattice:
    return nil_lattice_make((1, 0), (0, 1))


def lattice_gp(p: int) -> NilLattice:
    return nil_lattice_make((1, 0), (0, 1), n=p)


def lattice_hex(p: int) -> NilLattice:
    u = (HALF, QuadRat(0, HALF, 3))
    return nil_lattice_make(u, (1, 0), n=p)


def nil_center_intersection(lat: NilLattice) -> Scalar:
    """Positive generator of (lattice) intersect Z(H)."""
    return abs(lat.center_step())


@dataclass(frozen=True)
class NilNormalizer:
    """Normalizer in the group: planar lattice refined by n, full line in z."""

    lattice: NilLattice
    planar_u: Vec2
    planar_v: Vec2
    index: int                      # index of the projected lattice refinement

    def planar_generators(self) -> list[HeisPoint]:
        return [HeisPoint(self.planar_u[0], self.planar_u[1], Fraction(0)),
                HeisPoint(self.planar_v[0], self.planar_v[1], Fraction(0))]

    def contains_translation(self, p: HeisPoint) -> bool:
        basis = ((self.planar_u[0], self.planar_v[0]),
                 (self.planar_u[1], self.planar_v[1]))
        k, l = mat2_apply(mat2_inv(basis), p.planar())
        return _is_integral(k) and _is_integral(l)

    def to_json_dict(self) -> dict:
        return {
            "planar_u": [format_scalar(self.planar_u[0]),
                         format_scalar(self.planar_u[1])],
            "planar_v": [format_scalar(self.planar_v[0]),
                         format_scalar(self.planar_v[1])],
            "z": "R",
            "index": self.index,
        }


def nil_normalizer(lat: NilLattice) -> NilNormalizer:
    """Translations normalizing the lattice: (k/n) u + (l/n) v, any z.

    Conjugation shifts z-levels by the cross product with the projection,
    so the planar part is constrained to the n-fold refinement of the
    projected lattice while the z-axis is free.
    """
    inv_n = Fraction(1, lat.n)
    return NilNormalizer(
        lattice=lat,
        planar_u=(lat.u[0] * inv_n, lat.u[1] * inv_n),
        planar_v=(lat.v[0] * inv_n, lat.v[1] * inv_n),
        index=lat.n ** 2,
    )


# -- planar point groups ------------------------------------------------------

_PG_TAGS = {2: "C2", 4: "D2", 8: "D4", 12: "D6"}


@dataclass(frozen=True)
class PlanarPointGroup:
    """Full orthogonal stabilizer of a planar lattice."""

    tag: str
    elements: tuple[Mat2, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def rotations(self) -> list[Mat2]:
        return [m for m in self.elements if mat2_det(m) == 1]

    def has_reflection(self) -> bool:
        return any(mat2_det(m) == -1 for m in self.elements)


def _supported_planar_scalar(x: Scalar) -> bool:
    return scalar_is_rational(x) or (isinstance(x, QuadRat) and x.d == 3)


def _vectors_of_norm(u: Vec2, v: Vec2, target: Scalar) -> list[Vec2]:
    """All k u + l v with |k u + l v|^2 == target, by bounded enumeration."""
    g11 = float(vec2_dot(u, u))
    g12 = float(vec2_dot(u, v))
    g22 = float(vec2_dot(v, v))
    # smallest eigenvalue of the Gram matrix bounds the search box
    half_tr = (g11 + g22) / 2.0
    rad = math.sqrt(((g11 - g22) / 2.0) ** 2 + g12 * g12)
    lam_min = half_tr - rad
    if lam_min <= 0:
        raise ValueError("degenerate Gram matrix")
    bound = int(math.floor(math.sqrt(float(target) / lam_min) * 1.001)) + 1
    out = []
    for k in range(-bound, bound + 1):
        for l in range(-bound, bound + 1):
            w = (k * u[0] + l * v[0], k * u[1] + l * v[1])
            if vec2_dot(w, w) == target:
                out.append(w)
    return out


def planar_point_group(u, v) -> PlanarPointGroup:
    """Orthogonal stabilizer of the lattice Z u + Z v, computed exactly.

    Every stabilizing map is pinned down by the images of u and v, which
    must be lattice vectors with the same norms and inner product; each
    candidate pair is verified orthogonal before being admitted.
    """
    u = (as_exact(u[0]), as_exact(u[1]))
    v = (as_exact(v[0]), as_exact(v[1]))
    if vec2_cross(u, v) == 0:
        raise ValueError("u and v are linearly dependent")
    for x in (*u, *v):
        if not _supported_planar_scalar(x):
            raise ValueError("planar scalars must lie in Q or Q(sqrt(3))")
    basis_inv = mat2_inv(((u[0], v[0]), (u[1], v[1])))
    dot_uv = vec2_dot(u, v)
    images_u = _vectors_of_norm(u, v, vec2_dot(u, u))
    images_v = _vectors_of_norm(u, v, vec2_dot(v, v))
    found: list[Mat2] = []
    for iu in images_u:
        for iv in images_v:
            if vec2_dot(iu, iv) != dot_uv:
                continue
            t = mat2_mul(((iu[0], iv[0]), (iu[1], iv[1])), basis_inv)
            if not mat2_eq(mat2_mul(mat2_transpose(t), t), MAT2_ID):
                continue
            if not any(mat2_eq(t, m) for m in found):
                found.append(t)
    order = len(found)
    if order not in _PG_TAGS:
        raise RuntimeError(f"unexpected stabilizer order {order}")
    return PlanarPointGroup(_PG_TAGS[order], tuple(found))


def _close_under_mul(mats: Iterable[Mat2]) -> list[Mat2]:
    elems: list[Mat2] = [MAT2_ID]
    frontier = [m for m in mats if not mat2_eq(m, MAT2_ID)]
    for m in frontier:
        if not any(mat2_eq(m, e) for e in elems):
            elems.append(m)
    changed = True
    while changed:
        changed = False
        for a in list(elems):
            for b in list(elems):
                c = mat2_mul(a, b)
                if not any(mat2_eq(c, e) for e in elems):
                    elems.append(c)
                    changed = True
                    if len(elems) > 24:
                        raise ValueError("adjoined set generates too large a group")
    return elems


# -- lifting point symmetries to lattice normalizers --------------------------

def lift_point_symmetry(lat: NilLattice, rot: Mat2) -> HeisIsometry:
    """Find a translation correction making rot normalize the lattice.

    Solves the linear system cross(w, u) = c_u, cross(w, v) = c_v where the
    c-values are forced by membership of the rotated generators; always
    solvable because u, v span the plane.  The result is verified by
    conjugating every lattice generator.
    """
    det = mat2_det(rot)
    step = lat.center_step()
    targets = []
    for vec, off in ((lat.u, lat.r), (lat.v, lat.s)):
        img = mat2_apply(rot, vec)
        coords = lat.planar_coords(img)
        if coords is None:
            raise ValueError("rotation does not preserve the projected lattice")
        eta = (img[0] * img[1] - det * vec[0] * vec[1]) * HALF
        targets.append(det * (lat.word_z(*coords) - eta) - off)
    mat = ((lat.u[1], -lat.u[0]), (lat.v[1], -lat.v[0]))
    w1, w2 = mat2_apply(mat2_inv(mat), (targets[0], targets[1]))
    w = HeisPoint(w1, w2, Fraction(0))
    iso = HeisIsometry(rot, rot_apply(rot, w))
    for gen in lat.generators():
        if not lat.contains(iso.conjugate_translation(gen)):
            raise AssertionError("lift verification failed")
    return iso


# -- quotient isometry groups -------------------------------------------------

def _mod_step(x: Scalar, step: Scalar) -> bool:
    return _is_integral(x / step)


def _coset_constraints(lat: NilLattice, tau: Vec2,
                       extra_lifts: Sequence[HeisIsometry]):
    """Conjugation conditions on translations (tau, z) against adjoined maps.

    Returns None when the coset cannot normalize, otherwise the list of
    values c with 2 z = c (mod lam/n) collected from the orientation
    reversing maps (empty list means z is unconstrained).
    """
    step = lat.center_step()
    t0 = HeisPoint(tau[0], tau[1], Fraction(0))
    z_constraints = []
    for phi in extra_lifts:
        det = mat2_det(phi.rot)
        q0 = heis_mul(
            heis_mul(heis_mul(t0, phi.trans),
                     rot_apply(phi.rot, heis_inv(t0))),
            heis_inv(phi.trans))
        coords = lat.planar_coords(q0.planar())
        if coords is None:
            return None
        need = lat.word_z(*coords) - q0.z
        if det == 1:
            if not _mod_step(need, step):
                return None
        else:
            z_constraints.append(need)
    for i in range(len(z_constraints)):
        for j in range(i + 1, len(z_constraints)):
            if not _mod_step(z_constraints[i] - z_constraints[j], step):
                return None
    return z_constraints


def _lift_group_closes(lat: NilLattice, lifts: dict) -> bool:
    """Products of lifts must land back in lattice * lift."""
    mats = list(lifts)
    for a in mats:
        for b in mats:
            prod = lifts[a].compose(lifts[b])
            if mat2_eq(prod.rot, MAT2_ID):
                if not lat.contains(prod.trans):
                    return False
                continue
            target = None
            for m in mats:
                if mat2_eq(m, prod.rot):
                    target = lifts[m]
                    break
            if target is None:
                return False
            resid = prod.compose(target.inverse())
            if not lat.contains(resid.trans):
                return False
    return True


def _extends_to_group_normalizer(lat: NilLattice, rot: Mat2,
                                 extra_lifts: dict) -> bool:
    """Search a translation adjustment making rot normalize lattice+extra."""
    try:
        base = lift_point_symmetry(lat, rot)
    except ValueError:
        return False
    mats = list(extra_lifts)
    step = lat.center_step()
    denom = 2 * lat.n
    for k in range(denom):
        for l in range(denom):
            tau = (Fraction(k, denom) * lat.u[0] + Fraction(l, denom) * lat.v[0],
                   Fraction(k, denom) * lat.u[1] + Fraction(l, denom) * lat.v[1])
            for z_num in (0, 1):
                z = step * Fraction(z_num, 2)
                t = HeisIsometry.translation(HeisPoint(tau[0], tau[1], z))
                cand = t.compose(base)
                ok = all(lat.contains(cand.conjugate_translation(g))
                         for g in lat.generators())
                if not ok:
                    continue
                for m in mats:
                    conj = cand.compose(extra_lifts[m]).compose(cand.inverse())
                    match = None
                    for mm in mats:
                        if mat2_eq(mm, conj.rot):
                            match = extra_lifts[mm]
                            break
                    if match is None:
                        ok = False
                        break
                    resid = conj.compose(match.inverse())
                    if not lat.contains(resid.trans):
                        ok = False
                        break
                if ok:
                    return True
    return False


def nil_quotient_isometry(lat: NilLattice,
                          extra=None) -> IsoDescriptor:
    """Isometry group of the quotient by the lattice (plus adjoined maps).

    For a plain lattice the answer is the extension of the circle acting on
    the central fiber by (Z_n x Z_n) |x Aut of the projected lattice.
    Adjoining orientation reversing point symmetries quantizes the circle
    down to Z_2 and shrinks the finite part, as worked out coset by coset.
    """
    pg = planar_point_group(lat.u, lat.v)

    if extra is None:
        extra_mats: list[Mat2] = [MAT2_ID]
    else:
        mats = extra.elements if isinstance(extra, PlanarPointGroup) else extra
        extra_mats = _close_under_mul(mats)
        pg_set = pg.elements
        for m in extra_mats:
            if not any(mat2_eq(m, e) for e in pg_set):
                raise ValueError("adjoined point group does not normalize "
                                 "the lattice")

    extra_lifts = {}
    for m in extra_mats:
        if mat2_eq(m, MAT2_ID):
            continue
        extra_lifts[m] = lift_point_symmetry(lat, m)
    if extra_lifts and not _lift_group_closes(lat, extra_lifts):
        raise ValueError("adjoined point group does not close over this "
                         "lattice")

    nontrivial_lifts = list(extra_lifts.values())
    has_reflection = any(mat2_det(m) == -1 for m in extra_lifts)

    # admissible translation cosets of the projected refinement
    admissible = 0
    for k in range(lat.n):
        for l in range(lat.n):
            tau = (Fraction(k, lat.n) * lat.u[0]
                   + Fraction(l, lat.n) * lat.v[0],
                   Fraction(k, lat.n) * lat.u[1]
                   + Fraction(l, lat.n) * lat.v[1])
            if _coset_constraints(lat, tau, nontrivial_lifts) is not None:
                admissible += 1

    # point symmetries extending to the full group
    if extra is None or len(extra_mats) == pg.order:
        extending = pg.order
    else:
        extending = 0
        for m in pg.elements:
            if any(mat2_eq(m, e) for e in extra_mats):
                extending += 1
            elif _extends_to_group_normalizer(lat, m, extra_lifts):
                extending += 1

    point_quotient = extending // len(extra_mats)
    finite_order = admissible * point_quotient

    law_pinned = (scalar_is_rational(lat.r / lat.lam)
                  and scalar_is_rational(lat.s / lat.lam))
    if extra is None:
        structure = (f"(Z_{lat.n} x Z_{lat.n}) |x {pg.tag}"
                     if lat.n > 1 else pg.tag)
        finite = {
            "order": finite_order,
            "translation_part": [lat.n, lat.n],
            "point_group": pg.tag,
            "structure": structure if law_pinned else
            f"order {finite_order}, generators reported",
        }
        notes = () if law_pinned else (
            "offsets r, s are not rational multiples of lambda; "
            "finite part reported by generators and order only",)
        return IsoDescriptor(geometry="nil", identity_component="S1",
                             circle_factor="S1", finite_part=finite,
                             notes=notes)

    if has_reflection:
        total = 2 * finite_order
        label = {1: "trivial", 2: "Z2"}.get(total, f"order {total}")
        finite = {
            "order": total,
            "translation_cosets": admissible,
            "point_quotient": point_quotient,
            "circle_quantized_to": 2,
            "structure": label,
        }
        return IsoDescriptor(geometry="nil", identity_component="trivial",
                             circle_factor=2, finite_part=finite,
                             total_order=total)

    finite = {
        "order": finite_order,
        "translation_cosets": admissible,
        "point_quotient": point_quotient,
        "structure": f"order {finite_order}",
    }
    return IsoDescriptor(geometry="nil", identity_component="S1",
                         circle_factor="S1", finite_part=finite)


# -- projection dichotomy -----------------------------------------------------

DISCRETE_PROJECTION = "DiscreteProjection"
FIXES_POINT = "AbelianFixesPoint"
FIXES_LINE = "AbelianFixesLine"
UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class DichotomyResult:
    kind: str
    point: Optional[Vec2] = None
    direction: Optional[Vec2] = None
    witness: Optional[HeisPoint] = None

    def to_json_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.point is not None:
            out["point"] = [format_scalar(self.point[0]),
                            format_scalar(self.point[1])]
        if self.direction is not None:
            out["direction"] = [format_scalar(self.direction[0]),
                                format_scalar(self.direction[1])]
        if self.witness is not None:
            out["central_witness"] = self.witness.to_json()
        return out


def _solve_affine(mat: Mat2, rhs: Vec2):
    """Solution set of mat p = rhs as (point, tuple_of_directions) or None."""
    det = mat2_det(mat)
    if det != 0:
        return (mat2_apply(mat2_inv(mat), rhs), ())
    rows = [(mat[0][0], mat[0][1], rhs[0]), (mat[1][0], mat[1][1], rhs[1])]
    nonzero = [r for r in rows if r[0] != 0 or r[1] != 0]
    if not nonzero:
        if rhs[0] == 0 and rhs[1] == 0:
            return ((Fraction(0), Fraction(0)), ((1, 0), (0, 1)))
        return None
    a, b, c = nonzero[0]
    for a2, b2, c2 in nonzero[1:]:
        # proportional rows must carry proportional right-hand sides
        if a * c2 != a2 * c or b * c2 != b2 * c:
            return None
    point = (c / a, Fraction(0)) if a != 0 else (Fraction(0), c / b)
    return (point, ((-b, a),))


def _intersect_affine(s1, s2):
    if s1 is None or s2 is None:
        return None
    (p1, d1), (p2, d2) = s1, s2
    if len(d1) == 2:
        return s2
    if len(d2) == 2:
        return s1
    if len(d1) == 0 and len(d2) == 0:
        return s1 if (p1[0] == p2[0] and p1[1] == p2[1]) else None
    if len(d1) == 0:
        s1, s2 = s2, s1
        (p1, d1), (p2, d2) = s1, s2
    # s1 is a line p1 + t d; s2 is a point or a line
    d = d1[0]
    if len(d2) == 0:
        diff = vec2_sub(p2, p1)
        return s2 if vec2_cross(d, diff) == 0 else None
    e = d2[0]
    if vec2_cross(d, e) == 0:
        diff = vec2_sub(p2, p1)
        return s1 if vec2_cross(d, diff) == 0 else None
    # transversal lines: solve p1 + t d = p2 + s e
    mat = ((d[0], -e[0]), (d[1], -e[1]))
    t, _ = mat2_apply(mat2_inv(mat), vec2_sub(p2, p1))
    return ((p1[0] + t * d[0], p1[1] + t * d[1]), ())


def _parallel(u: Vec2, v: Vec2) -> bool:
    return vec2_cross(u, v) == 0


def nil_projection_dichotomy(gens: Sequence[HeisIsometry],
                             word_bound: int = 6) -> DichotomyResult:
    """Classify the projected action on the plane of a discrete group.

    Invariance of a point or a line is decided exactly (it drives the
    volume verdict); failing that, a bounded search for a nontrivial
    central word certifies a discrete projection.  Discreteness itself is
    only semi-decidable, so the remaining case is Undetermined.
    """
    planar = [g.planar_part() for g in gens]

    # common fixed point (or pointwise fixed line)
    common = ((Fraction(0), Fraction(0)), ((1, 0), (0, 1)))
    for rot, w in planar:
        mat = ((1 - rot[0][0], -rot[0][1]), (-rot[1][0], 1 - rot[1][1]))
        common = _intersect_affine(common, _solve_affine(mat, w))
        if common is None:
            break
    if common is not None:
        point, dirs = common
        if len(dirs) == 0:
            return DichotomyResult(FIXES_POINT, point=point)
        if len(dirs) == 1:
            return DichotomyResult(FIXES_LINE, direction=dirs[0])
        return DichotomyResult(FIXES_POINT, point=(Fraction(0), Fraction(0)))

    # invariant line
    line = _invariant_line(planar)
    if line is not None:
        return DichotomyResult(FIXES_LINE, direction=line)

    witness = _central_word(gens, word_bound)
    if witness is not None:
        return DichotomyResult(DISCRETE_PROJECTION, witness=witness)
    return DichotomyResult(UNDETERMINED)


def _rotation_kind(rot: Mat2) -> str:
    if mat2_eq(rot, MAT2_ID):
        return "id"
    if mat2_eq(rot, ROT_PI):
        return "minus"
    return "rotation" if mat2_det(rot) == 1 else "reflection"


def _invariant_line(planar) -> Optional[Vec2]:
    candidates: Optional[list[Vec2]] = None   # None means unconstrained
    for rot, w in planar:
        kind = _rotation_kind(rot)
        if kind == "rotation":
            return None                       # no eigendirection at all
        if kind == "id":
            local = None if (w[0] == 0 and w[1] == 0) else [w]
        elif kind == "minus":
            local = None
        else:  # reflection: axis and its perpendicular
            axis = _reflection_axis(rot)
            local = [axis, (-axis[1], axis[0])]
        if local is None:
            continue
        if candidates is None:
            candidates = local
        else:
            candidates = [c for c in candidates
                          if any(_parallel(c, d) for d in local)]
        if not candidates:
            return None
    if candidates is None:
        # only +-identity rotation parts: directions from induced translations
        minus_ws = [w for rot, w in planar if _rotation_kind(rot) == "minus"]
        diffs = [vec2_sub(a, b) for i, a in enumerate(minus_ws)
                 for b in minus_ws[i + 1:]]
        candidates = [d for d in diffs if d[0] != 0 or d[1] != 0]
        if not candidates:
            return None
    for d in candidates:
        # position constraints: (rot - I) p + w parallel to d for all
        solset = ((Fraction(0), Fraction(0)), ((1, 0), (0, 1)))
        for rot, w in planar:
            m = ((rot[0][0] - 1, rot[0][1]), (rot[1][0], rot[1][1] - 1))
            # cross(d, m p + w) = 0: linear equation a.p = rhs
            a = (d[0] * m[1][0] - d[1] * m[0][0],
                 d[0] * m[1][1] - d[1] * m[0][1])
            rhs = -(d[0] * w[1] - d[1] * w[0])
            solset = _intersect_affine(solset, _solve_affine(
                ((a[0], a[1]), (0, 0)), (rhs, Fraction(0))))
            if solset is None:
                break
        if solset is not None:
            return d
    return None


def _reflection_axis(rot: Mat2) -> Vec2:
    plus = ((rot[0][0] + 1, rot[0][1]), (rot[1][0], rot[1][1] + 1))
    col0 = (plus[0][0], plus[1][0])
    col1 = (plus[0][1], plus[1][1])
    return col0 if (col0[0] != 0 or col0[1] != 0) else col1


def _central_word(gens: Sequence[HeisIsometry], bound: int,
                  cap: int = 20000) -> Optional[HeisPoint]:
    moves = []
    for g in gens:
        moves.append(g)
        moves.append(g.inverse())
    seen: dict = {}
    frontier = [HEIS_ISO_ID]
    seen[_iso_key(HEIS_ISO_ID)] = True
    for _ in range(bound):
        nxt = []
        for el in frontier:
            for mv in moves:
                cand = el.compose(mv)
                key = _iso_key(cand)
                if key in seen:
                    continue
                seen[key] = True
                if (mat2_eq(cand.rot, MAT2_ID)
                        and cand.trans.x == 0 and cand.trans.y == 0
                        and cand.trans.z != 0):
                    return cand.trans
                nxt.append(cand)
                if len(seen) > cap:
                    return None
        frontier = nxt
        if not frontier:
            break
    return None


def _iso_key(iso: HeisIsometry):
    return (iso.rot, iso.trans.x, iso.trans.y, iso.trans.z)


INFINITE_VOLUME = "InfiniteVolume"
FINITE_VOLUME_POSSIBLE = "FiniteVolumePossible"


def nil_volume_verdict(result: DichotomyResult) -> str:
    """Fixed point or line forces infinite volume of the quotient."""
    if result.kind == UNDETERMINED:
        raise ValueError("no volume verdict for an undetermined projection")
    if result.kind in (FIXES_POINT, FIXES_LINE):
        return INFINITE_VOLUME
    return FINITE_VOLUME_POSSIBLE
