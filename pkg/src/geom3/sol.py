"""Sol geometry: the group R^2 x| R with diag(e^t, e^{-t}) twist.

Lattices come from hyperbolic SL2(Z) matrices; their quotient isometry
groups are finite and computed exactly through the cokernel of I - A^n.
Points support two scalar modes: floats with arbitrary t, and an exact
mode where e^t is a power of a fixed quadratic unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import intmat
from .algebra import QuadRat, galois_conjugate
from .descriptors import IsoDescriptor
from .intmat import (
    IntMat2,
    Mat2,
    Vec2,
    int_mat_pow,
    mat2_apply,
    mat2_inv,
    mat2_mul,
)


@dataclass(frozen=True)
class SolPoint:
    """Point (x, y, t) of the matrix with rows (e^t,0,x),(0,e^-t,y),(0,0,1).

    Float mode stores t directly.  Exact mode tracks t = k * log(unit) via
    the integer k, with unit a norm-one element of a real quadratic field,
    so e^t = unit**k stays exact.
    """

    x: object
    y: object
    level: object                    # float t, or integer k in exact mode
    unit: Optional[QuadRat] = None

    @classmethod
    def exact(cls, x, y, k: int, unit: QuadRat) -> "SolPoint":
        if unit.norm() != 1:
            raise ValueError("exact mode requires a unit of norm 1")
        return cls(x, y, int(k), unit)

    @property
    def is_exact(self) -> bool:
        return self.unit is not None

    @property
    def t(self):
        if self.is_exact:
            return self.level * math.log(float(self.unit))
        return self.level

    def scale(self):
        """e^t, exact in exact mode."""
        if self.is_exact:
            return self.unit ** self.level
        return math.exp(self.level)

    def scale_inv(self):
        if self.is_exact:
            return self.unit ** (-self.level)
        return math.exp(-self.level)


def _check_modes(g: SolPoint, h: SolPoint):
    if g.is_exact != h.is_exact:
        raise ValueError("mixed float/exact Sol points")
    if g.is_exact and g.unit != h.unit:
        raise ValueError("exact Sol points must share the same unit")


def sol_mul(g: SolPoint, h: SolPoint) -> SolPoint:
    """(x,y,t)(u,v,s) = (x + e^t u, y + e^{-t} v, t + s)."""
    _check_modes(g, h)
    return SolPoint(g.x + g.scale() * h.x,
                    g.y + g.scale_inv() * h.y,
                    g.level + h.level, g.unit)


def sol_inv(g: SolPoint) -> SolPoint:
    return SolPoint(-g.scale_inv() * g.x, -g.scale() * g.y,
                    -g.level, g.unit)


SOL_ID = SolPoint(0.0, 0.0, 0.0)


def sol_fixed_line(g: SolPoint) -> tuple:
    """Axis {(p, q, s)} translated by g; requires t != 0.

    p = x / (1 - e^t), q = y / (1 - e^{-t}).
    """
    if (g.is_exact and g.level == 0) or (not g.is_exact and g.level == 0):
        raise ValueError("t = 0: no transverse fixed line")
    one = Fraction(1) if g.is_exact else 1.0
    p = g.x / (one - g.scale())
    q = g.y / (one - g.scale_inv())
    return (p, q)


# -- lattices ------------------------------------------------------------------

@dataclass(frozen=True)
class SolLattice:
    """Gamma_{A^n} = Z^2 x|_{A^n} Z for a hyperbolic A in SL2(Z)."""

    a: IntMat2
    n: int

    def holonomy(self) -> IntMat2:
        return int_mat_pow(self.a, self.n)

    def to_json_dict(self) -> dict:
        return {"matrix": [[self.a.a, self.a.b], [self.a.c, self.a.d]],
                "power": self.n}


def sol_lattice_make(a: IntMat2, n: int = 1) -> SolLattice:
    if a.det() != 1:
        raise ValueError(f"determinant {a.det()} != 1")
    if a.trace() <= 2:
        raise ValueError(f"trace {a.trace()} <= 2: no hyperbolic holonomy")
    if not isinstance(n, int) or n < 1:
        raise ValueError("power must be a positive integer")
    return SolLattice(a, n)


@dataclass(frozen=True)
class SolNormalizer:
    """N = Z x|_A Lambda_n with Lambda_n = (I - A^n)^{-1} Z^2."""

    lattice: SolLattice
    basis: tuple[Vec2, Vec2]        # rational basis of Lambda_n
    index: int                      # [Lambda_n : Z^2] = |det(I - A^n)|

    def to_json_dict(self) -> dict:
        return {
            "basis": [[str(self.basis[0][0]), str(self.basis[0][1])],
                      [str(self.basis[1][0]), str(self.basis[1][1])]],
            "index": self.index,
            "z_factor": "generated by the holonomy matrix",
        }


def sol_normalizer_lattice(lat: SolLattice) -> SolNormalizer:
    """Translations normalizing the lattice; always finite index over Z^2."""
    hol = lat.holonomy()
    m = IntMat2.identity() - hol
    det = m.det()                    # = 2 - tr(A^n), nonzero for trace > 2
    inv = mat2_inv(((Fraction(m.a), Fraction(m.b)),
                    (Fraction(m.c), Fraction(m.d))))
    basis = ((inv[0][0], inv[1][0]), (inv[0][1], inv[1][1]))
    return SolNormalizer(lat, basis, abs(det))


def sol_quotient_isometry(lat: SolLattice) -> IsoDescriptor:
    """Finite isometry group (Lambda_n / Z^2) x|_A Z_n of the quotient.

    The cokernel structure comes from the Smith normal form of I - A^n;
    its order is cross-checked against det(I - A^n) = 2 - tr(A^n).
    """
    hol = lat.holonomy()
    m = IntMat2.identity() - hol
    snf = intmat.smith_normal_form(m)
    det_order = abs(2 - hol.trace())
    if snf.d1 * snf.d2 != det_order:
        raise RuntimeError(
            f"cokernel order {snf.d1 * snf.d2} contradicts determinant "
            f"formula {det_order}")
    invariants = snf.abelian_invariants()
    order = det_order * lat.n
    action = _cokernel_action(lat.a, snf)
    structure = _structure_label(invariants, lat.n)
    finite = {
        "abelian_invariants": invariants,
        "cyclic_extension": lat.n,
        "order": order,
        "action_on_invariants": action,
        "structure": structure,
    }
    return IsoDescriptor(geometry="sol", identity_component="trivial",
                         finite_part=finite, total_order=order)


def _cokernel_action(a: IntMat2, snf: intmat.SnfResult) -> list:
    """Action of the holonomy on Z_{d1} x Z_{d2}, rows reduced mod d_i."""
    u = snf.u
    det_u = u.det()
    u_inv = IntMat2(u.d * det_u, -u.b * det_u, -u.c * det_u, u.a * det_u)
    r = u @ a @ u_inv
    rows = [[r.a, r.b], [r.c, r.d]]
    out = []
    for i, d in enumerate((snf.d1, snf.d2)):
        if d == 1:
            continue
        out.append([rows[i][j] % d if d else rows[i][j] for j in range(2)])
    return out


def _structure_label(invariants: list[int], n: int) -> str:
    if not invariants and n == 1:
        return "trivial"
    core = " x ".join(f"Z{d}" for d in invariants) if invariants else "trivial"
    if n == 1:
        return core
    if not invariants:
        return f"Z{n}"
    if len(invariants) == 1:
        return f"{core} x| Z{n}"
    return f"({core}) x| Z{n}"


def sol_centralizer(lat: SolLattice) -> dict:
    """Centralizer of the lattice: always trivial, verified symbolically.

    Solves e^t a = a (forcing t = 0 against a planar vector with both
    eigencoordinates nonzero) and then e^s x = x against the nontrivial
    holonomy step (forcing x = y = 0).
    """
    hol = lat.holonomy()
    (lam, lam_inv), basis = intmat.diagonalize_sl2(hol)
    binv = mat2_inv(basis)
    steps = []
    # a planar lattice vector with both eigencoordinates nonzero
    witness = None
    for cand in ((1, 0), (0, 1), (1, 1)):
        coords = mat2_apply(binv, cand)
        if coords[0] != 0 and coords[1] != 0:
            witness = (cand, coords)
            break
    if witness is None:
        raise RuntimeError("no planar vector with nonzero eigencoordinates")
    steps.append(f"planar vector {witness[0]} has nonzero eigencoordinates")
    # e^t a = a with a != 0 forces the unit power to be trivial
    if not lam > 1:
        raise RuntimeError("holonomy eigenvalue is not > 1")
    steps.append("unit power lam^k fixes a nonzero coordinate only for k = 0")
    # e^s x = x with s != 0 forces x = 0 (and symmetrically y = 0)
    steps.append("conjugation by the holonomy step kills both coordinates")
    return {"group": "trivial", "verified": True, "steps": steps}


def sol_q_structure(a: IntMat2) -> dict:
    """Rational structure behind the lattice: diagonalize over Q(sqrt(d)).

    Returns the square-free field parameter, exact eigenvalues, the change
    of basis B with B a B^{-1} diagonal, and whether the entrywise Galois
    conjugate of B diagonalizes a onto the conjugate eigenvalues.
    """
    (lam, lam_inv), basis = intmat.diagonalize_sl2(a)
    b = mat2_inv(basis)
    a_field: Mat2 = ((Fraction(a.a), Fraction(a.b)),
                     (Fraction(a.c), Fraction(a.d)))
    diag = mat2_mul(b, mat2_mul(a_field, mat2_inv(b)))
    first = (diag[0][0] == lam and diag[1][1] == lam_inv
             and diag[0][1] == 0 and diag[1][0] == 0)
    b_conj = tuple(tuple(galois_conjugate(x) for x in row) for row in b)
    diag_c = mat2_mul(b_conj, mat2_mul(a_field, mat2_inv(b_conj)))
    second = (diag_c[0][0] == galois_conjugate(lam)
              and diag_c[1][1] == galois_conjugate(lam_inv)
              and diag_c[0][1] == 0 and diag_c[1][0] == 0)
    return {
        "d": lam.d,
        "eigenvalues": (lam, lam_inv),
        "basis": b,
        "basis_conjugate": b_conj,
        "galois_pair_check": bool(first and second),
    }


def sol_unit(lat: SolLattice) -> QuadRat:
    """The exact e-power base for exact-mode points over this lattice."""
    (lam, _), _basis = intmat.diagonalize_sl2(lat.holonomy())
    return lam
