"""2x2 integer matrices, Smith normal form, and exact SL2 spectral data.

Generic 2x2/vector helpers over exact scalars live here too; the geometry
modules share them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import QuadRat, Scalar

Mat2 = tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]
Vec2 = tuple[Scalar, Scalar]


# -- generic 2x2 arithmetic over any exact scalar field ----------------------

def mat2(a, b, c, d) -> Mat2:
    return ((a, b), (c, d))


def mat2_mul(m: Mat2, n: Mat2) -> Mat2:
    return ((m[0][0] * n[0][0] + m[0][1] * n[1][0],
             m[0][0] * n[0][1] + m[0][1] * n[1][1]),
            (m[1][0] * n[0][0] + m[1][1] * n[1][0],
             m[1][0] * n[0][1] + m[1][1] * n[1][1]))


def mat2_apply(m: Mat2, v: Vec2) -> Vec2:
    return (m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1])


def mat2_det(m: Mat2) -> Scalar:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def mat2_inv(m: Mat2) -> Mat2:
    det = mat2_det(m)
    if det == 0:
        raise ZeroDivisionError("singular 2x2 matrix")
    if isinstance(det, int):
        det = Fraction(det)
    return ((m[1][1] / det, -m[0][1] / det),
            (-m[1][0] / det, m[0][0] / det))


def mat2_transpose(m: Mat2) -> Mat2:
    return ((m[0][0], m[1][0]), (m[0][1], m[1][1]))


def mat2_eq(m: Mat2, n: Mat2) -> bool:
    return all(m[i][j] == n[i][j] for i in range(2) for j in range(2))


MAT2_ID: Mat2 = ((1, 0), (0, 1))


def vec2_cross(u: Vec2, v: Vec2) -> Scalar:
    """Scalar cross product u1*v2 - u2*v1 (signed area)."""
    return u[0] * v[1] - u[1] * v[0]


def vec2_dot(u: Vec2, v: Vec2) -> Scalar:
    return u[0] * v[0] + u[1] * v[1]


def vec2_add(u: Vec2, v: Vec2) -> Vec2:
    return (u[0] + v[0], u[1] + v[1])


def vec2_sub(u: Vec2, v: Vec2) -> Vec2:
    return (u[0] - v[0], u[1] - v[1])


def vec2_scale(c: Scalar, u: Vec2) -> Vec2:
    return (c * u[0], c * u[1])


# -- integer matrices ---------------------------------------------------------

@dataclass(frozen=True)
class IntMat2:
    """A 2x2 integer matrix."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for entry in (self.a, self.b, self.c, self.d):
            if not isinstance(entry, int):
                raise TypeError("integer entries required")

    @classmethod
    def from_rows(cls, rows) -> "IntMat2":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def identity(cls) -> "IntMat2":
        return cls(1, 0, 0, 1)

    def rows(self) -> Mat2:
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: "IntMat2") -> "IntMat2":
        return IntMat2.from_rows(mat2_mul(self.rows(), other.rows()))

    def __add__(self, other: "IntMat2") -> "IntMat2":
        return IntMat2(self.a + other.a, self.b + other.b,
                       self.c + other.c, self.d + other.d)

    def __sub__(self, other: "IntMat2") -> "IntMat2":
        return IntMat2(self.a - other.a, self.b - other.b,
                       self.c - other.c, self.d - other.d)

    def __neg__(self) -> "IntMat2":
        return IntMat2(-self.a, -self.b, -self.c, -self.d)

    def apply(self, v: Vec2) -> Vec2:
        return mat2_apply(self.rows(), v)


def int_mat_pow(a: IntMat2, n: int) -> IntMat2:
    """Exact n-th power, n >= 0 (n = 0 gives the identity)."""
    if n < 0:
        raise ValueError("non-negative exponent required")
    out, base = IntMat2.identity(), a
    while n:
        if n & 1:
            out = out @ base
        base = base @ base
        n >>= 1
    return out


@dataclass(frozen=True)
class SnfResult:
    """u @ m @ v = diag(d1, d2) with u, v unimodular and d1 | d2, d1,d2 >= 0."""

    d1: int
    d2: int
    u: IntMat2
    v: IntMat2

    def diagonal(self) -> tuple[int, int]:
        return (self.d1, self.d2)

    def abelian_invariants(self) -> list[int]:
        """Nontrivial invariant factors of the cokernel Z^2 / m Z^2."""
        return [d for d in (self.d1, self.d2) if d != 1]


def smith_normal_form(m: IntMat2) -> SnfResult:
    """Diagonalize an integer matrix by unimodular row/column operations."""
    a = [[m.a, m.b], [m.c, m.d]]
    u = [[1, 0], [0, 1]]
    v = [[1, 0], [0, 1]]

    def row_op(i, j, q):  # row_i -= q * row_j, tracked in u
        for k in range(2):
            a[i][k] -= q * a[j][k]
            u[i][k] -= q * u[j][k]

    def col_op(i, j, q):  # col_i -= q * col_j, tracked in v
        for k in range(2):
            a[k][i] -= q * a[k][j]
            v[k][i] -= q * v[k][j]

    def swap_rows():
        a[0], a[1] = a[1], a[0]
        u[0], u[1] = u[1], u[0]

    def swap_cols():
        for k in range(2):
            a[k][0], a[k][1] = a[k][1], a[k][0]
            v[k][0], v[k][1] = v[k][1], v[k][0]

    # clear the first row and column by gcd elimination
    while a[0][1] != 0 or a[1][0] != 0:
        if a[0][0] == 0:
            if a[1][0] != 0:
                swap_rows()
            else:
                swap_cols()
            continue
        if a[1][0] != 0:
            q = a[1][0] // a[0][0]
            row_op(1, 0, q)
            if a[1][0] != 0:
                swap_rows()
            continue
        q = a[0][1] // a[0][0]
        col_op(1, 0, q)
        if a[0][1] != 0:
            swap_cols()

    # enforce the divisibility d1 | d2
    if a[0][0] != 0 and a[1][1] % a[0][0] != 0:
        col_op(0, 1, -1)          # col_0 += col_1, reintroduces a[1][0]
        while a[1][0] != 0:
            q = a[1][0] // a[0][0]
            row_op(1, 0, q)
            if a[1][0] != 0:
                swap_rows()
        q = a[0][1] // a[0][0]
        col_op(1, 0, q)
    if a[0][0] == 0 and a[1][1] != 0:
        swap_rows()
        swap_cols()

    # sign normalization: diagonal >= 0
    for i in range(2):
        if a[i][i] < 0:
            for k in range(2):
                a[k][i] = -a[k][i]
                v[k][i] = -v[k][i]

    return SnfResult(a[0][0], a[1][1],
                     IntMat2.from_rows(u), IntMat2.from_rows(v))


def diagonalize_sl2(a: IntMat2) -> tuple[tuple[QuadRat, QuadRat], Mat2]:
    """Exact eigenvalues and eigenbasis of a hyperbolic SL2(Z) matrix.

    Requires det a = 1 and tr a > 2.  Returns ((lam, lam_inv), basis) where
    the columns of basis are eigenvectors, det(basis) = 1 and
    basis^{-1} @ a @ basis = diag(lam, lam_inv) exactly in Q(sqrt(d)).
    """
    if a.det() != 1:
        raise ValueError("determinant 1 required")
    t = a.trace()
    if t <= 2:
        raise ValueError(f"trace {t} <= 2: matrix is not hyperbolic")
    root = QuadRat.sqrt(t * t - 4)
    lam = (root + t) / 2
    lam_inv = (t - root) / 2
    cols = []
    for ev in (lam, lam_inv):
        if a.b != 0:
            cols.append((QuadRat(a.b, 0, lam.d), ev - a.a))
        elif a.c != 0:
            cols.append((ev - a.d, QuadRat(a.c, 0, lam.d)))
        else:  # diagonal integer matrix with trace > 2 and det 1: impossible
            raise ValueError("matrix is already diagonal but not hyperbolic")
    basis: Mat2 = ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))
    det = mat2_det(basis)
    # scale the second column so det(basis) = 1
    basis = ((basis[0][0], basis[0][1] / det),
             (basis[1][0], basis[1][1] / det))
    return (lam, lam_inv), basis


def elementary_divisors_stack(rows: list[list[int]], ncols: int) -> list[int]:
    """Elementary divisors d1 | d2 | ... of an integer matrix given by rows.

    Used for cokernels of stacked relation matrices (k x ncols, ncols <= 3).
    Computed from gcds of minors; zero entries signal free factors.
    """
    if ncols == 0:
        return []
    import itertools

    def minors(order):
        vals = []
        idx_rows = range(len(rows))
        for rs in itertools.combinations(idx_rows, order):
            for cs in itertools.combinations(range(ncols), order):
                vals.append(_det_minor(rows, rs, cs))
        g = 0
        for val in vals:
            g = gcd(g, val)
        return g

    divisors = []
    prev = 1
    for order in range(1, ncols + 1):
        g = minors(order) if len(rows) >= order else 0
        if g == 0:
            divisors.append(0)
            prev = 0
        else:
            divisors.append(g // prev if prev else 0)
            prev = g
    return divisors


def _det_minor(rows, rs, cs):
    sub = [[rows[r][c] for c in cs] for r in rs]
    n = len(sub)
    if n == 1:
        return sub[0][0]
    if n == 2:
        return sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]
    if n == 3:
        return (sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1])
                - sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0])
                + sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0]))
    raise ValueError("minor order > 3 not supported")
