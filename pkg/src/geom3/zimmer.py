"""Higher-rank lattice dichotomy: real ranks, isotypic tests, verdicts.

The engine evaluates which finite-volume geometric quotients can carry an
infinite isometric action of a higher-rank lattice.  Non-uniform lattices
never can; uniform ones only when the quotient's isometry group contains
a copy of SO(3) and the ambient group is isotypic of the matching type.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import euclid as euclid_mod
from . import fibered as fibered_mod
from . import hyperbolic as hyperbolic_mod
from . import nil as nil_mod
from . import sol as sol_mod
from .algebra import QuadRat, galois_conjugate
from .descriptors import (
    FACTORS_THROUGH_FINITE,
    POSSIBLE_INFINITE_ACTION,
    IsoDescriptor,
    Verdict,
)

_FAMILIES = ("SL(n,R)", "SU(p,q)", "SL(n,C)", "SO(p,q)", "SO(n,C)",
             "Sp(2n,R)", "Sp(p,q)", "Sp(2n,C)", "G2", "F4", "E6", "E7",
             "E8", "SO(3)", "SO(4)")


@dataclass(frozen=True)
class SimpleFactor:
    """One simple factor of a semisimple group, e.g. SL(3,R) or SO(2,2)."""

    family: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        _validate_params(self.family, self.params)

    def __str__(self):
        if self.family in ("SO(3)", "SO(4)"):
            return self.family
        if self.family in ("G2", "F4", "E6", "E7", "E8"):
            return self.family
        head = self.family.split("(")[0]
        tail = self.family[self.family.index("(") + 1:-1]
        parts = tail.split(",")
        if parts[-1] in ("R", "C"):
            if self.family.startswith("Sp"):
                return f"{head}({2 * self.params[0]},{parts[-1]})"
            return f"{head}({self.params[0]},{parts[-1]})"
        return f"{head}({self.params[0]},{self.params[1]})"


def _validate_params(family: str, params: tuple):
    if family in ("SO(3)", "SO(4)", "G2", "F4", "E6", "E7", "E8"):
        if params:
            raise ValueError(f"{family} takes no parameters")
        return
    if family in ("SL(n,R)", "SL(n,C)"):
        if len(params) != 1 or params[0] < 2:
            raise ValueError("SL needs n >= 2")
    elif family == "SO(n,C)":
        if len(params) != 1 or params[0] < 3:
            raise ValueError("SO(n,C) needs n >= 3")
    elif family in ("Sp(2n,R)", "Sp(2n,C)"):
        if len(params) != 1 or params[0] < 1:
            raise ValueError("Sp needs n >= 1")
    elif family in ("SU(p,q)", "SO(p,q)", "Sp(p,q)"):
        if len(params) != 2 or params[0] < params[1] or params[1] < 0:
            raise ValueError(f"{family} needs p >= q >= 0")
        p, q = params
        if family == "SO(p,q)" and p + q < 3:
            raise ValueError("SO(p,q) needs p + q >= 3")
        if family == "SU(p,q)" and p + q < 2:
            raise ValueError("SU(p,q) needs p + q >= 2")
        if family == "Sp(p,q)" and p + q < 1:
            raise ValueError("Sp(p,q) needs p + q >= 1")
    else:
        raise ValueError(f"unknown family {family!r}")


_EXCEPTIONAL_RANK = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}


def real_rank(f: SimpleFactor) -> int:
    """Real rank per the standard table; compact groups have rank 0."""
    fam, p = f.family, f.params
    if fam == "SL(n,R)" or fam == "SL(n,C)":
        return p[0] - 1
    if fam in ("SU(p,q)", "SO(p,q)", "Sp(p,q)"):
        return min(p)
    if fam == "SO(n,C)":
        return p[0] // 2
    if fam in ("Sp(2n,R)", "Sp(2n,C)"):
        return p[0]
    if fam in _EXCEPTIONAL_RANK:
        return _EXCEPTIONAL_RANK[fam]
    return 0                        # SO(3), SO(4)


def _so_complex_type(m: int) -> tuple[str, ...]:
    """Simple type(s) of so(m, C), with the small-rank identifications."""
    if m < 3:
        raise ValueError("so(m) is not semisimple for m < 3")
    if m % 2:
        rank = (m - 1) // 2
        return ("A1",) if rank == 1 else (f"B{rank}",)
    rank = m // 2
    if rank == 2:
        return ("A1", "A1")
    if rank == 3:
        return ("A3",)
    return (f"D{rank}",)


def _sp_complex_type(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("A1",)
    if n == 2:
        return ("B2",)              # C2 = B2
    return (f"C{n}",)


def complex_type(f: SimpleFactor) -> tuple[str, ...]:
    """Simple types of the complexified Lie algebra, as a sorted multiset.

    A complex group viewed as a real group complexifies to two copies of
    itself, so its types are doubled.
    """
    fam, p = f.family, f.params
    if fam == "SL(n,R)":
        types = ("A1",) if p[0] == 2 else (f"A{p[0] - 1}",)
    elif fam == "SU(p,q)":
        n = p[0] + p[1]
        types = (f"A{n - 1}",)
    elif fam == "SL(n,C)":
        base = f"A{p[0] - 1}"
        types = (base, base)
    elif fam == "SO(p,q)":
        types = _so_complex_type(p[0] + p[1])
    elif fam == "SO(n,C)":
        types = _so_complex_type(p[0]) * 2
    elif fam == "Sp(2n,R)":
        types = _sp_complex_type(p[0])
    elif fam == "Sp(p,q)":
        types = _sp_complex_type(p[0] + p[1])
    elif fam == "Sp(2n,C)":
        types = _sp_complex_type(p[0]) * 2
    elif fam in _EXCEPTIONAL_RANK:
        types = (fam, fam)          # complex exceptional group, doubled
    elif fam == "SO(3)":
        types = ("A1",)
    elif fam == "SO(4)":
        types = ("A1", "A1")
    else:
        raise ValueError(fam)
    return tuple(sorted(types))


def is_isotypic(factors: Sequence[SimpleFactor]) -> bool:
    """All simple factors of the complexification share one type."""
    if not factors:
        raise ValueError("nonempty factor list required")
    types = set()
    for f in factors:
        types.update(complex_type(f))
    return len(types) == 1


@dataclass(frozen=True)
class LatticeSpec:
    factors: tuple[SimpleFactor, ...]
    uniform: bool

    def __post_init__(self):
        if not self.factors:
            raise ValueError("nonempty factor list required")

    def rank(self) -> int:
        return sum(real_rank(f) for f in self.factors)

    def __str__(self):
        tag = "uniform" if self.uniform else "nonuniform"
        return " x ".join(str(f) for f in self.factors) + f" ({tag})"


_FACTOR_RE = re.compile(
    r"^\s*(SL|SU|SO|Sp)\s*\(\s*(\d+)\s*,\s*(\d+|R|C)\s*\)\s*$|"
    r"^\s*(G2|F4|E6|E7|E8)\s*$|^\s*SO\s*\(\s*([34])\s*\)\s*$")


def parse_factor(text: str) -> SimpleFactor:
    """Parse "SL(3,R)", "SO(2,2)", "Sp(4,R)", "SO(4)", "G2" and friends."""
    m = _FACTOR_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse factor {text!r}")
    if m.group(4):
        return SimpleFactor(m.group(4))
    if m.group(5):
        return SimpleFactor(f"SO({m.group(5)})")
    head, first, second = m.group(1), int(m.group(2)), m.group(3)
    if second == "R":
        if head == "SL":
            return SimpleFactor("SL(n,R)", (first,))
        if head == "Sp":
            if first % 2:
                raise ValueError("Sp(2n,R) needs an even first parameter")
            return SimpleFactor("Sp(2n,R)", (first // 2,))
        raise ValueError(f"{head}(n,R) is not in the table")
    if second == "C":
        if head == "SL":
            return SimpleFactor("SL(n,C)", (first,))
        if head == "SO":
            return SimpleFactor("SO(n,C)", (first,))
        if head == "Sp":
            if first % 2:
                raise ValueError("Sp(2n,C) needs an even first parameter")
            return SimpleFactor("Sp(2n,C)", (first // 2,))
        raise ValueError(f"{head}(n,C) is not in the table")
    q = int(second)
    p, q = max(first, q), min(first, q)
    if head == "SU":
        return SimpleFactor("SU(p,q)", (p, q))
    if head == "SO":
        if q == 0 and p in (3, 4):
            return SimpleFactor(f"SO({p})")
        return SimpleFactor("SO(p,q)", (p, q))
    if head == "Sp":
        return SimpleFactor("Sp(p,q)", (p, q))
    raise ValueError(f"cannot parse factor {text!r}")


def parse_spec(text: str, uniform: bool) -> LatticeSpec:
    parts = re.split(r"\s*(?:\*|×|\bx\b)\s*", text)
    return LatticeSpec(tuple(parse_factor(p) for p in parts if p.strip()),
                       uniform)


_SO3_BEARING = {"SO(3)", "SO(4)", "O(4)", "SO3xS1"}


def identity_component_contains_so3(tag: str) -> bool:
    return tag in _SO3_BEARING


_SO3_FACTOR = SimpleFactor("SO(3)")


def zimmer_verdict(quotient: Union[IsoDescriptor, str],
                   spec: LatticeSpec) -> Verdict:
    """Dichotomy for a higher-rank lattice acting on a geometric quotient.

    quotient is an IsoDescriptor produced by a geometry module (or just
    its identity-component tag).  Requires total real rank >= 2.
    """
    if spec.rank() < 2:
        raise ValueError("the dichotomy needs real rank >= 2")
    tag = quotient.identity_component \
        if isinstance(quotient, IsoDescriptor) else str(quotient)
    reasons = []
    if not spec.uniform:
        reasons.append({
            "rule": "nonuniform-excluded",
            "citation": "an infinite-image isometric action would give a "
                        "dense image in a compact group, which forces an "
                        "isotypic pairing with a cocompact lattice; the "
                        "compactness criterion rules out non-uniform ones",
        })
        return Verdict(FACTORS_THROUGH_FINITE, tuple(reasons))
    so3 = identity_component_contains_so3(tag)
    isotypic = is_isotypic(tuple(spec.factors) + (_SO3_FACTOR,))
    if so3 and isotypic:
        reasons.append({
            "rule": "so3-isotypic-uniform",
            "citation": "the quotient's isometry group contains SO(3) and "
                        "the ambient group is isotypic of type A1 with a "
                        "uniform lattice: dense isometric images exist",
        })
        return Verdict(POSSIBLE_INFINITE_ACTION, tuple(reasons))
    if not so3:
        reasons.append({
            "rule": "iso-lacks-so3",
            "citation": f"the identity component {tag!r} of the quotient's "
                        "isometry group contains no copy of SO(3), so every "
                        "compact image closure is too small for an "
                        "isotypic pairing",
        })
    if not isotypic:
        reasons.append({
            "rule": "not-isotypic-with-so3",
            "citation": "the ambient group is not isotypic of type A1, so "
                        "no dense image in a group built from SO(3) exists",
        })
    return Verdict(FACTORS_THROUGH_FINITE, tuple(reasons))


def aspherical_check(r: int, n: int) -> Optional[Verdict]:
    """Isometric actions of rank-(r-1) integral lattices on closed
    aspherical n-manifolds factor through finite groups when n < r."""
    if r < 3:
        raise ValueError("r >= 3 required")
    if n < r:
        return Verdict(FACTORS_THROUGH_FINITE, ({
            "rule": "aspherical-dimension-bound",
            "citation": f"closed aspherical {n}-manifolds admit no infinite "
                        f"isometric action of the integral special linear "
                        f"lattice of degree {r} when {n} < {r}",
        },))
    return None


def max_isometry_dim(n: int) -> int:
    """Dimension bound n(n+1)/2 for the isometry group of an n-space."""
    if n < 1:
        raise ValueError("n >= 1 required")
    return n * (n + 1) // 2


# -- restriction of scalars demo ----------------------------------------------

def _mat4_mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(4))
                       for j in range(4)) for i in range(4))


def _mat4_transpose(a):
    return tuple(tuple(a[j][i] for j in range(4)) for i in range(4))


def _twist_form() -> tuple:
    root2 = QuadRat(0, 1, 2)
    z = QuadRat(0, 0, 2)
    one = QuadRat(1, 0, 2)
    return ((one, z, z, z), (z, one, z, z),
            (z, z, -root2, z), (z, z, z, -root2))


def galois_twist_pair(g) -> dict:
    """Pair (g, sigma(g)) with form-preservation for the quadratic form
    x^2 + y^2 - sqrt(2) z^2 - sqrt(2) t^2 and its Galois twist."""
    mat = tuple(tuple(_as_q2(v) for v in row) for row in g)
    if len(mat) != 4 or any(len(r) != 4 for r in mat):
        raise ValueError("4x4 matrix required")
    q = _twist_form()
    sigma_mat = tuple(tuple(galois_conjugate(v) for v in row) for row in mat)
    sigma_q = tuple(tuple(galois_conjugate(v) for v in row) for row in q)
    first = _mat4_mul(_mat4_transpose(mat), _mat4_mul(q, mat)) == q
    second = _mat4_mul(_mat4_transpose(sigma_mat),
                       _mat4_mul(sigma_q, sigma_mat)) == sigma_q
    return {"matrix": mat, "conjugate": sigma_mat,
            "preserves_form": bool(first),
            "conjugate_preserves_twisted_form": bool(second)}


def _as_q2(v) -> QuadRat:
    if isinstance(v, QuadRat):
        if v.b != 0 and v.d != 2:
            raise ValueError("entries must lie in Q(sqrt(2))")
        return QuadRat(v.a, v.b, 2)
    return QuadRat(v, 0, 2)


def galois_twist_example() -> tuple:
    """A nontrivial form-preserving rotation in the (x, z) plane.

    a = 3 + 2 sqrt(2) and c = 2 + 2 sqrt(2) solve a^2 - sqrt(2) c^2 = 1
    (smallest solution found by searching Z[sqrt(2)] coefficients).
    """
    a = QuadRat(3, 2, 2)
    c = QuadRat(2, 2, 2)
    root2 = QuadRat(0, 1, 2)
    z = QuadRat(0, 0, 2)
    one = QuadRat(1, 0, 2)
    return ((a, z, root2 * c, z),
            (z, one, z, z),
            (c, z, a, z),
            (z, z, z, one))


# -- top level dispatch --------------------------------------------------------

GEOMETRIES = ("nil", "sol", "h3", "euclid", "s3", "s2xr", "h2xr", "sl2r")


def quotient_isometry_summary(geometry: str, descriptor=None,
                              extra=None) -> IsoDescriptor:
    """Route a quotient description to the geometry that computes it."""
    if geometry == "nil":
        return nil_mod.nil_quotient_isometry(descriptor, extra=extra)
    if geometry == "sol":
        return sol_mod.sol_quotient_isometry(descriptor)
    if geometry == "h3":
        fact = hyperbolic_mod.hn_quotient_isometry_verdict(3)
        return IsoDescriptor(geometry="h3", identity_component="trivial",
                             finite_part={"structure": "finite group",
                                          "order": None,
                                          "order_formula":
                                              fact["order_formula"]})
    if geometry == "euclid":
        return euclid_mod.euclid_quotient_isometry(descriptor)
    if geometry == "s3":
        tag = descriptor if isinstance(descriptor, str) \
            else descriptor.get("identity_component")
        if tag is None:
            raise ValueError("supply a lookup row or identity component tag")
        return IsoDescriptor(geometry="s3", identity_component=tag,
                             finite_part={"structure":
                                          "closed subgroup of O(4)"})
    if geometry == "s2xr":
        if isinstance(descriptor, str):
            tag = descriptor
        else:
            tag = fibered_mod.s2r_quotient_identity_component(descriptor)
        return IsoDescriptor(geometry="s2xr", identity_component=tag,
                             finite_part={"structure":
                                          "closed subgroup of SO(3) x S1, "
                                          "up to finite index"})
    if geometry in ("h2xr", "sl2r"):
        return fibered_mod.psl2_quotient_isometry(geometry)
    raise ValueError(f"unknown geometry tag {geometry!r}")
