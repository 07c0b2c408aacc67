"""Lattice-point model of the truncated homology algebra Upsilon^{<=1}.

A basis monomial is a point w = (s, i, j, k, a, b, t) of Z^7.  The pair (a, b)
counts the formal generators coming from the two kinds of tensor factor, and
decides which building block the point lives in:

    a == b      PSI    a copy of Psi
    a == b - 1  PSI0   a copy of the (p-1)-dimensional twisted semisimple piece
    a == b + 1  MBAR   a copy of M-bar
    a >  b + 1  M      a copy of M
    i == 1      TOP    the p extra points of tensor degree one

Points are produced from the four-dimensional polytopes (s, j0, k0, t) by the
degree formulas in :func:`degree_of`.  All conventions that had to be pinned
down empirically live in :class:`Convention`; ``CALIBRATED`` is the one the
dg oracle confirms and ``PRINTED`` collects the rejected alternatives for comparison.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

PSI, PSI0, MBAR, M, TOP = "PSI", "PSI0", "MBAR", "M", "TOP"


@dataclass(frozen=True)
class Convention:
    psi_reading: str = "j+k"        # xi-count constraint of P_Psi: "j+k" or the literal "j-k"
    p0_reading: str = "corrected"   # "corrected": s + t = p + 1, s < p;  "printed": additionally s <= t
    degree_shift: str = "a-b-1"     # multiplier of p in the M/MBAR j-shift: "a-b-1" or the literal "a-1"
    top: str = "calibrated"         # TOP tuple: "calibrated" (s,1,1,0,-1,0,p+1-s) or "printed" (s,-1,1,-1,0,0,p+1-s)
    sign: str = "k0"                # exponent variable of the product sign: "k0" or the literal "j0"
    extensions: bool = True         # include the non-additive products into the PSI0 family

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Convention":
        return cls(**d)


CALIBRATED = Convention()
PRINTED = Convention(psi_reading="j-k", p0_reading="printed", degree_shift="a-1", top="printed", sign="j0", extensions=False)


class LatticePoint4(NamedTuple):
    s: int
    j: int
    k: int
    t: int


class LatticePoint7(NamedTuple):
    s: int
    i: int
    j: int
    k: int
    a: int
    b: int
    t: int

    @property
    def family(self) -> str:
        if self.i == 1 or (self.a, self.b) == (0, 0) and self.i == -1:
            return TOP
        if self.a == self.b:
            return PSI
        if self.a == self.b - 1:
            return PSI0
        if self.a == self.b + 1:
            return MBAR
        if self.a > self.b + 1:
            return M
        raise ValueError(f"point {tuple(self)} belongs to no family")

    @property
    def degree(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)

    def is_unit(self) -> bool:
        return self.s == self.t and self.i == self.j == self.k == self.a == self.b == 0


class SignedPoint(NamedTuple):
    sign: int
    point: LatticePoint7 | None

    def __bool__(self) -> bool:
        return self.sign != 0


ZERO = SignedPoint(0, None)


def unit_point(s: int) -> LatticePoint7:
    return LatticePoint7(s, 0, 0, 0, 0, 0, s)


# ---------------------------------------------------------------------------
# polytopes


def in_P_psi(p: int, q4, reading: str = "j+k") -> bool:
    s, j, k, t = q4
    if not (1 <= s <= t <= p and t - s == j + 2 * k and k >= 0):
        return False
    xi_count = j + k if reading == "j+k" else j - k
    return 0 <= xi_count <= 1


def in_P_0(p: int, q4, reading: str = "corrected") -> bool:
    s, j, k, t = q4
    if j != 0 or k != 0 or s + t != p + 1 or (s, t) == (p, 1):
        return False
    if reading == "printed":
        return 1 <= s <= t <= p
    return 1 <= s <= p and 1 <= t <= p


def in_P_M(p: int, q4) -> bool:
    s, j, k, t = q4
    return 1 <= s <= p and 1 <= t <= p and j + 2 * k + 2 == t - 1 - s + p and 0 <= j + k + 2 <= 1


def in_P_Mbar(p: int, q4) -> bool:
    return in_P_M(p, q4) and tuple(q4) != (p, 0, -1, 1)


def polytope_points(p: int, name: str, conv: Convention = CALIBRATED) -> list[LatticePoint4]:
    """All lattice points of one of the four polytopes, in lexicographic order."""
    return list(_polytope_points(p, name, conv.psi_reading, conv.p0_reading))


@lru_cache(maxsize=None)
def _polytope_points(p: int, name: str, psi_reading: str, p0_reading: str) -> tuple[LatticePoint4, ...]:
    tests = {
        "psi": lambda q: in_P_psi(p, q, psi_reading),
        "0": lambda q: in_P_0(p, q, p0_reading),
        "M": lambda q: in_P_M(p, q),
        "Mbar": lambda q: in_P_Mbar(p, q),
    }
    test = tests[name]
    # every polytope forces |j| <= 2p + 2 and -2 <= k <= 2p, so this box is exhaustive
    out = [
        LatticePoint4(s, j, k, t)
        for s in range(1, p + 1)
        for t in range(1, p + 1)
        for k in range(-2, 2 * p + 1)
        for j in range(-2 * p - 2, 2 * p + 3)
        if test((s, j, k, t))
    ]
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# degrees


def degree_of(p: int, point6, family: str, conv: Convention = CALIBRATED) -> tuple[int, int, int]:
    """(i, j, k) of the basis element with polytope coordinates (s, j0, k0, a, b, t)."""
    s, j0, k0, a, b, t = point6
    i = -a - b
    if family == PSI:
        if a != b:
            raise ValueError("PSI family needs a == b")
        return (i, j0, k0)
    if family in (PSI0, TOP):
        if a != b - 1:
            raise ValueError(f"{family} family needs a == b - 1")
        return (i, j0 + 1, k0)
    if family in (M, MBAR):
        if a < b + 1 or (family == MBAR and a != b + 1):
            raise ValueError(f"{family} family needs a >= b + 1")
        d = a - b - 1 if conv.degree_shift == "a-b-1" else a - 1
        return (i, j0 - d * p + 1, k0 + d * (p - 1))
    raise ValueError(f"unknown family {family!r}")


def base_degree(p: int, w: LatticePoint7, conv: Convention = CALIBRATED) -> tuple[int, int]:
    """Invert :func:`degree_of`: recover (j0, k0) from a point."""
    fam = w.family
    if fam == PSI:
        return (w.j, w.k)
    if fam in (PSI0, TOP):
        if conv.top == "printed" and fam == TOP:
            return (0, 0)
        return (w.j - 1, w.k)
    d = w.a - w.b - 1 if conv.degree_shift == "a-b-1" else w.a - 1
    return (w.j + d * p - 1, w.k - d * (p - 1))


def top_points(p: int, conv: Convention = CALIBRATED) -> list[LatticePoint7]:
    if conv.top == "printed":
        return [LatticePoint7(s, -1, 1, -1, 0, 0, p + 1 - s) for s in range(1, p + 1)]
    return [LatticePoint7(s, 1, 1, 0, -1, 0, p + 1 - s) for s in range(1, p + 1)]


def points_of_degree(p: int, i: int, conv: Convention = CALIBRATED) -> list[LatticePoint7]:
    """The basis points of tensor degree i (i <= 1)."""
    if i == 1:
        return [w for w in top_points(p, conv) if w.i == 1]
    if i > 1:
        return []
    n = -i
    out: list[LatticePoint7] = []
    for a in range(n + 1):
        b = n - a
        if a == b:
            fam, src = PSI, polytope_points(p, "psi", conv)
        elif a == b - 1:
            fam, src = PSI0, polytope_points(p, "0", conv)
        elif a == b + 1:
            fam, src = MBAR, polytope_points(p, "Mbar", conv)
        elif a > b + 1:
            fam, src = M, polytope_points(p, "M", conv)
        else:
            continue
        for s, j0, k0, t in src:
            ii, j, k = degree_of(p, (s, j0, k0, a, b, t), fam, conv)
            out.append(LatticePoint7(s, ii, j, k, a, b, t))
    out.extend(w for w in top_points(p, conv) if w.i == i)
    return sorted(out)


def enumerate_points(p: int, i_range: tuple[int, int] = (-4, 1), j_range: tuple[int, int] | None = None,
                     k_range: tuple[int, int] | None = None, conv: Convention = CALIBRATED) -> list[LatticePoint7]:
    """Points with i_range[0] <= i <= i_range[1] (inclusive), optionally cut by j and k windows."""
    lo, hi = i_range
    out = []
    for i in range(lo, min(hi, 1) + 1):
        for w in points_of_degree(p, i, conv):
            if j_range and not (j_range[0] <= w.j <= j_range[1]):
                continue
            if k_range and not (k_range[0] <= w.k <= k_range[1]):
                continue
            out.append(w)
    return sorted(set(out))


def model_graded_dims(p: int, i: int, conv: Convention = CALIBRATED):
    from .core import GradedDims

    return GradedDims.count((w.s, w.t, w.j, w.k) for w in points_of_degree(p, i, conv))


# ---------------------------------------------------------------------------
# products


class _Index:
    def __init__(self, p: int, i_min: int, conv: Convention):
        pts = enumerate_points(p, (i_min, 1), conv=conv)
        self.additive = {}
        self.sector = {}
        for w in pts:
            key = (w.s, w.i, w.j, w.k, w.a, w.t)
            if key in self.additive:
                raise AssertionError(f"two points share additive key {key}")
            self.additive[key] = w
            self.sector.setdefault((w.s, w.t, w.i, w.j, w.k), []).append(w)


@lru_cache(maxsize=64)
def _index(p: int, i_min: int, conv: Convention) -> _Index:
    return _Index(p, i_min, conv)


def _index_for(p: int, i: int, conv: Convention) -> _Index:
    # round down to a multiple of 4 so that neighbouring queries share a cache entry
    i_min = -4 * ((-min(-4, i) + 3) // 4)
    return _index(p, i_min, conv)


def multiply(p: int, w: LatticePoint7, w2: LatticePoint7, conv: Convention = CALIBRATED) -> SignedPoint:
    """m_w * m_w2 as a signed basis point, or ZERO."""
    w, w2 = LatticePoint7(*w), LatticePoint7(*w2)
    if w.t != w2.s:
        return ZERO
    i = w.i + w2.i
    if i > 1:
        return ZERO
    idx = _index_for(p, i, conv)
    j0p, k0p = base_degree(p, w2, conv)
    var = k0p if conv.sign == "k0" else j0p
    exponent = (w.a + w.b) * var + w.b * w2.a
    target = idx.additive.get((w.s, i, w.j + w2.j, w.k + w2.k, w.a + w2.a, w2.t))
    if target is not None:
        return SignedPoint(-1 if exponent % 2 else 1, target)
    if conv.extensions and w.i <= 0 and w2.i <= 0:
        for v in idx.sector.get((w.s, w2.t, i, w.j + w2.j, w.k + w2.k), ()):
            if v.family == PSI0:
                exponent += w.b + w2.b
                return SignedPoint(-1 if exponent % 2 else 1, v)
    return ZERO


def truncated_product_table(p: int, i_min: int = -4, conv: Convention = CALIBRATED,
                            points: Iterable[LatticePoint7] | None = None) -> dict:
    """All products of window points whose tensor degree stays inside the window.

    Returns {"products": {(w, w2): SignedPoint}, "truncated": n, "escaped": n}
    where ``truncated`` counts pairs whose degree exceeds 1 (projected to zero)
    and ``escaped`` counts pairs landing below ``i_min`` (outside the window).
    """
    pts = list(points) if points is not None else enumerate_points(p, (i_min, 1), conv=conv)
    window = set(pts)
    products = {}
    truncated = escaped = 0
    for w in pts:
        for w2 in pts:
            if w.t != w2.s:
                continue
            i = w.i + w2.i
            if i > 1:
                truncated += 1
                continue
            if i < i_min:
                escaped += 1
                continue
            r = multiply(p, w, w2, conv)
            if r and r.point not in window:
                raise AssertionError(f"product {w} * {w2} left the window")
            products[(w, w2)] = r
    return {"products": products, "truncated": truncated, "escaped": escaped}


def associator(p: int, w1, w2, w3, conv: Convention = CALIBRATED) -> tuple[SignedPoint, SignedPoint] | None:
    """((w1 w2) w3, w1 (w2 w3)) when every intermediate degree stays <= 1, else None."""
    if max(w1.i + w2.i, w2.i + w3.i, w1.i + w2.i + w3.i) > 1:
        return None
    l12 = multiply(p, w1, w2, conv)
    left = multiply(p, l12.point, w3, conv) if l12 else ZERO
    left = SignedPoint(left.sign * l12.sign, left.point) if left else ZERO
    r23 = multiply(p, w2, w3, conv)
    right = multiply(p, w1, r23.point, conv) if r23 else ZERO
    right = SignedPoint(right.sign * r23.sign, right.point) if right else ZERO
    return left, right


def associativity_violations(p: int, points: list[LatticePoint7], conv: Convention = CALIBRATED,
                             samples: int | None = None, seed: int = 0) -> tuple[int, list]:
    """Check (ab)c == a(bc) on composable triples.

    With ``samples`` set, that many random composable triples are drawn with a
    fixed seed; otherwise every composable triple is checked.
    Returns (number of triples checked, list of violating triples).
    """
    by_left: dict[int, list[LatticePoint7]] = {}
    for w in points:
        by_left.setdefault(w.s, []).append(w)
    bad = []
    checked = 0
    if samples is None:
        for w1 in points:
            for w2 in by_left.get(w1.t, ()):
                for w3 in by_left.get(w2.t, ()):
                    r = associator(p, w1, w2, w3, conv)
                    if r is None:
                        continue
                    checked += 1
                    if r[0] != r[1]:
                        bad.append((w1, w2, w3, r))
        return checked, bad
    rng = random.Random(seed)
    while checked < samples:
        w1 = rng.choice(points)
        w2 = rng.choice(by_left.get(w1.t) or [w1])
        if w2.s != w1.t:
            continue
        cands = by_left.get(w2.t)
        if not cands:
            continue
        w3 = rng.choice(cands)
        r = associator(p, w1, w2, w3, conv)
        if r is None:
            continue
        checked += 1
        if r[0] != r[1]:
            bad.append((w1, w2, w3, r))
    return checked, bad
