"""Block algebras mu_q built from q-fold chains of lattice points.

A basis monomial of mu_q is a chain (w^1, ..., w^q) of points of the
Upsilon model together with an exponent alpha of z, such that

    i(w^1) = 0,   i(w^{l+1}) = j(w^l),   alpha = j(w^q).

Products are taken factor by factor in the Upsilon model, with the super
sign that comes from passing the factors of the left monomial past those of
the right one, and alpha adds.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import product as cartesian

from .core import shuffle_sign
from .upsilon import CALIBRATED, Convention, LatticePoint7, enumerate_points, multiply, unit_point


@dataclass(frozen=True, order=True)
class MuMonomial:
    factors: tuple[LatticePoint7, ...]
    alpha: int

    @property
    def q(self) -> int:
        return len(self.factors)

    @property
    def left(self) -> tuple[int, ...]:
        return tuple(w.s for w in self.factors)

    @property
    def right(self) -> tuple[int, ...]:
        return tuple(w.t for w in self.factors)

    @property
    def j(self) -> int:
        """Sum of the factors' j-degrees; this is the j-label used in Cartan tables."""
        return sum(w.j for w in self.factors)

    @property
    def k(self) -> int:
        return sum(w.k for w in self.factors)

    def is_idempotent(self) -> bool:
        return self.alpha == 0 and all(w.is_unit() for w in self.factors)

    def flat(self) -> tuple[int, ...]:
        return tuple(x for w in self.factors for x in w) + (self.alpha,)

    def to_json(self) -> dict:
        return {
            "factors": [list(w) for w in self.factors],
            "alpha": self.alpha,
            "left": list(self.left),
            "right": list(self.right),
            "j": self.j,
            "k": self.k,
        }


def weight(m: MuMonomial) -> tuple[int, ...]:
    """(w^2_i - w^1_j, ..., w^q_i - w^{q-1}_j, alpha - w^q_j)."""
    f = m.factors
    return tuple(f[l + 1].i - f[l].j for l in range(len(f) - 1)) + (m.alpha - f[-1].j,)


Signed = tuple[int, "MuMonomial | None"]
MU_ZERO: Signed = (0, None)


def mu_multiply(p: int, m: MuMonomial, m2: MuMonomial, conv: Convention = CALIBRATED) -> Signed:
    if m.q != m2.q:
        raise ValueError("monomials from different block algebras")
    sign = 1
    out = []
    for w, v in zip(m.factors, m2.factors):
        r = multiply(p, w, v, conv)
        if not r:
            return MU_ZERO
        sign *= r.sign
        out.append(r.point)
    sign *= shuffle_sign([w.k for w in m.factors], [v.k for v in m2.factors])
    return (sign, MuMonomial(tuple(out), m.alpha + m2.alpha))


def embed(m: MuMonomial) -> MuMonomial:
    """mu_q -> mu_{q+1}: put the unit at vertex 1 in front."""
    return MuMonomial((unit_point(1),) + m.factors, m.alpha)


@dataclass
class BlockAlgebra:
    p: int
    q: int
    basis: tuple[MuMonomial, ...]
    conv: Convention = CALIBRATED
    k_max: int | None = None
    ranges: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.position = {m: n for n, m in enumerate(self.basis)}
        self.idempotents = {m.left: m for m in self.basis if m.is_idempotent()}

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self) -> list[tuple[int, ...]]:
        return sorted(cartesian(range(1, self.p + 1), repeat=self.q))

    def multiply(self, m: MuMonomial, m2: MuMonomial) -> Signed:
        return mu_multiply(self.p, m, m2, self.conv)

    def __contains__(self, m: MuMonomial) -> bool:
        return m in self.position

    def to_json(self, products: bool = False) -> dict:
        out = {
            "p": self.p,
            "q": self.q,
            "k_max": self.k_max,
            "convention": self.conv.to_dict(),
            "vertices": [list(v) for v in self.vertices],
            "i_ranges": [list(r) for r in self.ranges],
            "basis": [m.to_json() for m in self.basis],
        }
        if products:
            table = []
            for a, x in enumerate(self.basis):
                for b, y in enumerate(self.basis):
                    sign, z = self.multiply(x, y)
                    if sign and z in self.position:
                        table.append([a, b, sign, self.position[z]])
            out["products"] = table
        return out


def _chain_ranges(p: int, q: int, conv: Convention) -> tuple[list[tuple[int, int]], dict[int, list[LatticePoint7]]]:
    """Propagate the admissible i-interval of each chain position.

    Position 1 has i = 0.  The j-degrees reachable at position l bound the
    i-degree at position l + 1; every family has j >= i * p-ish lower bounds,
    so the intervals stay finite.  Returns the intervals and the points used.
    """
    lo = hi = 0
    ranges = []
    pool: dict[int, list[LatticePoint7]] = {}
    for _ in range(q):
        ranges.append((lo, hi))
        for i in range(lo, hi + 1):
            if i not in pool:
                pool[i] = enumerate_points(p, (i, i), conv=conv)
        js = [w.j for i in range(lo, hi + 1) for w in pool[i]]
        if not js:
            break
        lo, hi = min(js), min(max(js), 1)
    return ranges, pool


def build_mu(p: int, q: int, k_max: int | None = None, conv: Convention = CALIBRATED) -> BlockAlgebra:
    if q < 1:
        raise ValueError("q must be at least 1")
    ranges, pool = _chain_ranges(p, q, conv)
    chains: list[tuple[LatticePoint7, ...]] = [(w,) for w in pool[0]]
    for _ in range(1, q):
        chains = [c + (w,) for c in chains for w in pool.get(c[-1].j, ())]
    basis = []
    for c in chains:
        m = MuMonomial(c, c[-1].j)
        if k_max is not None and m.k > k_max:
            continue
        basis.append(m)
    basis.sort(key=MuMonomial.flat)
    b = BlockAlgebra(p, q, tuple(basis), conv, k_max, ranges)
    bad = [m for m in b.basis if m.k < 0]
    if bad:
        raise AssertionError(f"{len(bad)} basis monomials have negative k, e.g. {bad[0]}")
    return b


def closure_violations(b: BlockAlgebra, pairs: Iterable[tuple[MuMonomial, MuMonomial]] | None = None) -> list:
    """Products of basis monomials that are nonzero but not +- a basis monomial."""
    bad = []
    items = pairs if pairs is not None else ((x, y) for x in b.basis for y in b.basis if x.right == y.left)
    for x, y in items:
        sign, z = b.multiply(x, y)
        if not sign:
            continue
        if b.k_max is not None and z.k > b.k_max:
            continue
        if any(weight(z)) or z not in b:
            bad.append((x, y, z))
    return bad


def associativity_violations(b: BlockAlgebra, samples: int | None = None, seed: int = 0) -> tuple[int, list]:
    """Exhaustive (samples=None) or seeded random check of (xy)z == x(yz)."""
    import random

    by_left: dict[tuple[int, ...], list[MuMonomial]] = {}
    for m in b.basis:
        by_left.setdefault(m.left, []).append(m)

    def triple(x, y, z):
        s1, xy = b.multiply(x, y)
        left = b.multiply(xy, z) if s1 else MU_ZERO
        left = (left[0] * s1, left[1]) if left[0] else MU_ZERO
        s2, yz = b.multiply(y, z)
        right = b.multiply(x, yz) if s2 else MU_ZERO
        right = (right[0] * s2, right[1]) if right[0] else MU_ZERO
        return left, right

    bad = []
    checked = 0
    if samples is None:
        for x in b.basis:
            for y in by_left.get(x.right, ()):
                for z in by_left.get(y.right, ()):
                    checked += 1
                    l, r = triple(x, y, z)
                    if l != r:
                        bad.append((x, y, z, l, r))
        return checked, bad
    rng = random.Random(seed)
    basis = list(b.basis)
    while checked < samples:
        x = rng.choice(basis)
        ys = by_left.get(x.right)
        if not ys:
            continue
        y = rng.choice(ys)
        zs = by_left.get(y.right)
        if not zs:
            continue
        z = rng.choice(zs)
        checked += 1
        l, r = triple(x, y, z)
        if l != r:
            bad.append((x, y, z, l, r))
    return checked, bad
