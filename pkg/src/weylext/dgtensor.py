"""The dg oracle: twisted Koszul complexes over Psi and their homology.

For i <= -1 the complex in tensor degree i is the (1 - i)-fold tensor product
Psi (x) Psi (x) ... (x) Psi over the semisimple part, where consecutive
factors are glued by a junction rule on vertices, shifted by <i> in j.  The
differential inserts x (x) xi + xi (x) x at every junction with the Koszul
sign of everything to its left.  Degree 0 is Psi with zero differential, and
degree +1 is Psi (x) Psi^* shifted by <1>.

Homology is computed sector by sector, where a sector is a fixed
(left vertex, right vertex, j) and the differential raises k by one.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .core import QQ, Echelon, Field, GF, GradedDims, Matrix, NotAComplexError, homology_dim
from .psi import PsiMonomial, arrow, psi_basis, psi_multiply
from .upsilon import CALIBRATED, Convention, model_graded_dims

DEFAULT_CAP = 6


class FieldMismatchError(RuntimeError):
    """Homology over the rationals and over a prime field disagree."""


class CalibrationError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# junction conventions


def _sigma_all(p, right, left, pos):
    return right + left == p + 1


def _plain(p, right, left, pos):
    return right == left


def _sigma_first(p, right, left, pos):
    return right + left == p + 1 if pos == 0 else right == left


def _sigma_alternating(p, right, left, pos):
    return right + left == p + 1 if pos % 2 == 0 else right == left


JUNCTIONS: dict[str, Callable[[int, int, int, int], bool]] = {
    "sigma": _sigma_all,
    "plain": _plain,
    "sigma-first": _sigma_first,
    "sigma-alternating": _sigma_alternating,
}
DEFAULT_JUNCTION = "sigma"


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True, order=True)
class DualMonomial:
    """The dual basis vector f^* of a path f; it sits at vertices (f.t, f.s)."""

    f: PsiMonomial

    @property
    def s(self) -> int:
        return self.f.t

    @property
    def t(self) -> int:
        return self.f.s

    @property
    def j(self) -> int:
        return -self.f.j

    @property
    def k(self) -> int:
        return -self.f.k

    def __str__(self) -> str:
        return f"({self.f})*"


Factor = PsiMonomial | DualMonomial
Word = tuple[Factor, ...]


def word_str(w: Word) -> str:
    return " (x) ".join(str(f) for f in w)


@dataclass
class DgBimodule:
    """A finite dg bimodule whose basis is a list of tensor words."""

    p: int
    i: int
    junction: str
    words: tuple[Word, ...]
    shift: int
    differential: tuple[dict[int, int], ...]
    index: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {w: n for n, w in enumerate(self.words)}

    def __len__(self) -> int:
        return len(self.words)

    def sector_of(self, n: int) -> tuple[int, int, int, int]:
        w = self.words[n]
        return (w[0].s, w[-1].t, sum(f.j for f in w) + self.shift, sum(f.k for f in w))

    @cached_property
    def sectors(self) -> dict[tuple[int, int, int, int], list[int]]:
        out: dict = defaultdict(list)
        for n in range(len(self.words)):
            out[self.sector_of(n)].append(n)
        return dict(out)

    def chain_dims(self) -> GradedDims:
        return GradedDims({key: len(v) for key, v in self.sectors.items()})

    def d(self, vec: Mapping[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for n, c in vec.items():
            for m, e in self.differential[n].items():
                out[m] = out.get(m, 0) + c * e
        return {m: c for m, c in out.items() if c}

    def check_square_zero(self) -> None:
        """Raise NotAComplexError at the first word with d(d(w)) != 0."""
        for n in range(len(self.words)):
            dd = self.d(self.differential[n])
            if dd:
                m, val = min(dd.items())
                raise NotAComplexError(m, n, val)

    def differential_matrix(self, key: tuple[int, int, int, int], field_: Field = QQ) -> Matrix:
        """Dense matrix of d from sector (s, t, j, k) to (s, t, j, k + 1)."""
        s, t, j, k = key
        src = self.sectors.get(key, [])
        dst = self.sectors.get((s, t, j, k + 1), [])
        pos = {n: r for r, n in enumerate(dst)}
        cols = [{pos[m]: c for m, c in self.differential[n].items()} for n in src]
        return Matrix.from_columns(cols, len(dst), field_)

    def vector(self, terms: Mapping[Word, int]) -> dict[int, int]:
        out = {}
        for w, c in terms.items():
            if w not in self.index:
                raise KeyError(f"word {word_str(w)} is not a basis word of this complex")
            out[self.index[w]] = out.get(self.index[w], 0) + c
        return {n: c for n, c in out.items() if c}


def _enumerate_words(p: int, n_factors: int, junction: str, last_dual: bool = False) -> list[Word]:
    rule = JUNCTIONS[junction]
    monos = psi_basis(p)
    last = [DualMonomial(m) for m in monos] if last_dual else monos
    words: list[Word] = []

    def rec(prefix: list):
        pos = len(prefix)
        if pos == n_factors:
            words.append(tuple(prefix))
            return
        pool = last if pos == n_factors - 1 else monos
        for m in pool:
            if not prefix or rule(p, prefix[-1].t, m.s, pos - 1):
                prefix.append(m)
                rec(prefix)
                prefix.pop()

    rec([])
    return words


def _left_multiply(p: int, y: PsiMonomial, f: Factor) -> list[Factor]:
    """y . f for an arrow y; on a dual vector this is the transpose of right multiplication."""
    if isinstance(f, PsiMonomial):
        r = psi_multiply(y, f)
        return [r] if r is not None else []
    # (y . f*)(g) = f*(g y): sum of g* over paths g with g y = f
    return [DualMonomial(g) for g in psi_basis(p) if psi_multiply(g, y) == f.f]


def _differential_of(p: int, word: Word, junction: str) -> dict[Word, int]:
    rule = JUNCTIONS[junction]
    out: dict[Word, int] = defaultdict(int)
    k_prefix = 0
    for pos in range(len(word) - 1):
        a, b = word[pos], word[pos + 1]
        k_prefix += a.k
        sign = -1 if k_prefix % 2 else 1
        r = a.t
        if r + 1 > p or b.s < 2:
            continue
        for g1, g2 in (("x", "xi"), ("xi", "x")):
            na = psi_multiply(a, arrow(g1, r + 1))
            if na is None:
                continue
            for nb in _left_multiply(p, arrow(g2, b.s), b):
                if not rule(p, na.t, nb.s, pos):
                    continue
                out[word[:pos] + (na, nb) + word[pos + 2:]] += sign
    return {w: c for w, c in out.items() if c}


def build_chain(p: int, i: int, junction: str = DEFAULT_JUNCTION, cap: int = DEFAULT_CAP) -> DgBimodule:
    """The complex in tensor degree i (i <= 1) with the given junction convention."""
    if i > 1:
        raise ValueError("tensor degrees above 1 are not modelled")
    if abs(i) > cap:
        raise ValueError(f"|i| = {abs(i)} exceeds the cap {cap}")
    if junction not in JUNCTIONS:
        raise ValueError(f"unknown junction convention {junction!r}")
    if i == 0:
        words = [(m,) for m in psi_basis(p)]
        return DgBimodule(p, 0, junction, tuple(words), 0, tuple({} for _ in words))
    if i == 1:
        words = _enumerate_words(p, 2, junction, last_dual=True)
        shift = 1
    else:
        words = _enumerate_words(p, 1 - i, junction)
        shift = i
    if not words:
        raise CalibrationError(f"junction convention {junction!r} admits no words at p={p}, i={i}")
    index = {w: n for n, w in enumerate(words)}
    diff = []
    for w in words:
        img = _differential_of(p, w, junction)
        diff.append({index[v]: c for v, c in img.items()})
    chain = DgBimodule(p, i, junction, tuple(words), shift, tuple(diff), index)
    chain.check_square_zero()
    return chain


# ---------------------------------------------------------------------------
# homology


def _sector_ranks(c: DgBimodule, field_: Field) -> dict:
    """Rank of d leaving each sector."""
    ranks = {}
    for key, members in c.sectors.items():
        ech = Echelon(field_)
        for n in members:
            if c.differential[n]:
                ech.add(c.differential[n])
        ranks[key] = ech.rank
    return ranks


def homology_of_chain(c: DgBimodule, field_: Field | str = QQ) -> GradedDims:
    """Graded homology dimensions of ``c``.

    ``field_`` may be a Field, ``"rational"``, ``"prime"`` (characteristic p) or
    ``"both"``, which computes over both and raises FieldMismatchError when they differ.
    """
    if field_ == "both":
        q = homology_of_chain(c, QQ)
        f = homology_of_chain(c, GF(c.p))
        if q != f:
            raise FieldMismatchError(f"p={c.p} i={c.i}: rational and GF({c.p}) homology differ: {q.diff(f)[:5]}")
        return q
    if field_ == "rational":
        field_ = QQ
    elif field_ == "prime":
        field_ = GF(c.p)
    ranks = _sector_ranks(c, field_)
    out = {}
    for (s, t, j, k), members in c.sectors.items():
        h = len(members) - ranks[(s, t, j, k)] - ranks.get((s, t, j, k - 1), 0)
        if h:
            out[(s, t, j, k)] = h
    return GradedDims(out)


def sector_homology_dense(c: DgBimodule, key: tuple[int, int, int, int], field_: Field = QQ) -> int:
    """The same number for one sector, through dense matrices and core.homology_dim."""
    s, t, j, k = key
    d_in = c.differential_matrix((s, t, j, k - 1), field_)
    d_out = c.differential_matrix(key, field_)
    if d_in.rows == 0:
        d_in = Matrix.zeros(len(c.sectors.get(key, [])), 0, field_)
    return homology_dim(d_in, d_out)


# ---------------------------------------------------------------------------
# cycles


@dataclass(frozen=True)
class CycleRep:
    """A formal signed combination of tensor words."""

    terms: tuple[tuple[Word, int], ...]
    name: str = ""

    def __post_init__(self):
        for _, c in self.terms:
            if c not in (-1, 0, 1):
                raise ValueError(f"cycle coefficients must be -1, 0 or 1, got {c}")

    @classmethod
    def of(cls, terms: Mapping[Word, int] | list[tuple[Word, int]], name: str = "") -> "CycleRep":
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[Word, int] = {}
        for w, c in items:
            merged[w] = merged.get(w, 0) + c
        return cls(tuple((w, c) for w, c in merged.items() if c), name)

    def as_dict(self) -> dict[Word, int]:
        return dict(self.terms)

    def __neg__(self) -> "CycleRep":
        return CycleRep(tuple((w, -c) for w, c in self.terms), f"-{self.name}")


def _boundary_space(c: DgBimodule, key, field_: Field) -> Echelon:
    s, t, j, k = key
    ech = Echelon(field_)
    for n in c.sectors.get((s, t, j, k - 1), []):
        if c.differential[n]:
            ech.add(c.differential[n])
    return ech


def verify_cycle(c: DgBimodule, r: CycleRep | Mapping[int, int], field_: Field = QQ) -> dict[str, bool]:
    """{"cycle": d(r) == 0, "boundary": r lies in the image of d}."""
    vec = c.vector(r.as_dict()) if isinstance(r, CycleRep) else dict(r)
    if not vec:
        return {"cycle": True, "boundary": True}
    keys = {c.sector_of(n) for n in vec}
    if len(keys) != 1:
        raise ValueError(f"cycle representative is not homogeneous: sectors {sorted(keys)}")
    key = keys.pop()
    cycle = not {m: x for m, x in Echelon(field_).reduce(c.d(vec)).items()}
    boundary = _boundary_space(c, key, field_).contains(vec)
    return {"cycle": cycle, "boundary": boundary}


def thread(p: int, factors: list[tuple[int, int]], start: int, junction: str = DEFAULT_JUNCTION) -> Word:
    """Build the word whose factors have the given (x-count, xi-count), the first
    starting at vertex ``start``; later left vertices follow from the junction rule."""
    rule = JUNCTIONS[junction]
    word: list[PsiMonomial] = []
    left = start
    for pos, (a, b) in enumerate(factors):
        if word:
            cands = [v for v in range(1, p + 1) if rule(p, word[-1].t, v, pos - 1)]
            if len(cands) != 1:
                raise ValueError("junction rule does not determine the next vertex")
            left = cands[0]
        m = PsiMonomial(left + a + b, a, b)
        if not m.is_valid(p):
            raise ValueError(f"factor {pos} ({a}, {b}) from vertex {left} leaves the quiver")
        word.append(m)
    return tuple(word)


E = (0, 0)
XI = (0, 1)


def x_generator(p: int, i: int, f: int) -> CycleRep:
    """e_p (x) (xi (x) xi)^f (x) (x^{p-1})^(-i-1-2f) (x) e_1."""
    n = -i
    body = [XI, XI] * f + [(p - 1, 0)] * (n - 1 - 2 * f)
    return CycleRep.of({thread(p, [E] + body + [E], p): 1}, f"x_{{{f},{n}}}")


def y_generator(p: int, i: int, f: int) -> CycleRep:
    """e_p (x) (xi (x) xi)^f (x) (x^{p-1})^(-i-2-2f) (x) x^{p-2} xi (x) e_1."""
    n = -i
    body = [XI, XI] * f + [(p - 1, 0)] * (n - 2 - 2 * f) + [(p - 2, 1)]
    return CycleRep.of({thread(p, [E] + body + [E], p): 1}, f"y_{{{f},{n}}}")


def x_generator_moved(p: int, i: int, f: int) -> CycleRep:
    """The second representative of x_{f,-i}: the xi-pairs moved to the rear."""
    n = -i
    body = [(p - 1, 0)] * (n - 1 - 2 * f) + [XI, XI] * f
    return CycleRep.of({thread(p, [E] + body + [E], p): 1}, f"x'_{{{f},{n}}}")


def y_generator_moved(p: int, i: int, f: int) -> CycleRep:
    n = -i
    body = [(p - 2, 1)] + [(p - 1, 0)] * (n - 2 - 2 * f) + [XI, XI] * f
    return CycleRep.of({thread(p, [E] + body + [E], p): 1}, f"y'_{{{f},{n}}}")


def generator_ranges(i: int) -> tuple[range, range]:
    """Admissible f for x_{f,-i} and y_{f,-i}."""
    n = -i
    if n % 2 == 0:
        return range(0, (n - 2) // 2 + 1), range(0, (n - 2) // 2 + 1)
    return range(0, (n - 1) // 2 + 1), range(0, (n - 3) // 2 + 1)


def _all_words_of_shape(c: DgBimodule, shape: list[tuple[int, int]]) -> list[Word]:
    return [w for w in c.words if [(f.a, f.b) for f in w] == shape]


def w_power(c: DgBimodule, e: int, vertex: int) -> CycleRep:
    """e_l w^e e_l with w = xi (x) xi (x) 1 - 1 (x) xi (x) xi, multiplied in the tensor algebra.

    The product of two words glues the last factor of the first to the first
    factor of the second by multiplication in Psi.
    """
    p = c.p
    w1 = {}
    for word in _all_words_of_shape(build_chain(p, -2, c.junction), [XI, XI, E]):
        w1[word] = w1.get(word, 0) + 1
    for word in _all_words_of_shape(build_chain(p, -2, c.junction), [E, XI, XI]):
        w1[word] = w1.get(word, 0) - 1
    acc = dict(w1)
    for _ in range(e - 1):
        acc = _concat(acc, w1)
    acc = {w: x for w, x in acc.items() if w[0].s == vertex and w[-1].t == vertex}
    return CycleRep.of(acc, f"e{vertex} w^{e} e{vertex}")


def _concat(u: Mapping[Word, int], v: Mapping[Word, int]) -> dict[Word, int]:
    out: dict[Word, int] = defaultdict(int)
    for w1, c1 in u.items():
        for w2, c2 in v.items():
            m = psi_multiply(w1[-1], w2[0])
            if m is None:
                continue
            out[w1[:-1] + (m,) + w2[1:]] += c1 * c2
    return {w: c for w, c in out.items() if c}


def xi_pairs(c: DgBimodule, vertex: int) -> CycleRep:
    """e_l (xi (x) xi)^{(1-i)/2} e_l for odd i: every factor a single xi, from vertex l."""
    n = 1 - c.i
    word = thread(c.p, [XI] * n, vertex, c.junction)
    return CycleRep.of({word: 1}, f"e{vertex}(xi(x)xi)^{n // 2}")


def xxi_commute_pair(p: int, h: int, d: int, l: int) -> tuple[CycleRep, CycleRep]:
    """(x^d e_h (x) xi x^l, x^{d-1} xi e_h (x) x^{l+1}) in degree -1; their classes are opposite."""
    a = thread(p, [(d, 0), (l, 1)], h - d)
    b = thread(p, [(d - 1, 1), (l + 1, 0)], h - d)
    return CycleRep.of({a: 1}), CycleRep.of({b: 1})


def classes_equal(c: DgBimodule, r1: CycleRep, r2: CycleRep, sign: int = 1, field_: Field = QQ) -> bool:
    """Is r1 - sign * r2 a boundary?"""
    vec = dict(c.vector(r1.as_dict()))
    for n, x in c.vector(r2.as_dict()).items():
        vec[n] = vec.get(n, 0) - sign * x
    vec = {n: x for n, x in vec.items() if x}
    return verify_cycle(c, vec, field_)["boundary"]


def twoximove_pair(p: int) -> tuple[CycleRep, CycleRep]:
    """(xi (x) xi (x) x^{p-1}, x^{p-1} (x) xi (x) xi) in degree -2."""
    a = thread(p, [XI, XI, (p - 1, 0)], 1)
    b = thread(p, [(p - 1, 0), XI, XI], 1)
    return CycleRep.of({a: 1}), CycleRep.of({b: 1})


def notwist_triple(p: int) -> tuple[CycleRep, CycleRep, CycleRep]:
    """x (x) x^{p-1} (x) xi,  x (x) x^{p-2} xi (x) x,  xi (x) x^{p-1} (x) x in degree -2."""
    a = thread(p, [(1, 0), (p - 1, 0), XI], p - 1)
    b = thread(p, [(1, 0), (p - 2, 1), (1, 0)], p - 1)
    c = thread(p, [XI, (p - 1, 0), (1, 0)], p - 1)
    return CycleRep.of({a: 1}), CycleRep.of({b: 1}), CycleRep.of({c: 1})


# ---------------------------------------------------------------------------
# comparison with the lattice model


@dataclass
class Comparison:
    p: int
    i: int
    ok: bool
    oracle_total: int
    model_total: int
    mismatches: list[tuple[tuple[int, int, int, int], int, int]]

    def summary(self) -> str:
        head = f"p={self.p} i={self.i}: oracle {self.oracle_total}, model {self.model_total}"
        if self.ok:
            return head + ", equal"
        rows = ", ".join(f"{key}: model {m} oracle {o}" for key, m, o in self.mismatches[:5])
        return head + f", {len(self.mismatches)} mismatching sectors ({rows})"


def v_sector_dims(n: int) -> dict[tuple[int, int], int]:
    from .psi import build_V

    return build_V(n).sector_dims()


def compare_model_oracle(p: int, i: int, conv: Convention = CALIBRATED, junction: str = DEFAULT_JUNCTION,
                         field_: Field | str = QQ, cap: int = DEFAULT_CAP) -> Comparison:
    oracle = homology_of_chain(build_chain(p, i, junction, cap), field_)
    model = model_graded_dims(p, i, conv)
    mism = model.diff(oracle)
    return Comparison(p, i, not mism, oracle.total(), model.total(), mism)


def compare_V_oracle(n: int, junction: str = DEFAULT_JUNCTION, field_: Field | str = QQ) -> Comparison:
    """p = 2: sector totals of the homology in degree -n against V_n."""
    oracle = homology_of_chain(build_chain(2, -n, junction), field_).sectors()
    model = v_sector_dims(n)
    keys = sorted(set(oracle) | set(model))
    mism = [((s, t, 0, 0), model.get((s, t), 0), oracle.get((s, t), 0)) for s, t in keys
            if model.get((s, t), 0) != oracle.get((s, t), 0)]
    return Comparison(2, -n, not mism, sum(oracle.values()), sum(model.values()), mism)


# ---------------------------------------------------------------------------
# products in homology versus the lattice-model product


def homology_basis(c: DgBimodule, field_: Field) -> dict[tuple[int, int, int, int], tuple[dict[int, int], Echelon]]:
    """One cycle representative per nonzero homology sector, with the boundary echelon.

    Raises AssertionError if any sector has homology of dimension above one.
    """
    out = {}
    for key, members in c.sectors.items():
        kernel = _kernel_vectors(c, members, field_)
        bnd = _boundary_space(c, key, field_)
        span = Echelon(field_)
        for pv in bnd.pivots.values():
            span.add(pv)
        reps = [v for v in kernel if span.add(v)]
        if len(reps) > 1:
            raise AssertionError(f"homology of dimension {len(reps)} in sector {key}")
        if reps:
            out[key] = (reps[0], bnd)
    return out


def _kernel_vectors(c: DgBimodule, members: list[int], field_: Field) -> list[dict[int, int]]:
    # eliminate on images, carrying the source combination along
    piv: dict = {}
    kernel = []
    for n in members:
        row = {("img", m): field_(x) for m, x in c.differential[n].items()}
        row[("src", n)] = field_(1)
        while True:
            img_keys = [k for k in row if k[0] == "img"]
            if not img_keys:
                kernel.append({k[1]: x for k, x in row.items()})
                break
            col = min(img_keys)
            if col not in piv:
                inv = field_.inv(row[col])
                piv[col] = {k: field_(x * inv) for k, x in row.items()}
                break
            factor = row[col]
            for k, x in piv[col].items():
                nv = field_(row.get(k, 0) - factor * x)
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return kernel


def product_check(p: int, n_max: int, conv: Convention = CALIBRATED, field_: Field | None = None) -> dict:
    """Compare products of homology classes with the lattice-model product.

    Cycle representatives are multiplied in the tensor algebra, which glues
    the last factor of the left word to the first factor of the right word.
    The result is reduced modulo boundaries and compared with the model:
    nonzero-ness must agree, and the nonzero structure constants must equal
    the model's signs up to a rescaling of basis vectors by +-1, tested by
    solving the resulting linear system over GF(2).
    """
    from .upsilon import LatticePoint7, multiply, points_of_degree

    field_ = field_ or GF(2**31 - 1)
    chains = {n: build_chain(p, -n) for n in range(n_max + 1)}
    hom = {n: homology_basis(chains[n], field_) for n in range(n_max + 1)}
    points = {n: {(w.s, w.t, w.j, w.k): w for w in points_of_degree(p, -n, conv) if w.i <= 0} for n in range(n_max + 1)}

    def rep_words(n, key):
        vec, _ = hom[n][key]
        return {chains[n].words[m]: x for m, x in vec.items()}

    mismatches = []
    equations = []
    pairs = 0
    for n1 in range(n_max + 1):
        for n2 in range(n_max + 1 - n1):
            for k1 in hom[n1]:
                for k2 in hom[n2]:
                    if k1[1] != k2[0]:
                        continue
                    pairs += 1
                    w, v = points[n1][k1], points[n2][k2]
                    model = multiply(p, w, v, conv)
                    prod = _concat(rep_words(n1, k1), rep_words(n2, k2))
                    tkey = (k1[0], k2[1], k1[2] + k2[2], k1[3] + k2[3])
                    coeff = 0
                    if prod and tkey in hom[n1 + n2]:
                        target_vec, bnd = hom[n1 + n2][tkey]
                        vec = chains[n1 + n2].vector(prod)
                        reduced = bnd.reduce(vec)
                        if reduced:
                            tr = bnd.reduce(target_vec)
                            col = min(tr)
                            coeff = field_(reduced.get(col, 0) * field_.inv(tr[col]))
                            rest = {kk: field_(reduced.get(kk, 0) - coeff * tr.get(kk, 0)) for kk in set(reduced) | set(tr)}
                            if any(rest.values()):
                                raise AssertionError("product is not proportional to the class representative")
                    if bool(coeff) != bool(model):
                        mismatches.append((w, v, coeff, model))
                    elif coeff:
                        q = field_.characteristic
                        signed = coeff if coeff <= q // 2 else coeff - q
                        if signed not in (1, -1):
                            raise AssertionError(f"structure constant {signed} is not a sign")
                        target = points[n1 + n2][tkey]
                        equations.append((w, v, target, 0 if signed * model.sign == 1 else 1))
    inconsistent = _gf2_inconsistencies(equations)
    return {"pairs": pairs, "nonzero": len(equations), "mismatches": mismatches, "sign_inconsistencies": inconsistent}


def _gf2_inconsistencies(equations) -> int:
    """Count equations eps(w) + eps(v) + eps(target) = rhs (mod 2) that cannot be satisfied."""
    ids: dict = {}
    piv: dict[int, tuple[int, int]] = {}
    bad = 0
    for w, v, target, rhs in equations:
        row = 0
        for u in (w, v, target):
            row ^= 1 << ids.setdefault(u, len(ids))
        while row:
            hb = row.bit_length() - 1
            if hb not in piv:
                piv[hb] = (row, rhs)
                break
            prow, prhs = piv[hb]
            row ^= prow
            rhs ^= prhs
        if not row and rhs:
            bad += 1
    return bad


# ---------------------------------------------------------------------------
# calibration


def calibrate(checks=((3, -1), (3, -2), (3, -3), (2, -1)), candidates: dict | None = None) -> dict:
    """Search junction conventions and degree conventions for the unique one
    under which e_p (x) e_1 is a nonzero class in degree -1 and the model
    matches the oracle at every (p, i) in ``checks``."""
    from dataclasses import replace

    candidates = candidates or {
        "junction": list(JUNCTIONS),
        "degree_shift": ["a-b-1", "a-1"],
        "psi_reading": ["j+k", "j-k"],
    }
    survivors = []
    log = []
    for junction in candidates["junction"]:
        ok_top = True
        try:
            c = build_chain(3, -1, junction)
            word = thread(3, [E, E], 3, junction)
            res = verify_cycle(c, CycleRep.of({word: 1}))
            ok_top = res["cycle"] and not res["boundary"]
        except (ValueError, KeyError, CalibrationError, NotAComplexError) as exc:
            log.append(f"junction {junction}: rejected ({exc})")
            continue
        if not ok_top:
            log.append(f"junction {junction}: e_p (x) e_1 is not a nonzero class")
            continue
        for shift in candidates["degree_shift"]:
            for reading in candidates["psi_reading"]:
                conv = replace(CALIBRATED, degree_shift=shift, psi_reading=reading)
                fails = []
                for p, i in checks:
                    try:
                        cmp = compare_model_oracle(p, i, conv, junction)
                    except (NotAComplexError, CalibrationError) as exc:
                        fails.append(f"p={p} i={i}: {exc}")
                        continue
                    if not cmp.ok:
                        fails.append(cmp.summary())
                tag = f"junction={junction} degree_shift={shift} psi_reading={reading}"
                if fails:
                    log.append(f"{tag}: fails ({fails[0]})")
                else:
                    log.append(f"{tag}: passes")
                    survivors.append({"junction": junction, "convention": conv.to_dict()})
    return {"survivors": survivors, "log": log, "checks": [list(c) for c in checks]}
