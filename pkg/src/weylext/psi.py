"""The quiver algebra Psi and the bimodules built from it.

Psi has vertices 1..p and, for each 2 <= h <= p, two arrows from h to h-1
named ``x`` and ``xi`` (written e_{h-1} x e_h), subject to xi x = x xi and
xi^2 = 0.  A path is x^a xi^b e_t with b in {0, 1}; its left vertex is
s = t - a - b.  Degrees are (j, k) = (b - a, a).

A bimodule is stored by its basis (each element sitting in one sector
(s, t, j, k)) together with sparse tables for the left and right actions of
the two generators.  "x acting on the left" always means the arrow ending at
the element's left vertex, so it lowers the left vertex by one; on the right
it raises the right vertex by one.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field, replace

from .core import QQ, Echelon, Field, GradedDims, Scalar

GENERATORS = ("x", "xi")
GEN_DEGREE = {"x": (-1, 1), "xi": (1, 0)}

Action = dict[str, tuple[dict[int, Scalar], ...]]


# ---------------------------------------------------------------------------
# Psi itself


@dataclass(frozen=True, order=True)
class PsiMonomial:
    t: int
    a: int
    b: int

    @property
    def s(self) -> int:
        return self.t - self.a - self.b

    @property
    def j(self) -> int:
        return self.b - self.a

    @property
    def k(self) -> int:
        return self.a

    @property
    def degree(self) -> tuple[int, int]:
        return (self.j, self.k)

    def is_valid(self, p: int) -> bool:
        return 1 <= self.s <= self.t <= p and self.b in (0, 1) and self.a >= 0

    def is_idempotent(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self) -> str:
        parts = []
        if self.a:
            parts.append("x" if self.a == 1 else f"x^{self.a}")
        if self.b:
            parts.append("xi")
        parts.append(f"e{self.t}")
        return " ".join(parts)


def idempotent(t: int) -> PsiMonomial:
    return PsiMonomial(t, 0, 0)


def arrow(letter: str, t: int) -> PsiMonomial:
    """The arrow e_{t-1} letter e_t."""
    if letter == "x":
        return PsiMonomial(t, 1, 0)
    if letter == "xi":
        return PsiMonomial(t, 0, 1)
    raise ValueError(f"unknown generator {letter!r}")


def psi_basis(p: int) -> list[PsiMonomial]:
    out = []
    for t in range(1, p + 1):
        for a in range(0, t):
            for b in (0, 1):
                m = PsiMonomial(t, a, b)
                if m.is_valid(p):
                    out.append(m)
    return out


def psi_multiply(m: PsiMonomial, n: PsiMonomial) -> PsiMonomial | None:
    """Path concatenation m * n (m on the left); None when the product is zero."""
    if m.t != n.s or m.b + n.b > 1:
        return None
    r = PsiMonomial(n.t, m.a + n.a, m.b + n.b)
    return r if r.s >= 1 else None


def psi_graded_dims(p: int) -> GradedDims:
    return GradedDims.count((m.s, m.t, m.j, m.k) for m in psi_basis(p))


# ---------------------------------------------------------------------------
# bimodules


def _apply(table: tuple[dict[int, Scalar], ...], vec: Mapping[int, Scalar]) -> dict[int, Scalar]:
    out: dict[int, Scalar] = {}
    for u, c in vec.items():
        for v, d in table[u].items():
            out[v] = out.get(v, 0) + c * d
    return {v: c for v, c in out.items() if c}


@dataclass(frozen=True)
class Bimodule:
    """A finite-dimensional graded Psi-Psi-bimodule with explicit action tables.

    ``sigma`` records, for the left and right side, whether vertex labels on
    that side have been reflected by s -> p + 1 - s.  Reflected labels move in
    the opposite direction under the generators, which the audit accounts for.
    """

    p: int
    labels: tuple[str, ...]
    sectors: tuple[tuple[int, int, int, int], ...]
    left: Action
    right: Action
    sigma: tuple[bool, bool] = (False, False)
    name: str = ""

    def __post_init__(self):
        n = len(self.labels)
        if len(self.sectors) != n:
            raise ValueError("labels and sectors differ in length")
        for side in (self.left, self.right):
            for g in GENERATORS:
                if len(side[g]) != n:
                    raise ValueError(f"action table for {g} has wrong length")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def graded_dims(self) -> GradedDims:
        return GradedDims.count(self.sectors)

    def left_restriction(self) -> GradedDims:
        """Graded dims as a left module: the right vertex is forgotten (set to 0)."""
        return GradedDims.count((s, 0, j, k) for s, _, j, k in self.sectors)

    def right_restriction(self) -> GradedDims:
        return GradedDims.count((0, t, j, k) for _, t, j, k in self.sectors)

    def act_left(self, g: str, vec: Mapping[int, Scalar]) -> dict[int, Scalar]:
        return _apply(self.left[g], vec)

    def act_right(self, g: str, vec: Mapping[int, Scalar]) -> dict[int, Scalar]:
        return _apply(self.right[g], vec)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def _step(self, side: int) -> int:
        # left generators lower the left vertex, right generators raise the right one;
        # a reflected side runs the other way
        base = -1 if side == 0 else 1
        return -base if self.sigma[side] else base

    def audit(self) -> list[str]:
        """Check degrees, Psi-relations on both sides, and that the sides commute."""
        problems: list[str] = []
        steps = (self._step(0), self._step(1))
        for side, table in ((0, self.left), (1, self.right)):
            for g in GENERATORS:
                dj, dk = GEN_DEGREE[g]
                for u, img in enumerate(table[g]):
                    s, t, j, k = self.sectors[u]
                    want = (s + steps[0], t, j + dj, k + dk) if side == 0 else (s, t + steps[1], j + dj, k + dk)
                    for v in img:
                        if self.sectors[v] != want:
                            problems.append(f"{'left' if side == 0 else 'right'} {g} on {self.labels[u]} hits {self.labels[v]} in wrong sector")
        for u in range(self.dim):
            e = {u: 1}
            for act, side in ((self.act_left, "left"), (self.act_right, "right")):
                if act("xi", act("xi", e)):
                    problems.append(f"{side} xi^2 != 0 on {self.labels[u]}")
                if act("x", act("xi", e)) != act("xi", act("x", e)):
                    problems.append(f"{side} x xi != xi x on {self.labels[u]}")
            for g in GENERATORS:
                for h in GENERATORS:
                    if self.act_right(h, self.act_left(g, e)) != self.act_left(g, self.act_right(h, e)):
                        problems.append(f"left {g} and right {h} do not commute on {self.labels[u]}")
        return problems

    def to_json(self) -> dict:
        def table(a: Action) -> dict:
            return {g: [{str(v): str(c) for v, c in sorted(img.items())} for img in a[g]] for g in GENERATORS}

        return {
            "name": self.name,
            "p": self.p,
            "sigma": list(self.sigma),
            "basis": [
                {"label": lab, "s": s, "t": t, "j": j, "k": k}
                for lab, (s, t, j, k) in zip(self.labels, self.sectors)
            ],
            "left": table(self.left),
            "right": table(self.right),
        }


def _empty_action(n: int) -> Action:
    return {g: tuple({} for _ in range(n)) for g in GENERATORS}


def regular_bimodule(p: int) -> Bimodule:
    """Psi as a bimodule over itself."""
    basis = psi_basis(p)
    pos = {m: n for n, m in enumerate(basis)}
    left: Action = {}
    right: Action = {}
    for g in GENERATORS:
        lt, rt = [], []
        for m in basis:
            img = psi_multiply(arrow(g, m.s), m) if m.s >= 2 else None
            lt.append({pos[img]: 1} if img else {})
            img = psi_multiply(m, arrow(g, m.t + 1)) if m.t < p else None
            rt.append({pos[img]: 1} if img else {})
        left[g], right[g] = tuple(lt), tuple(rt)
    return Bimodule(p, tuple(str(m) for m in basis), tuple((m.s, m.t, m.j, m.k) for m in basis), left, right, name="Psi")


def psi_zero(p: int, *, sigma: bool = False, bar: bool = False) -> Bimodule:
    """The semisimple part Psi^0, optionally right-twisted by sigma.

    ``bar`` drops the summand e_p, leaving the (p-1)-dimensional piece.
    """
    vertices = range(1, p) if bar else range(1, p + 1)
    labels = tuple(f"e{s}" for s in vertices)
    sectors = tuple((s, s, 0, 0) for s in vertices)
    b = Bimodule(p, labels, sectors, _empty_action(len(labels)), _empty_action(len(labels)), name="Psi0bar" if bar else "Psi0")
    return twist(b, "right", "sigma") if sigma else b


def dual(b: Bimodule) -> Bimodule:
    """Graded dual: the dual of a vector in sector (s, t, j, k) sits in (t, s, -j, -k).

    (g . phi)(m) = phi(m . g) and (phi . g)(m) = phi(g . m).
    """
    n = b.dim
    left: Action = {}
    right: Action = {}
    for g in GENERATORS:
        lt: list[dict[int, Scalar]] = [{} for _ in range(n)]
        rt: list[dict[int, Scalar]] = [{} for _ in range(n)]
        for v in range(n):
            for u, c in b.right[g][v].items():
                lt[u][v] = c
            for u, c in b.left[g][v].items():
                rt[u][v] = c
        left[g], right[g] = tuple(lt), tuple(rt)
    labels = tuple(lab[:-1] if lab.endswith("*") else lab + "*" for lab in b.labels)
    sectors = tuple((t, s, -j, -k) for s, t, j, k in b.sectors)
    name = b.name[:-1] if b.name.endswith("*") else b.name + "*"
    return Bimodule(b.p, labels, sectors, left, right, (b.sigma[1], b.sigma[0]), name)


def shift(b: Bimodule, dj: int = 0, dk: int = 0) -> Bimodule:
    """b<dj>[dk]: every basis vector moves from (j, k) to (j + dj, k + dk)."""
    sectors = tuple((s, t, j + dj, k + dk) for s, t, j, k in b.sectors)
    return replace(b, sectors=sectors, name=f"{b.name}<{dj}>[{dk}]")


def twist(b: Bimodule, side: str, auto: str) -> Bimodule:
    """Twist one side of ``b`` by sigma (vertex reflection) or tau (xi -> -xi)."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be left or right, got {side!r}")
    idx = 0 if side == "left" else 1
    if auto == "tau":
        table = b.left if idx == 0 else b.right
        flipped = dict(table)
        flipped["xi"] = tuple({v: -c for v, c in img.items()} for img in table["xi"])
        kw = {"left": flipped} if idx == 0 else {"right": flipped}
        return replace(b, name=f"tau[{side}]{b.name}", **kw)
    if auto == "sigma":
        p = b.p
        if idx == 0:
            sectors = tuple((p + 1 - s, t, j, k) for s, t, j, k in b.sectors)
        else:
            sectors = tuple((s, p + 1 - t, j, k) for s, t, j, k in b.sectors)
        sig = list(b.sigma)
        sig[idx] = not sig[idx]
        return replace(b, sectors=sectors, sigma=tuple(sig), name=f"sigma[{side}]{b.name}")
    raise ValueError(f"auto must be sigma or tau, got {auto!r}")


def signed_rescaling_is_isomorphism(src: Bimodule, dst: Bimodule, signs: Mapping[int, int]) -> bool:
    """Does b_u -> signs[u] * b_u (same index) intertwine all four actions?"""
    if src.sectors != dst.sectors:
        return False
    for g in GENERATORS:
        for a_src, a_dst in ((src.left[g], dst.left[g]), (src.right[g], dst.right[g])):
            for u in range(src.dim):
                lhs = {v: signs[u] * c for v, c in a_dst[u].items()}  # g acting after the map
                rhs = {v: c * signs[v] for v, c in a_src[u].items()}  # map after g
                if lhs != rhs:
                    return False
    return True


# ---------------------------------------------------------------------------
# quotients of tensor products


@dataclass
class _Quotient:
    """Quotient of a span of pair-words by relations, one (s, t, j, k) sector at a time."""

    field: Field
    echelons: dict = field(default_factory=dict)

    def add_relation(self, sector, vec: Mapping) -> None:
        self.echelons.setdefault(sector, Echelon(self.field)).add(vec)

    def normal_form(self, sector, vec: Mapping) -> dict:
        ech = self.echelons.get(sector)
        if ech is None:
            f = self.field
            return {k: f(v) for k, v in vec.items() if f(v)}
        return ech.reduce(vec)


def _finish_quotient(p, pairs, sector_of, quotient, act_left, act_right, label_of, sigma, name) -> Bimodule:
    by_sector: dict = {}
    for pr in pairs:
        by_sector.setdefault(sector_of(pr), []).append(pr)
    basis = []
    for sec in sorted(by_sector):
        ech = quotient.echelons.get(sec)
        for pr in sorted(by_sector[sec]):
            if ech is None or pr not in ech.pivots:
                basis.append(pr)
    pos = {pr: n for n, pr in enumerate(basis)}

    def image(vec_pairs: Mapping) -> dict[int, Scalar]:
        grouped: dict = {}
        for pr, c in vec_pairs.items():
            bucket = grouped.setdefault(sector_of(pr), {})
            bucket[pr] = bucket.get(pr, 0) + c
        out: dict[int, Scalar] = {}
        for sec, vec in grouped.items():
            for pr, c in quotient.normal_form(sec, vec).items():
                out[pos[pr]] = c
        return out

    left: Action = {}
    right: Action = {}
    for g in GENERATORS:
        left[g] = tuple(image(act_left(g, pr)) for pr in basis)
        right[g] = tuple(image(act_right(g, pr)) for pr in basis)
    return Bimodule(p, tuple(label_of(pr) for pr in basis), tuple(sector_of(pr) for pr in basis), left, right, sigma, name)


def tensor_over_psi(b1: Bimodule, b2: Bimodule, field: Field = QQ) -> Bimodule:
    """b1 (x)_Psi b2 as the quotient of b1 (x)_{Psi^0} b2 by m.r (x) m' - m (x) r.m'."""
    if b1.p != b2.p:
        raise ValueError("bimodules over different Psi")
    if b1.sigma[1] != b2.sigma[0]:
        raise ValueError("inner sides carry different vertex conventions")
    p = b1.p
    step = b1._step(1)
    pairs = [(u, v) for u in range(b1.dim) for v in range(b2.dim) if b1.sectors[u][1] == b2.sectors[v][0]]

    def sector_of(pr):
        u, v = pr
        s, _, j1, k1 = b1.sectors[u]
        _, t, j2, k2 = b2.sectors[v]
        return (s, t, j1 + j2, k1 + k2)

    quotient = _Quotient(field)
    for u in range(b1.dim):
        h_minus = b1.sectors[u][1]
        for v in range(b2.dim):
            if b2.sectors[v][0] != h_minus + step:
                continue
            for g in GENERATORS:
                rel: dict = {}
                for u2, c in b1.right[g][u].items():
                    rel[(u2, v)] = rel.get((u2, v), 0) + c
                for v2, c in b2.left[g][v].items():
                    rel[(u, v2)] = rel.get((u, v2), 0) - c
                rel = {k: c for k, c in rel.items() if c}
                if rel:
                    quotient.add_relation(sector_of(next(iter(rel))), rel)

    def act_left(g, pr):
        u, v = pr
        return {(u2, v): c for u2, c in b1.left[g][u].items()}

    def act_right(g, pr):
        u, v = pr
        return {(u, v2): c for v2, c in b2.right[g][v].items()}

    return _finish_quotient(
        p, pairs, sector_of, quotient, act_left, act_right,
        lambda pr: f"{b1.labels[pr[0]]} | {b2.labels[pr[1]]}",
        (b1.sigma[0], b2.sigma[1]), f"{b1.name}(x){b2.name}",
    )


# ---------------------------------------------------------------------------
# one-sided modules L_l, L_r


@dataclass(frozen=True)
class OneSidedModule:
    """A graded module over Psi on one side, plus the endomorphism t from the
    exterior algebra Lambda = F[t]/t^2 acting on the other side."""

    p: int
    side: str  # "left" or "right"
    labels: tuple[str, ...]
    vertex: tuple[int, ...]
    degree: tuple[tuple[int, int], ...]
    action: Action
    t_map: tuple[dict[int, Scalar], ...]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def graded_dims(self) -> GradedDims:
        if self.side == "left":
            return GradedDims.count((v, 0, j, k) for v, (j, k) in zip(self.vertex, self.degree))
        return GradedDims.count((0, v, j, k) for v, (j, k) in zip(self.vertex, self.degree))

    def dual(self) -> "OneSidedModule":
        """The dual is a module on the opposite side with negated degrees."""
        n = self.dim
        action: Action = {}
        for g in GENERATORS:
            tab: list[dict[int, Scalar]] = [{} for _ in range(n)]
            for v in range(n):
                for u, c in self.action[g][v].items():
                    tab[u][v] = c
            action[g] = tuple(tab)
        tmap: list[dict[int, Scalar]] = [{} for _ in range(n)]
        for v in range(n):
            for u, c in self.t_map[v].items():
                tmap[u][v] = c
        return OneSidedModule(
            self.p, "right" if self.side == "left" else "left",
            tuple(lab + "*" for lab in self.labels), self.vertex,
            tuple((-j, -k) for j, k in self.degree), action, tuple(tmap),
        )


def build_Ll(p: int) -> OneSidedModule:
    """L_l with basis x.x^m and xi.x^m (0 <= m <= p-1); e_{p-m} fixes both."""
    labels, vertex, degree = [], [], []
    for m in range(p):
        for eps in ("x", "xi"):
            labels.append(f"{eps}.x^{m}")
            vertex.append(p - m)
            # letters contribute x: -1, xi: +1 to j; k places xi.x^m at m-1, x.x^m at m
            degree.append((-1 - m, m) if eps == "x" else (1 - m, m - 1))
    pos = {lab: n for n, lab in enumerate(labels)}
    action: Action = {g: tuple({} for _ in labels) for g in GENERATORS}
    t_map: list[dict[int, Scalar]] = [{} for _ in labels]
    for m in range(p):
        nxt = m + 1 < p
        if nxt:
            action["x"][pos[f"x.x^{m}"]][pos[f"x.x^{m + 1}"]] = 1
            action["x"][pos[f"xi.x^{m}"]][pos[f"xi.x^{m + 1}"]] = 1
            action["xi"][pos[f"x.x^{m}"]][pos[f"xi.x^{m + 1}"]] = 1
        t_map[pos[f"x.x^{m}"]][pos[f"xi.x^{m}"]] = 1
    return OneSidedModule(p, "left", tuple(labels), tuple(vertex), tuple(degree), action, tuple(t_map))


def build_Lr(p: int) -> OneSidedModule:
    """L_r with basis x^m.x and x^m.xi; the right idempotent e_{m+1} fixes both."""
    labels, vertex, degree = [], [], []
    for m in range(p):
        for eps in ("x", "xi"):
            labels.append(f"x^{m}.{eps}")
            vertex.append(m + 1)
            degree.append((-1 - m, m) if eps == "x" else (1 - m, m - 1))
    pos = {lab: n for n, lab in enumerate(labels)}
    action: Action = {g: tuple({} for _ in labels) for g in GENERATORS}
    t_map: list[dict[int, Scalar]] = [{} for _ in labels]
    for m in range(p):
        if m + 1 < p:
            action["x"][pos[f"x^{m}.x"]][pos[f"x^{m + 1}.x"]] = 1
            action["x"][pos[f"x^{m}.xi"]][pos[f"x^{m + 1}.xi"]] = 1
            action["xi"][pos[f"x^{m}.x"]][pos[f"x^{m + 1}.xi"]] = 1
        t_map[pos[f"x^{m}.x"]][pos[f"x^{m}.xi"]] = 1
    return OneSidedModule(p, "right", tuple(labels), tuple(vertex), tuple(degree), action, tuple(t_map))


def tensor_over_lambda(ll: OneSidedModule, lr: OneSidedModule, field: Field = QQ) -> Bimodule:
    """Generic L_l (x)_Lambda L_r, computed as a quotient (used to cross-check build_M)."""
    p = ll.p
    pairs = [(u, v) for u in range(ll.dim) for v in range(lr.dim)]

    def sector_of(pr):
        u, v = pr
        return (ll.vertex[u], lr.vertex[v], ll.degree[u][0] + lr.degree[v][0], ll.degree[u][1] + lr.degree[v][1])

    quotient = _Quotient(field)
    for u, v in pairs:
        rel: dict = {}
        for u2, c in ll.t_map[u].items():
            rel[(u2, v)] = rel.get((u2, v), 0) + c
        for v2, c in lr.t_map[v].items():
            rel[(u, v2)] = rel.get((u, v2), 0) - c
        rel = {k: c for k, c in rel.items() if c}
        if rel:
            quotient.add_relation(sector_of(next(iter(rel))), rel)
    return _finish_quotient(
        p, pairs, sector_of, quotient,
        lambda g, pr: {(u2, pr[1]): c for u2, c in ll.action[g][pr[0]].items()},
        lambda g, pr: {(pr[0], v2): c for v2, c in lr.action[g][pr[1]].items()},
        lambda pr: f"{ll.labels[pr[0]]} (x) {lr.labels[pr[1]]}",
        (False, False), "Ll(x)Lr",
    )


# ---------------------------------------------------------------------------
# M and M-bar


def _m_label(m: int, n: int, eps: str) -> str:
    return f"x.x^{m} (x) x^{n}.{eps}"


def build_M(p: int) -> Bimodule:
    """M = L_l (x)_Lambda L_r on the transversal {x.x^m (x) x^n.x, x.x^m (x) x^n.xi}.

    The Lambda-relations xi.x^m (x) x^n.x = x.x^m (x) x^n.xi and
    xi.x^m (x) x^n.xi = 0 are applied while writing the action tables.
    """
    return _build_M(p, drop_top=False)


def build_Mbar(p: int) -> Bimodule:
    """The kernel of M -> Psi^0 e_p killing everything except x.1 (x) 1.xi."""
    return _build_M(p, drop_top=True)


def _build_M(p: int, drop_top: bool) -> Bimodule:
    keys = []
    for m in range(p):
        for n in range(p):
            for eps in ("x", "xi"):
                if drop_top and (m, n, eps) == (0, 0, "xi"):
                    continue
                keys.append((m, n, eps))
    pos = {key: idx for idx, key in enumerate(keys)}

    def sector(m, n, eps):
        if eps == "x":
            return (p - m, n + 1, -m - n - 2, m + n)
        return (p - m, n + 1, -m - n, m + n - 1)

    left: Action = {g: tuple({} for _ in keys) for g in GENERATORS}
    right: Action = {g: tuple({} for _ in keys) for g in GENERATORS}
    for (m, n, eps), idx in pos.items():
        if m + 1 < p:
            left["x"][idx][pos[(m + 1, n, eps)]] = 1
            if eps == "x":
                # xi.x^{m+1} (x) x^n.x is rewritten through t as x.x^{m+1} (x) x^n.xi
                left["xi"][idx][pos[(m + 1, n, "xi")]] = 1
        if n + 1 < p:
            right["x"][idx][pos[(m, n + 1, eps)]] = 1
            if eps == "x":
                right["xi"][idx][pos[(m, n + 1, "xi")]] = 1
    labels = tuple(_m_label(*key) for key in keys)
    sectors = tuple(sector(*key) for key in keys)
    return Bimodule(p, labels, sectors, left, right, name="Mbar" if drop_top else "M")


def xi_count_signs(b: Bimodule) -> dict[int, int]:
    """(-1)^(number of xi letters) for each basis vector of M or M-bar."""
    return {u: (-1 if lab.endswith(".xi") else 1) for u, lab in enumerate(b.labels)}


def x_exponent_signs(b: Bimodule) -> dict[int, int]:
    """(-1)^(m + n) for x.x^m (x) x^n.eps, the sign that fails to give an isomorphism."""
    out = {}
    for u, lab in enumerate(b.labels):
        left_part, right_part = lab.split(" (x) ")
        m = int(left_part.split("^")[1])
        n = int(right_part.split(".")[0].split("^")[1])
        out[u] = -1 if (m + n) % 2 else 1
    return out


# ---------------------------------------------------------------------------
# p = 2: the bimodules V_n


@dataclass(frozen=True)
class VBimodule:
    """V_n for p = 2, built from the spaces S^h of degree-h polynomials in x, xi.

    Components and their sectors:
      S^{n-1} = e2 V e1,  S^n_l = e1 V e1,  S^n_r = e2 V e2,  S^{n+1} = e1 V e2.
    A basis vector is (component, c) standing for x^c xi^(h-c).
    """

    n: int
    basis: tuple[tuple[str, int], ...]

    COMPONENTS = {"low": (2, 1, -1), "l": (1, 1, 0), "r": (2, 2, 0), "high": (1, 2, 1)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def sector(self, idx: int) -> tuple[int, int]:
        s, t, _ = self.COMPONENTS[self.basis[idx][0]]
        return (s, t)

    def sector_dims(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for idx in range(self.dim):
            key = self.sector(idx)
            out[key] = out.get(key, 0) + 1
        return out

    def act(self, side: str, g: str, idx: int) -> int | None:
        """Index of g acting on basis vector ``idx``; None for zero.  Signs are
        irrelevant since 1 = -1 in characteristic 2."""
        comp, c = self.basis[idx]
        targets = {"left": {"low": "l", "r": "high"}, "right": {"low": "r", "l": "high"}}[side]
        if comp not in targets:
            return None
        new = (targets[comp], c + (1 if g == "x" else 0))
        return self.basis.index(new)

    def audit(self) -> list[str]:
        problems = []
        step = {"left": (-1, 0), "right": (0, 1)}
        for idx in range(self.dim):
            s, t = self.sector(idx)
            for side in ("left", "right"):
                for g in GENERATORS:
                    r = self.act(side, g, idx)
                    if r is None:
                        continue
                    want = (s + step[side][0], t + step[side][1])
                    if self.sector(r) != want:
                        problems.append(f"{side} {g} on {self.basis[idx]} lands in {self.sector(r)}")
                    for h in GENERATORS:
                        if self.act(side, h, r) is not None:
                            problems.append(f"{side} action is not square-zero on {self.basis[idx]}")
        return problems


def build_V(n: int, p: int = 2) -> VBimodule:
    if p != 2:
        raise ValueError("V_n is only defined for p = 2")
    if n < 0:
        raise ValueError("n must be >= 0")
    basis = []
    for comp, (_, _, off) in VBimodule.COMPONENTS.items():
        h = n + off
        basis.extend((comp, c) for c in range(max(h + 1, 0)))
    return VBimodule(n, tuple(basis))
