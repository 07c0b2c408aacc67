"""Cartan tables, Ext dimensions, quivers and comparison with reference data.

Conventions: the entry of the Cartan table at (u, v) lists the basis monomials
of e_u mu e_v by (j, k).  Read as composition factors, u is the factor and v
the projective (column).  An arrow v -> u with label (j, k) is a basis
monomial of e_u mu e_v lying in rad but not rad^2.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations
from pathlib import Path

from .schur import BlockAlgebra, MuMonomial

Vertex = tuple[int, ...]
CartanTable = dict[tuple[Vertex, Vertex], Counter]


def cartan(b: BlockAlgebra) -> CartanTable:
    table: CartanTable = {}
    for m in b.basis:
        table.setdefault((m.left, m.right), Counter())[(m.j, m.k)] += 1
    return table


def ext_dim(b: BlockAlgebra, source: Vertex, target: Vertex, k: int, j: int | None = None) -> int:
    """dim Ext^k(Delta(source), Delta(target)), optionally in a single j-degree."""
    entry = cartan(b).get((tuple(target), tuple(source)), Counter())
    return sum(n for (jj, kk), n in entry.items() if kk == k and (j is None or jj == j))


def poincare(b: BlockAlgebra, u: Vertex, v: Vertex) -> dict[tuple[int, int], int]:
    """Generating function of e_u mu e_v as {(j, k): coefficient} for sum c x^j y^k."""
    return dict(sorted(cartan(b).get((tuple(u), tuple(v)), Counter()).items()))


def format_poincare(poly: dict[tuple[int, int], int]) -> str:
    if not poly:
        return "0"
    terms = []
    for (j, k), c in sorted(poly.items(), key=lambda kv: (kv[0][1], -kv[0][0])):
        parts = []
        if j:
            parts.append("x" if j == 1 else f"x^{j}")
        if k:
            parts.append("y" if k == 1 else f"y^{k}")
        mono = "*".join(parts)
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# quiver


@dataclass
class QuiverGraph:
    vertices: list[Vertex]
    arrows: list[tuple[Vertex, Vertex, int, int]]  # (source, target, j, k)

    def multiset(self) -> Counter:
        return Counter(self.arrows)

    def to_dot(self, alias: dict[Vertex, int] | None = None) -> str:
        def name(v):
            return f'"{alias[v]}"' if alias else '"' + ",".join(map(str, v)) + '"'

        lines = ["digraph quiver {"]
        for v in sorted(self.vertices, key=lambda v: alias[v] if alias else v):
            lines.append(f"  {name(v)};")
        for s, t, j, k in sorted(self.arrows, key=lambda a: ((alias[a[0]], alias[a[1]]) if alias else (a[0], a[1]), a[2], a[3])):
            lines.append(f'  {name(s)} -> {name(t)} [label="j={j},k={k}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class NilpotenceError(AssertionError):
    pass


def radical_powers(b: BlockAlgebra) -> list[set[MuMonomial]]:
    """rad, rad^2, ... as sets of monomials, until the power vanishes."""
    rad = {m for m in b.basis if not m.is_idempotent()}
    by_left: dict[Vertex, list[MuMonomial]] = {}
    for m in rad:
        by_left.setdefault(m.left, []).append(m)
    powers = [rad]
    current = rad
    while current:
        nxt = set()
        for x in current:
            for y in by_left.get(x.right, ()):
                sign, z = b.multiply(x, y)
                if sign and z in b:
                    nxt.add(z)
        if len(powers) > b.dim + 1:
            raise NilpotenceError("radical candidate is not nilpotent")
        powers.append(nxt)
        current = nxt
    return powers


def quiver(b: BlockAlgebra) -> QuiverGraph:
    powers = radical_powers(b)
    rad = powers[0]
    rad2 = powers[1] if len(powers) > 1 else set()
    arrows = [(m.right, m.left, m.j, m.k) for m in sorted(rad - rad2, key=MuMonomial.flat)]
    return QuiverGraph(b.vertices, arrows)


# ---------------------------------------------------------------------------
# reference data


@dataclass
class ReferenceBlock:
    """Composition factors per projective and the Ext^1-quiver, with integer vertex names."""

    factors: Counter  # (column, factor, j, k) -> multiplicity
    arrows: Counter   # (source, target, j, k) -> multiplicity
    source: str = ""
    errata_applied: list[dict] = field(default_factory=list)

    @property
    def vertices(self) -> list[int]:
        return sorted({c for c, *_ in self.factors} | {f for _, f, *_ in self.factors})

    def column(self, m: int) -> Counter:
        return Counter({(f, j, k): n for (c, f, j, k), n in self.factors.items() if c == m})

    def perturbed(self, column: int, factor: int, j: int, k: int, new_j: int) -> "ReferenceBlock":
        """A copy with one factor label moved, for negative controls."""
        f = Counter(self.factors)
        f[(column, factor, j, k)] -= 1
        f[(column, factor, new_j, k)] += 1
        return ReferenceBlock(+f, Counter(self.arrows), self.source + " (perturbed)")


class ChecksumError(ValueError):
    pass


def data_path(name: str) -> Path:
    return Path(str(resources.files("weylext") / "data" / name))


def load_reference(path: str | Path | None = None, *, apply_errata: bool = True, verify_checksum: bool = True) -> ReferenceBlock:
    """Load a reference CSV (kind, column_or_source, factor_or_target, j, k, multiplicity).

    For the shipped file the sha256 sidecar is checked, and the errata file is
    applied when ``apply_errata`` is set.
    """
    shipped = path is None
    path = data_path("ref_p3_q2.csv") if shipped else Path(path)
    raw = path.read_bytes()
    sidecar = path.with_suffix(".sha256")
    if verify_checksum and sidecar.exists():
        want = sidecar.read_text().split()[0]
        got = hashlib.sha256(raw).hexdigest()
        if want != got:
            raise ChecksumError(f"{path.name}: checksum {got} does not match recorded {want}")
    factors: Counter = Counter()
    arrows: Counter = Counter()
    for row in csv.DictReader(io.StringIO(raw.decode())):
        key = (int(row["column_or_source"]), int(row["factor_or_target"]), int(row["j"]), int(row["k"]))
        n = int(row.get("multiplicity") or 1)
        if row["kind"] == "factor":
            factors[key] += n
        elif row["kind"] == "arrow":
            arrows[key] += n
        else:
            raise ValueError(f"unknown row kind {row['kind']!r}")
    ref = ReferenceBlock(factors, arrows, str(path))
    errata = path.with_name(path.stem + "_errata.csv")
    if apply_errata and errata.exists():
        for row in csv.DictReader(errata.open()):
            c, f, k = int(row["column"]), int(row["factor"]), int(row["k"])
            old, new = int(row["printed_j"]), int(row["corrected_j"])
            if ref.factors[(c, f, old, k)] < 1:
                raise ValueError(f"erratum does not apply: no factor {f}^{k}_{old} in column {c}")
            ref.factors[(c, f, old, k)] -= 1
            ref.factors[(c, f, new, k)] += 1
            ref.errata_applied.append(dict(row))
        ref.factors = +ref.factors
    return ref


def reference_from_block(b: BlockAlgebra, alias: dict[Vertex, int]) -> ReferenceBlock:
    factors: Counter = Counter()
    for (u, v), entry in cartan(b).items():
        for (j, k), n in entry.items():
            factors[(alias[v], alias[u], j, k)] += n
    arrows = Counter((alias[s], alias[t], j, k) for s, t, j, k in quiver(b).arrows)
    return ReferenceBlock(factors, arrows, "derived")


# ---------------------------------------------------------------------------
# matching


@dataclass
class MatchResult:
    ok: bool
    bijections: list[dict[Vertex, int]]
    cartan_diff: list = field(default_factory=list)
    quiver_diff: list = field(default_factory=list)
    message: str = ""

    @property
    def alias(self) -> dict[Vertex, int] | None:
        return self.bijections[0] if len(self.bijections) == 1 else None


def _column_signature(counter: Counter) -> tuple:
    return tuple(sorted(Counter({(j, k): n for (_, j, k), n in counter.items()}).elements()))


def match_reference(b: BlockAlgebra, ref: ReferenceBlock) -> MatchResult:
    """Find vertex bijections under which the Cartan table and quiver equal the reference."""
    model_vertices = b.vertices
    ref_vertices = ref.vertices
    if len(model_vertices) != len(ref_vertices):
        return MatchResult(False, [], message=f"{len(model_vertices)} model vertices against {len(ref_vertices)} reference vertices")
    table = cartan(b)
    model_cols = {v: Counter() for v in model_vertices}
    for (u, v), entry in table.items():
        for (j, k), n in entry.items():
            model_cols[v][(u, j, k)] += n
    ref_cols = {m: ref.column(m) for m in ref_vertices}
    # column signatures (factor-blind) prune the search to a handful of candidates
    cands = {v: [m for m in ref_vertices if _column_signature(ref_cols[m]) == _column_signature(model_cols[v])]
             for v in model_vertices}
    arrows_model = quiver(b).multiset()
    found: list[dict[Vertex, int]] = []
    cartan_only: list[dict[Vertex, int]] = []

    order = sorted(model_vertices, key=lambda v: len(cands[v]))

    def consistent(assign: dict[Vertex, int]) -> bool:
        for v, m in assign.items():
            for (u, j, k), n in model_cols[v].items():
                if u in assign and ref_cols[m][(assign[u], j, k)] != n:
                    return False
        return True

    def rec(pos: int, assign: dict[Vertex, int], used: set[int]):
        if pos == len(order):
            full = dict(assign)
            mapped = Counter({(full[s], full[t], j, k): n for (s, t, j, k), n in arrows_model.items()})
            if _full_cartan_equal(model_cols, ref_cols, full):
                cartan_only.append(full)
                if mapped == ref.arrows:
                    found.append(full)
            return
        v = order[pos]
        for m in cands[v]:
            if m in used:
                continue
            assign[v] = m
            if consistent(assign):
                used.add(m)
                rec(pos + 1, assign, used)
                used.discard(m)
            del assign[v]

    rec(0, {}, set())
    if len(found) == 1:
        return MatchResult(True, found, message="unique bijection")
    # diagnostics against the most natural bijection: lexicographic order
    guess = found[0] if found else (cartan_only[0] if cartan_only else dict(zip(model_vertices, ref_vertices)))
    cdiff, qdiff = diff_against(b, ref, guess)
    msg = "no bijection matches" if not found else f"{len(found)} bijections match"
    return MatchResult(False, found, cdiff, qdiff, msg)


def _full_cartan_equal(model_cols, ref_cols, assign) -> bool:
    for v, m in assign.items():
        mapped = Counter({(assign[u], j, k): n for (u, j, k), n in model_cols[v].items()})
        if mapped != ref_cols[m]:
            return False
    return True


def diff_against(b: BlockAlgebra, ref: ReferenceBlock, alias: dict[Vertex, int]) -> tuple[list, list]:
    """Entries (column, factor, j, k, reference, model) and (source, target, j, k, reference, model) that differ."""
    derived = reference_from_block(b, alias)
    cdiff = [(*key, ref.factors[key], derived.factors[key])
             for key in sorted(set(ref.factors) | set(derived.factors)) if ref.factors[key] != derived.factors[key]]
    qdiff = [(*key, ref.arrows[key], derived.arrows[key])
             for key in sorted(set(ref.arrows) | set(derived.arrows)) if ref.arrows[key] != derived.arrows[key]]
    return cdiff, qdiff


def row_major_alias(p: int, q: int) -> dict[Vertex, int]:
    """Integer names 1..p^q in lexicographic order of vertex tuples."""
    from itertools import product

    return {v: n + 1 for n, v in enumerate(product(range(1, p + 1), repeat=q))}


# ---------------------------------------------------------------------------
# exports


def cartan_rows(b: BlockAlgebra, alias: dict[Vertex, int] | None = None) -> list[dict]:
    rows = []
    for (u, v), entry in sorted(cartan(b).items()):
        for (j, k), n in sorted(entry.items()):
            rows.append({
                "factor": alias[u] if alias else ",".join(map(str, u)),
                "column": alias[v] if alias else ",".join(map(str, v)),
                "j": j, "k": k, "dim": n,
            })
    return rows


def to_csv(rows: Iterable[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
