"""The acceptance suite shared by ``weylext verify`` and the test-suite.

Each criterion returns a :class:`CriterionResult` whose ``record`` maps a
readable key to a dimension (or a boolean outcome).  Field robustness reruns
the field-sensitive criteria over the prime field of characteristic p and
compares records key by key.
"""

from __future__ import annotations

import time
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass, field

from . import dgtensor as dg
from . import psi
from . import report
from .core import GF, QQ, Field, GradedDims
from .schur import associativity_violations, build_mu, closure_violations, embed
from .upsilon import CALIBRATED, Convention, enumerate_points

FieldFor = Callable[[int], Field]


def rational(_p: int) -> Field:
    return QQ


def prime(p: int) -> Field:
    return GF(p)


@dataclass
class CriterionResult:
    number: int
    ok: bool
    detail: str
    record: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"criterion {self.number}: {'PASS' if self.ok else 'FAIL'} ({self.seconds:.1f}s) {self.detail}"


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def criterion_1(reference: report.ReferenceBlock | None = None, conv: Convention = CALIBRATED) -> CriterionResult:
    """Golden match of the p=3, q=2 block against the shipped reference."""
    b = build_mu(3, 2, conv=conv)
    ref = reference if reference is not None else report.load_reference()
    res = report.match_reference(b, ref)
    record = {f"cartan{key}": n for key, n in report.reference_from_block(b, report.row_major_alias(3, 2)).factors.items()}
    note = ""
    if ref.errata_applied:
        note = "; errata applied: " + ", ".join(
            f"column {e['column']} factor {e['factor']} k={e['k']} j {e['printed_j']}->{e['corrected_j']}" for e in ref.errata_applied)
    if res.ok:
        detail = f"unique bijection {sorted(res.alias.values()) == list(range(1, 10)) and 'row-major' or res.alias}, dim {b.dim}{note}"
    else:
        detail = f"{res.message}; cartan diff {res.cartan_diff[:4]}, quiver diff {res.quiver_diff[:4]}{note}"
    return CriterionResult(1, res.ok, detail, record)


ORACLE_CASES = [(p, i) for p in (2, 3, 5) for i in (1, 0, -1, -2, -3, -4)]
EXPECTED_TOTALS = {(3, -1): 19, (3, -2): 27, (3, -3): 37, (2, -1): 8, (2, -2): 12}


@_timed
def criterion_2(field_for: FieldFor = rational, conv: Convention = CALIBRATED, cases=ORACLE_CASES) -> CriterionResult:
    """Model graded dimensions equal oracle homology, sector by sector."""
    bad = []
    record = {}
    for p, i in cases:
        cmp = dg.compare_model_oracle(p, i, conv, field_=field_for(p))
        record[f"total p={p} i={i}"] = cmp.oracle_total
        if not cmp.ok:
            bad.append(cmp.summary())
        want = EXPECTED_TOTALS.get((p, i))
        if want is not None and cmp.oracle_total != want:
            bad.append(f"p={p} i={i}: total {cmp.oracle_total}, expected {want}")
    for n in (1, 2):
        cmp = dg.compare_V_oracle(n, field_=field_for(2))
        record[f"V_{n}"] = cmp.oracle_total
        if not cmp.ok:
            bad.append("V " + cmp.summary())
    totals = ", ".join(f"{k}={EXPECTED_TOTALS[k]}" for k in EXPECTED_TOTALS)
    detail = f"{len(cases)} (p, i) cases equal, totals {totals}" if not bad else "; ".join(bad[:3])
    return CriterionResult(2, not bad, detail, record)


@_timed
def criterion_3(field_for: FieldFor = rational, p: int = 3) -> CriterionResult:
    """Cycle certificates and boundary relations in the dg oracle."""
    F = field_for(p)
    bad: list[str] = []
    record: dict = {}
    n_checks = 0

    def expect(name: str, value: bool):
        nonlocal n_checks
        n_checks += 1
        record[name] = value
        if not value:
            bad.append(name)

    def nonzero_class(c, r, name):
        res = dg.verify_cycle(c, r, F)
        expect(f"{name} cycle", res["cycle"])
        expect(f"{name} not boundary", not res["boundary"])

    for i in (-1, -2, -3, -4):
        c = dg.build_chain(p, i)
        xr, yr = dg.generator_ranges(i)
        for f in xr:
            a, b = dg.x_generator(p, i, f), dg.x_generator_moved(p, i, f)
            nonzero_class(c, a, f"i={i} x_{f}")
            nonzero_class(c, b, f"i={i} x'_{f}")
            expect(f"i={i} x_{f} = +-x'_{f}", dg.classes_equal(c, a, b, 1, F) or dg.classes_equal(c, a, b, -1, F))
        for f in yr:
            a, b = dg.y_generator(p, i, f), dg.y_generator_moved(p, i, f)
            nonzero_class(c, a, f"i={i} y_{f}")
            nonzero_class(c, b, f"i={i} y'_{f}")
            expect(f"i={i} y_{f} = +-y'_{f}", dg.classes_equal(c, a, b, 1, F) or dg.classes_equal(c, a, b, -1, F))
        if i % 2 == 0:
            for v in range(1, p + 1):
                nonzero_class(c, dg.w_power(c, -i // 2, v), f"i={i} e{v} w^{-i // 2}")
        else:
            for v in range(1, p):
                nonzero_class(c, dg.xi_pairs(c, v), f"i={i} e{v} xi-pairs")
    c = dg.build_chain(p, -1)
    for h in range(1, p + 1):
        for d in range(1, h):
            for l in range(0, h - 1):
                a, b = dg.xxi_commute_pair(p, h, d, l)
                expect(f"xxi-commute h={h} d={d} l={l}", dg.classes_equal(c, a, b, -1, F))
    c = dg.build_chain(p, -2)
    a, b = dg.twoximove_pair(p)
    expect("two-xi move", dg.classes_equal(c, a, b, (-1) ** p, F))
    x1, x2, x3 = dg.notwist_triple(p)
    expect("no-twist first", dg.classes_equal(c, x1, x2, -1, F))
    expect("no-twist second", dg.classes_equal(c, x1, x3, 1, F))
    detail = f"{n_checks} checks at p={p}" if not bad else f"{len(bad)} failing: {bad[:4]}"
    return CriterionResult(3, not bad, detail, record)


def bimodule_identities(p: int, F: Field) -> dict[str, bool]:
    M, Mb, R = psi.build_M(p), psi.build_Mbar(p), psi.regular_bimodule(p)
    gM = M.graded_dims()
    Ll, Lr = psi.build_Ll(p), psi.build_Lr(p)
    left = GradedDims()
    for h in range(p):
        left = left + Ll.graded_dims().shift(-1 - h, h)
    out = {
        "dual M = M<2p>[3-2p]": psi.dual(M).graded_dims() == gM.shift(2 * p, 3 - 2 * p),
        "M restricted to the left = sum of shifted L_l": M.left_restriction() == left,
        "M = Psi<-p-1>[p-1] + Psi*<1-p>[p-2] in dims": R.graded_dims().shift(-p - 1, p - 1) + psi.dual(R).graded_dims().shift(1 - p, p - 2) == gM,
        "dual L_l = L_r<p-1>[2-p]": Ll.dual().graded_dims() == Lr.graded_dims().shift(p - 1, 2 - p),
        "L_l (x)_Lambda L_r = M": psi.tensor_over_lambda(Ll, Lr, F).graded_dims() == gM,
        "Psi (x) M = M": psi.tensor_over_psi(R, M, F).graded_dims() == gM,
        "M (x) M = M<-p-1>[p-1]": psi.tensor_over_psi(M, M, F).graded_dims() == gM.shift(-p - 1, p - 1),
        "Mbar (x) Mbar = M<-p-1>[p-1]": psi.tensor_over_psi(Mb, Mb, F).graded_dims() == gM.shift(-p - 1, p - 1),
        "dual dual M = M": psi.dual(psi.dual(M)).graded_dims() == gM and psi.dual(psi.dual(M)).to_json()["left"] == M.to_json()["left"],
        "tau-twisted M = M": psi.signed_rescaling_is_isomorphism(
            psi.twist(psi.twist(M, "left", "tau"), "right", "tau"), M, psi.xi_count_signs(M)),
    }
    for name, b in (("M", M), ("Mbar", Mb), ("Psi", R), ("dual M", psi.dual(M))):
        out[f"audit {name}"] = not b.audit()
    return out


@_timed
def criterion_4(field_for: FieldFor = rational, primes=(3, 5)) -> CriterionResult:
    """Graded-dimension identities for M, M-bar, L_l, L_r and action audits."""
    record = {}
    for p in primes:
        for name, ok in bimodule_identities(p, field_for(p)).items():
            record[f"p={p} {name}"] = ok
    bad = [k for k, v in record.items() if not v]
    detail = f"{len(record)} identities and audits hold" if not bad else f"failing: {bad[:4]}"
    return CriterionResult(4, not bad, detail, record)


def _cartan_counter(b) -> Counter:
    return Counter({(u, v, j, k): n for (u, v), e in report.cartan(b).items() for (j, k), n in e.items()})


@_timed
def criterion_5(seed: int = 0, samples: int = 10_000, conv: Convention = CALIBRATED) -> CriterionResult:
    """Closure, associativity, sector multiplicity, idempotents and embeddings."""
    record: dict = {}
    bad: list[str] = []

    def expect(name, value):
        record[name] = value
        if not value:
            bad.append(name)

    b32 = build_mu(3, 2, conv=conv)
    b52 = build_mu(5, 2, conv=conv)
    expect("closure p=3 q=2", not closure_violations(b32))
    n, viol = associativity_violations(b32)
    record["associativity triples p=3 q=2"] = n
    expect("associativity exhaustive p=3 q=2", not viol)
    expect("closure p=5 q=2", not closure_violations(b52))
    n, viol = associativity_violations(b52, samples=samples, seed=seed)
    record["associativity triples p=5 q=2"] = n
    expect("associativity random p=5 q=2", not viol and n >= samples)
    for p, n_max in ((3, 3), (5, 2)):
        pc = dg.product_check(p, n_max, conv)
        record[f"homology products p={p} n<={n_max}"] = pc["nonzero"]
        expect(f"model product = homology product p={p} n<={n_max}",
               not pc["mismatches"] and pc["sign_inconsistencies"] == 0)
    for p in (2, 3, 5):
        mult = Counter((w.s, w.t, w.i, w.j, w.k) for w in enumerate_points(p, (-4, 1), conv=conv))
        expect(f"dim e_s Y e_t <= 1 p={p}", max(mult.values()) <= 1)
    for p, q in ((2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2)):
        b = b32 if (p, q) == (3, 2) else b52 if (p, q) == (5, 2) else build_mu(p, q, conv=conv)
        record[f"dim mu p={p} q={q}"] = b.dim
        expect(f"idempotents p={p} q={q}", sorted(b.idempotents) == b.vertices)
    for p, q in ((3, 1), (5, 1), (2, 1), (2, 2), (3, 2)):
        small = build_mu(p, q, conv=conv)
        big = b32 if (p, q + 1) == (3, 2) else b52 if (p, q + 1) == (5, 2) else build_mu(p, q + 1, conv=conv)
        image = [embed(m) for m in small.basis]
        expect(f"embedding injective into p={p} q={q + 1}", len(set(image)) == len(image) and all(m in big for m in image))
        mult_ok = True
        for x in small.basis:
            for y in small.basis:
                if x.right != y.left:
                    continue
                s1, z1 = small.multiply(x, y)
                s2, z2 = big.multiply(embed(x), embed(y))
                if s1 != s2 or (s1 and embed(z1) != z2):
                    mult_ok = False
        expect(f"embedding multiplicative p={p} q={q}", mult_ok)
        corner = Counter({((1,) + u, (1,) + v, j, k): n for (u, v, j, k), n in _cartan_counter(small).items()})
        full = _cartan_counter(big)
        sub = Counter({key: n for key, n in full.items() if key[0][0] == 1 and key[1][0] == 1})
        expect(f"corner Cartan p={p} q={q}", corner == sub)
    detail = f"{len(record)} checks" if not bad else f"failing: {bad[:4]}"
    return CriterionResult(5, not bad, detail, record)


@_timed
def criterion_6(results: dict[int, CriterionResult] | None = None) -> CriterionResult:
    """Rerun the linear-algebra criteria over GF(p) and compare records with the rational run.

    Criteria 1 and 5 count monomials and multiply signs in Z, so their records
    are field independent; they are compared against themselves for completeness.
    """
    results = results or {}
    pairs = []
    for n, fn in ((2, criterion_2), (3, criterion_3), (4, criterion_4)):
        rat = results.get(n) or fn(rational)
        pri = fn(prime)
        pairs.append((n, rat, pri))
    bad = []
    record = {}
    for n, rat, pri in pairs:
        for key in sorted(set(rat.record) | set(pri.record)):
            same = rat.record.get(key) == pri.record.get(key)
            record[f"criterion {n} {key}"] = same
            if not same:
                bad.append(f"criterion {n} {key}: rational {rat.record.get(key)}, prime {pri.record.get(key)}")
    detail = f"{len(record)} records agree over Q and GF(p)" if not bad else f"{len(bad)} disagreements: {bad[:3]}"
    return CriterionResult(6, not bad, detail, record)


def run_all(seed: int = 0, field_mode: str = "both") -> list[CriterionResult]:
    """Run criteria 1 to 6.  ``field_mode`` picks the field of criteria 2 to 4;
    with "both" criterion 6 compares the two runs."""
    fld = prime if field_mode == "prime" else rational
    out = {1: criterion_1(), 2: criterion_2(fld), 3: criterion_3(fld), 4: criterion_4(fld), 5: criterion_5(seed)}
    if field_mode == "both":
        out[6] = criterion_6(out)
    return [out[n] for n in sorted(out)]
