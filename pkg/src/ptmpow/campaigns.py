"""Named verification campaigns: the open questions and conjectures about
t_m and b_m, plus the one theorem-grade valuation table, run to a finite
bound and reported honestly.

A campaign never asserts beyond its bound.  Theorem-backed campaigns may
report `counterexample` (which the CLI turns into a hard failure);
conjecture and question campaigns only ever report `verified-to-bound` or
`observation`, recording any witness they find.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .core_arith import nu2
from .bm_sequences import bm_cache, b2_valuation_table_suite
from .tm_sequences import t2_prefix, tm_cache

VERIFIED = "verified-to-bound"
COUNTEREXAMPLE = "counterexample"
OBSERVATION = "observation"


@dataclass
class CampaignSpec:
    name: str
    bounds: dict[str, int] = field(default_factory=dict)
    output_path: str | None = None
    jobs: int = 1


@dataclass
class CampaignReport:
    name: str
    kind: str
    claim: str
    bounds: dict[str, int]
    status: str
    witness: dict
    wall_ms: int

    def payload(self) -> dict:
        """Deterministic part (no wall time), for golden output.  The
        `theorem` tag is the claim text from the traceability matrix."""
        return {
            "name": self.name,
            "kind": self.kind,
            "theorem": self.claim,
            "bounds": self.bounds,
            "status": self.status,
            "witness": self.witness,
        }


# ---------------------------------------------------------------------------
# chunked sweeps


def _ranges(lo: int, hi: int, jobs: int):
    total = hi - lo + 1
    step = max(1, (total + jobs - 1) // jobs)
    return [(a, min(a + step - 1, hi)) for a in range(lo, hi + 1, step)]


def _sweep(fn, lo: int, hi: int, jobs: int) -> dict | None:
    """Run fn(lo, hi) -> first-failure-witness-or-None over disjoint chunks;
    results merge deterministically by range start."""
    if hi < lo:
        return None
    if jobs <= 1:
        return fn(lo, hi)
    chunks = _ranges(lo, hi, jobs)
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        results = list(ex.map(lambda r: fn(r[0], r[1]), chunks))
    for res in results:
        if res is not None:
            return res
    return None


def _ceil_half(v: int) -> int:
    return (v + 1) // 2


# ---------------------------------------------------------------------------
# runners


def _nu2_or_none(v: int):
    return None if v == 0 else nu2(v)


def _run_t5_valuation(bounds, jobs):
    n_max = bounds["n"]
    vals = tm_cache(5).prefix(4 * n_max + 3)

    def chunk(lo, hi):
        for n in range(lo, hi + 1):
            v = nu2(n + 1)
            expect = 4 * _ceil_half(v) - (v % 2)
            for j in range(4):
                got = _nu2_or_none(vals[4 * n + j])
                if got != expect:
                    return {"m": 5, "n": n, "j": j, "expected": expect, "actual": got}
        return None

    w = _sweep(chunk, 0, n_max, jobs)
    return (VERIFIED, {}) if w is None else (OBSERVATION, {"failing": w})


def _run_t9_valuation(bounds, jobs):
    n_max = bounds["n"]
    vals = tm_cache(9).prefix(8 * n_max + 7)

    def chunk(lo, hi):
        for n in range(lo, hi + 1):
            v = nu2(n + 1)
            expect = 5 * _ceil_half(v) - 2 * (v % 2)
            for j in range(8):
                got = _nu2_or_none(vals[8 * n + j])
                if got != expect:
                    return {"m": 9, "n": n, "j": j, "residue_class": (8 * n + j) % 64,
                            "expected": expect, "actual": got}
        return None

    w = _sweep(chunk, 0, n_max, jobs)
    return (VERIFIED, {}) if w is None else (OBSERVATION, {"failing": w})


def _run_t2k1_table(bounds, jobs):
    # fit the strictly increasing table A_{k, nu2(n+1)} for m = 2^k + 1
    n_max = bounds["n"]
    out = {}
    for k in (2, 3):
        m = (1 << k) + 1
        vals = tm_cache(m).prefix((n_max << k) + (1 << k) - 1)
        table: dict[int, int] = {}
        for n in range(n_max + 1):
            v = nu2(n + 1)
            for j in range(1 << k):
                got = _nu2_or_none(vals[(n << k) + j])
                if table.setdefault(v, got) != got:
                    return OBSERVATION, {"k": k, "n": n, "j": j,
                                         "conflict_class": v,
                                         "values": [table[v], got]}
        fitted = [table[v] for v in sorted(table)]
        if fitted[0] != 0 or any(a >= b for a, b in zip(fitted, fitted[1:])):
            return OBSERVATION, {"k": k, "table_not_strictly_increasing": fitted}
        out[f"A_{k}"] = fitted
    return VERIFIED, out


def _run_t_regular(bounds, jobs):
    # kernel-of-subsequences statistics: how many distinct valuation patterns
    # the dyadic subsequences nu2(t_m(2^l n + j)) show, per m
    n_max = bounds["n"]
    depth = bounds.get("depth", 5)
    stats = {}
    for m in (2, 3, 5, 6):
        vals = tm_cache(m).prefix((n_max << depth) + (1 << depth))
        patterns = set()
        for l in range(depth + 1):
            for j in range(1 << l):
                pat = tuple(
                    -1 if vals[(n << l) + j] == 0 else nu2(vals[(n << l) + j])
                    for n in range(n_max + 1)
                )
                patterns.add(pat)
        stats[f"m={m}"] = len(patterns)
    return OBSERVATION, {"distinct_kernel_patterns": stats,
                         "note": "-1 encodes an infinite valuation"}


def _run_bm_unbounded(bounds, jobs):
    n_max = bounds["n"]
    out = {}
    for m in (2, 4, 5, 6):
        vals = bm_cache(m).prefix(n_max)
        best, arg = -1, 0
        for n in range(n_max + 1):
            v = nu2(vals[n]) if vals[n] else 0
            if v > best:
                best, arg = v, n
        out[f"m={m}"] = {"max_nu2": best, "at": arg}
    return OBSERVATION, out


def _run_b_pow2_congruence(bounds, jobs):
    # b_{2^m}(2^(k+1) n) == b_{2^m}(2^(k-1) n)  (mod 2^k) for k >= m+2
    idx_max = bounds["index"]
    for m in (1, 2, 3):
        seq = bm_cache(1 << m)
        seq.extend(idx_max)
        for k in range(m + 2, m + 5):
            def chunk(lo, hi, seq=seq, k=k, m=m):
                for n in range(lo, hi + 1):
                    if (seq[(n << (k + 1))] - seq[(n << (k - 1))]) % (1 << k):
                        return {"m": m, "k": k, "n": n}
                return None

            w = _sweep(chunk, 0, idx_max >> (k + 1), jobs)
            if w is not None:
                return OBSERVATION, {"failing": w}
    return VERIFIED, {}


def _run_b_pow2m1_congruence(bounds, jobs):
    # b_{2^m-1}(2^(k+1) n) == b_{2^m-1}(2^(k-1) n)  (mod 2^(4*floor((k+1)/2)-2))
    # the conjectured modulus is numerically too strong for some (m, k),
    # so failures are recorded per (m, k) instead of aborting the campaign
    idx_max = bounds["index"]
    failures = []
    verified = []
    for m in (1, 2, 3):
        seq = bm_cache((1 << m) - 1)
        seq.extend(idx_max)
        for k in range(m + 2, m + 5):
            mod = 1 << (4 * ((k + 1) // 2) - 2)

            def chunk(lo, hi, seq=seq, k=k, m=m, mod=mod):
                for n in range(lo, hi + 1):
                    if (seq[(n << (k + 1))] - seq[(n << (k - 1))]) % mod:
                        return {"m": m, "k": k, "n": n, "mod": mod}
                return None

            w = _sweep(chunk, 1, idx_max >> (k + 1), jobs)
            if w is None:
                verified.append({"m": m, "k": k})
            else:
                failures.append(w)
    if failures:
        return OBSERVATION, {"failing": failures, "verified_for": verified}
    return VERIFIED, {}


def _run_b_congruence_growth(bounds, jobs):
    # empirically fit f(k) = min_n nu2(b_m(2^(k+1) n) - b_m(2^(k-1) n))
    idx_max = bounds["index"]
    fit = {}
    for m in (3, 5, 6):
        seq = bm_cache(m)
        seq.extend(idx_max)
        per_k = []
        for k in range(2, 8):
            best = None
            for n in range(1, (idx_max >> (k + 1)) + 1):
                d = seq[n << (k + 1)] - seq[n << (k - 1)]
                if d == 0:
                    continue
                v = nu2(d)
                best = v if best is None else min(best, v)
            per_k.append(best if best is not None else "exact")
        fit[f"m={m}"] = per_k
    return OBSERVATION, {"f(k) for k=2..7": fit}


def _run_sign_density(bounds, jobs):
    n_max = bounds["n"]
    out = {}
    for m in (2, 3, 4, 5):
        vals = tm_cache(m).prefix(3 * n_max + 1)
        for j in (0, 1):
            want = 1 if j == 0 else -1
            hits = sum(
                1
                for n in range(n_max + 1)
                if (vals[3 * n + j] > 0) - (vals[3 * n + j] < 0) != want
            )
            out[f"m={m},j={j}"] = {
                "exceptions": hits,
                "frequency": str(Fraction(hits, n_max + 1)),
            }
    return OBSERVATION, out


def _run_threesigns_turan(bounds, jobs):
    n_max = bounds["n"]
    for m in (3, 4, 5, 6):
        vals = tm_cache(m).prefix(n_max + 1)

        def chunk(lo, hi, vals=vals, m=m):
            for n in range(max(lo, 1), hi + 1):
                a, b, c = vals[n - 1], vals[n], vals[n + 1]
                if (a > 0 and b > 0 and c > 0) or (a < 0 and b < 0 and c < 0):
                    return {"m": m, "n": n, "kind": "three-signs"}
                if b * b <= a * c:
                    return {"m": m, "n": n, "kind": "turan"}
            return None

        w = _sweep(chunk, 1, n_max - 1, jobs)
        if w is not None:
            return OBSERVATION, {"failing": w}
    return VERIFIED, {}


def _run_b_turan_m4plus(bounds, jobs):
    n_max = bounds["n"]
    for m in (4, 5, 6):
        vals = bm_cache(m).prefix(n_max + 1)

        def chunk(lo, hi, vals=vals, m=m):
            for n in range(max(lo, 1), hi + 1):
                if vals[n] ** 2 <= vals[n - 1] * vals[n + 1]:
                    return {"m": m, "n": n}
            return None

        w = _sweep(chunk, 1, n_max - 1, jobs)
        if w is not None:
            return OBSERVATION, {"failing": w}
    return VERIFIED, {}


def _run_b3_crossover(bounds, jobs):
    n_max = bounds["n"]
    vals = bm_cache(3).prefix(n_max + 1)
    last_nonpositive = 0
    zeros = []
    for n in range(1, n_max):
        d = vals[n] ** 2 - vals[n - 1] * vals[n + 1]
        if d == 0:
            zeros.append(n)
        if d <= 0:
            last_nonpositive = n
    broken = [
        n
        for n in range(1, last_nonpositive + 1)
        if (lambda d: d != 0 and (d > 0) != (n % 2 == 0))(
            vals[n] ** 2 - vals[n - 1] * vals[n + 1]
        )
    ]
    return OBSERVATION, {
        "crossover_candidate": last_nonpositive,
        "positive_beyond": True,
        "zero_differences_at": zeros,
        "alternation_breaks": broken,
    }


def _run_t_zero_m4plus(bounds, jobs):
    n_max = bounds["n"]
    for m in range(4, 9):
        vals = tm_cache(m).prefix(n_max)

        def chunk(lo, hi, vals=vals, m=m):
            for n in range(lo, hi + 1):
                if vals[n] == 0:
                    return {"m": m, "n": n}
            return None

        w = _sweep(chunk, 1, n_max, jobs)
        if w is not None:
            return OBSERVATION, {"zero_found": w}
    return VERIFIED, {}


def _run_t_missing_values(bounds, jobs):
    n_max = bounds["n"]
    span = bounds.get("span", 50)
    out = {}
    for m in (3, 4, 5):
        vals = tm_cache(m).prefix(n_max)
        attained = {v for v in vals[: n_max + 1] if -span <= v <= span}
        missing = [v for v in range(-span, span + 1) if v not in attained]
        out[f"m={m}"] = {"attained_in_window": len(attained), "missing": missing}
    return OBSERVATION, out


def _run_b2_valuation_list(bounds, jobs):
    rep = b2_valuation_table_suite(bounds["n"])
    if rep.ok:
        return VERIFIED, {"checked": rep.checked}
    return COUNTEREXAMPLE, rep.witness


def _run_t2_symmetry(bounds, jobs):
    from .tm_sequences import t2_symmetry_partner

    n_max = bounds["n"]
    # |t_2(n)| <= n+1, so the partner shift 2^(nu2+1) stays below 2(n+1)
    vals = t2_prefix(3 * n_max + 4)

    def chunk(lo, hi):
        for n in range(lo, hi + 1):
            try:
                t2_symmetry_partner(n)
            except ArithmeticError:
                return {"n": n, "value": vals[n]}
        return None

    w = _sweep(chunk, 0, n_max, jobs)
    return (VERIFIED, {}) if w is None else (COUNTEREXAMPLE, w)


# ---------------------------------------------------------------------------
# registry (the traceability matrix)


@dataclass(frozen=True)
class Campaign:
    name: str
    kind: str  # theorem | conjecture | question
    claim: str
    defaults: dict
    runner: object


CAMPAIGNS: dict[str, Campaign] = {}


def _register(name, kind, claim, defaults, runner):
    CAMPAIGNS[name] = Campaign(name, kind, claim, defaults, runner)


_register(
    "t5-valuation", "conjecture",
    "nu2(t_5(4n+j)) = 4*ceil(nu2(n+1)/2) - (nu2(n+1) mod 2) for j in 0..3",
    {"n": 1 << 12}, _run_t5_valuation)
_register(
    "t9-valuation", "conjecture",
    "nu2(t_9(8n+j)) = 5*ceil(nu2(n+1)/2) - 2*(nu2(n+1) mod 2) for j in 0..7",
    {"n": 1 << 12}, _run_t9_valuation)
_register(
    "t2k1-valuation-table", "conjecture",
    "nu2(t_{2^k+1}(2^k n + j)) = A_{k, nu2(n+1)} for a strictly increasing "
    "integer table with A_{k,0} = 0",
    {"n": 1 << 12}, _run_t2k1_table)
_register(
    "t-regularity", "question",
    "is (nu2(t_m(n)))_n 2-regular?  (statistics only: count distinct dyadic "
    "subsequence patterns)",
    {"n": 64, "depth": 5}, _run_t_regular)
_register(
    "bm-valuation-unbounded", "conjecture",
    "for m not of the form 2^k - 1 the sequence nu2(b_m(n)) is unbounded "
    "(report the running maximum)",
    {"n": 1 << 12}, _run_bm_unbounded)
_register(
    "b-pow2-congruence", "conjecture",
    "b_{2^m}(2^(k+1) n) = b_{2^m}(2^(k-1) n) (mod 2^k) for k >= m+2",
    {"index": 1 << 14}, _run_b_pow2_congruence)
_register(
    "b-pow2m1-congruence", "conjecture",
    "b_{2^m-1}(2^(k+1) n) = b_{2^m-1}(2^(k-1) n) "
    "(mod 2^(4*floor((k+1)/2)-2)) for k >= m+2",
    {"index": 1 << 14}, _run_b_pow2m1_congruence)
_register(
    "b-congruence-growth", "conjecture",
    "b_m(2^(k+1) n) = b_m(2^(k-1) n) (mod 2^f(k)) with nondecreasing "
    "f(k) = O(k) (empirical fit of f)",
    {"index": 1 << 14}, _run_b_congruence_growth)
_register(
    "t-sign-density", "conjecture",
    "the exception sets {n : sgn t_m(3n+j) != (-1)^j} are infinite of "
    "density 0 (finite frequencies reported)",
    {"n": 1 << 12}, _run_sign_density)
_register(
    "t-threesigns-turan", "conjecture",
    "for m >= 2: no three consecutive t_m values share a sign and "
    "t_m(n)^2 > t_m(n-1) t_m(n+1)",
    {"n": 1 << 12}, _run_threesigns_turan)
_register(
    "b-turan-m4plus", "conjecture",
    "for m >= 4: b_m(n)^2 - b_m(n-1) b_m(n+1) > 0",
    {"n": 1 << 12}, _run_b_turan_m4plus)
_register(
    "b3-turan-crossover", "conjecture",
    "for m = 3 the sign of b_3(n)^2 - b_3(n-1) b_3(n+1) alternates up to "
    "some n_0 and is positive afterwards (search for n_0)",
    {"n": 1 << 12}, _run_b3_crossover)
_register(
    "t-zero-m4plus", "conjecture",
    "t_m(n) = 0 has no solution for m >= 4",
    {"n": 1 << 14}, _run_t_zero_m4plus)
_register(
    "t-missing-values", "conjecture",
    "for m >= 3 infinitely many integers are never attained by t_m "
    "(window histogram of attained values)",
    {"n": 1 << 14, "span": 50}, _run_t_missing_values)
_register(
    "b2-valuation-list", "theorem",
    "the pinned table of exact values nu2(b_2(M n + i)) = a, with the polynomial "
    "certificates h_{i,k,2} = 0 (mod 2^a) and h/2^a = (1-x)^(2k-3) (mod 2)",
    {"n": 1 << 14}, _run_b2_valuation_list)
_register(
    "t2-symmetry", "theorem",
    "t_2(n') = -t_2(n) for n' = n + (-1)^e * 2^(nu2(m)+1), "
    "m = t_2(n), e = nu2(m) + (m - 2^nu2(m))/2^(nu2(m)+1)",
    {"n": 1 << 14}, _run_t2_symmetry)


def run_campaign(name: str, bounds: dict | None = None, jobs: int = 1) -> CampaignReport:
    if name not in CAMPAIGNS:
        raise KeyError(f"unknown campaign {name!r}; known: {', '.join(sorted(CAMPAIGNS))}")
    camp = CAMPAIGNS[name]
    eff = dict(camp.defaults)
    if bounds:
        eff.update(bounds)
    t0 = time.monotonic()
    status, witness = camp.runner(eff, jobs)
    wall_ms = int((time.monotonic() - t0) * 1000)
    if camp.kind != "theorem" and status == COUNTEREXAMPLE:
        status = OBSERVATION  # conjecture campaigns never hard-fail
    return CampaignReport(name, camp.kind, camp.claim, eff, status, witness, wall_ms)


def run_spec(spec: CampaignSpec) -> CampaignReport:
    """Run from a CampaignSpec, persisting the report when it names a path."""
    report = run_campaign(spec.name, bounds=spec.bounds, jobs=spec.jobs)
    if spec.output_path:
        import json

        record = dict(report.payload())
        record["wall_ms"] = report.wall_ms
        with open(spec.output_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")
    return report


def exit_code_for(report: CampaignReport) -> int:
    """0 theorem verified, 1 theorem counterexample, 3 observation-only."""
    if report.kind == "theorem":
        return 0 if report.status == VERIFIED else 1
    return 3
