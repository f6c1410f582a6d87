"""Self-checks behind ``polyspecies verify``.

Each check returns a :class:`CheckResult`; a failure carries enough detail
(first differing rows, counterexample sizes) to reproduce it by hand.  The
golden-table checks compare against :mod:`polyspecies.tables`; everything else
is internal consistency or brute force.
"""
from __future__ import annotations

import random
import time
from collections.abc import Iterator
from dataclasses import dataclass

from gmpy2 import mpq

from . import cis, oracle, ptrees, specdsl, succulents
from .cis import CycleIndexSeries
from .gamma2 import S2Series, g_exp_compose, quotient_s2
from .tables import POLYGONAL_2TREES, SUCCULENTS, CountsTable


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def __str__(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return f"{verdict}  {self.name}  ({self.seconds:.1f}s)  {self.detail}".rstrip()


def _timed(name, fn) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail = fn()
    return CheckResult(name, ok, detail, time.perf_counter() - t0)


def table_diff(got: CountsTable, want: CountsTable, lo: int, hi: int) -> dict:
    """``{"labeled": [...], "unlabeled": [...]}`` rows ``n`` in ``lo..hi`` that differ."""
    out = {"labeled": [], "unlabeled": []}
    for n in range(lo, hi + 1):
        for col, i in (("labeled", 0), ("unlabeled", 1)):
            if got[n][i] != want[n][i]:
                out[col].append((n, got[n][i], want[n][i]))
    return out


def _describe(diff: dict) -> str:
    parts = []
    for col, rows in diff.items():
        if rows:
            n, got, want = rows[0]
            parts.append(f"{col}: {len(rows)} row(s) differ from n={n} (computed {got}, table {want})")
    return "; ".join(parts) or "all rows equal"


# ---------------------------------------------------------------------------
# golden tables
# ---------------------------------------------------------------------------

def check_table1(max_n: int = 26) -> CheckResult:
    def run():
        got = ptrees.polygonal_counts(max_n)
        diff = table_diff(got, POLYGONAL_2TREES, 3, max_n)
        return not (diff["labeled"] or diff["unlabeled"]), _describe(diff)
    return _timed(f"polygonal 2-trees vs reference table, 3 <= n <= {max_n}", run)


def check_table2(max_n: int = 19) -> CheckResult:
    def run():
        got = succulents.succulent_counts(max_n)
        diff = table_diff(got, SUCCULENTS, 0, max_n)
        return not (diff["labeled"] or diff["unlabeled"]), _describe(diff)
    return _timed(f"succulents vs reference table, 0 <= n <= {max_n}", run)


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

def check_oracle(poly_n: int = 8, kgonal_n: int = 8, succ_n: int = 7) -> CheckResult:
    def run():
        bad = []
        jobs = [("polygonal", None, poly_n, 3, ptrees.polygonal_counts(poly_n))]
        jobs += [("kgonal", k, kgonal_n, 3, ptrees.kgonal_counts(k, kgonal_n)) for k in (3, 4, 5)]
        jobs.append(("succulent", None, succ_n, 1, succulents.succulent_counts(succ_n)))
        for family, k, top, lo, table in jobs:
            rows = oracle.oracle_counts(family, top, k)
            for n in range(lo, top + 1):
                if tuple(rows[n]) != tuple(table[n]):
                    bad.append(f"{family}{'' if k is None else k} n={n}: oracle {rows[n]} series {table[n]}")
        return not bad, "; ".join(bad) or (f"polygonal n<={poly_n}, k-gonal k=3,4,5 n<={kgonal_n}, "
                                           f"succulents n<={succ_n} agree")
    return _timed("brute-force oracle equals series pipelines", run)


def check_s2_builtins(max_n: int = 10) -> CheckResult:
    def run():
        bad = [str(r) for kind in ("L", "C") for n in range(1, max_n + 1)
               if not (r := oracle.verify_s2_builtin(kind, n)).ok]
        return not bad, "; ".join(bad) or f"L_n and C_n, both parts, n <= {max_n}"
    return _timed("order-reversal built-ins equal fixed-point counts", run)


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

def random_series(rng: random.Random, truncation: int, valuation: int = 0,
                  density: float = 0.5, max_num: int = 3) -> CycleIndexSeries:
    """A random series with small rational coefficients; every layer from ``valuation`` on is nonzero."""
    layers = [{} for _ in range(truncation + 1)]
    for n in range(valuation, truncation + 1):
        parts = list(cis.partitions(n))
        for lam in parts:
            if rng.random() < density:
                c = mpq(rng.randint(-max_num, max_num), rng.randint(1, 3))
                if c:
                    layers[n][cis.parts_monomial(lam)] = c
        if not layers[n]:
            layers[n][cis.parts_monomial(rng.choice(parts))] = mpq(rng.randint(1, max_num), rng.randint(1, 3))
    return CycleIndexSeries(layers, truncation)


def check_plethysm_laws(cases: int = 100, max_truncation: int = 8, seed: int = 0) -> CheckResult:
    def run():
        rng = random.Random(seed)
        for i in range(cases):
            t = rng.randint(1, max_truncation)
            f = random_series(rng, t)
            g = random_series(rng, t, valuation=1, density=0.4)
            h = random_series(rng, t, valuation=1, density=0.4)
            if cis.plethysm(cis.plethysm(f, g), h) != cis.plethysm(f, cis.plethysm(g, h)):
                return False, f"associativity fails for case {i} (seed {seed}, truncation {t})"
            if cis.exp_compose(g) != cis.plethysm(cis.builtin("E", truncation=t), g):
                return False, f"exp/plethysm disagree for case {i} (seed {seed}, truncation {t})"
        return True, f"{cases} random cases, truncation <= {max_truncation}"
    return _timed("plethysm associativity and exp = E(.)", run)


def _solver_outputs(N: int) -> Iterator[tuple[str, CycleIndexSeries]]:
    poly = ptrees.solve(N)
    yield "polygonal", poly.a_unoriented
    yield "polygonal (oriented, e part)", poly.a_oriented.part_e
    for k in (3, 4, 5):
        yield f"{k}-gonal", ptrees.solve(N, k).a_unoriented
    succ = succulents.solve(N)
    yield "pointed succulents", succ.s_pointed
    yield "succulents", succ.s


def check_integrality(N: int = 30) -> CheckResult:
    def run():
        names = []
        for name, series in _solver_outputs(N):
            lab, unl = cis.labeled_counts(series), cis.unlabeled_counts(series)  # raise on failure
            if min(lab) < 0 or min(unl) < 0:
                return False, f"{name}: negative count"
            names.append(name)
        return True, f"{', '.join(names)} through N={N}"
    return _timed("all extracted counts are nonnegative integers", run)


def check_orientation_law(N: int = 26) -> CheckResult:
    def run():
        for k in (None, 3, 4, 5):
            sol = ptrees.solve(N, k)
            oriented = cis.labeled_counts(sol.a_oriented.part_e)
            tau = cis.labeled_counts(sol.a_oriented.part_tau, allow_negative=True)
            plain = cis.labeled_counts(sol.a_unoriented)
            for n in range(3, N + 1):
                if oriented[n] != 2 * plain[n] or tau[n] != 0:
                    return False, f"{ptrees.family_name(k)} n={n}: oriented {oriented[n]}, unoriented {plain[n]}"
        return True, f"oriented = 2 x unoriented (labeled) for 3 <= n <= {N}, all families"
    return _timed("two coherent orientations per labeled 2-tree", run)


def check_pointing(N: int = 19) -> CheckResult:
    def run():
        sol = succulents.solve(N)
        pointed, plain = cis.labeled_counts(sol.s_pointed), cis.labeled_counts(sol.s)
        bad = [n for n in range(N + 1) if pointed[n] != n * plain[n]]
        return not bad, f"first failure n={bad[0]}" if bad else f"n <= {N}"
    return _timed("pointed succulents: labeled[n] = n x unpointed labeled[n]", run)


def check_fixed_point(N: int = 20) -> CheckResult:
    def run():
        for k in (None, 3, 4):
            a = ptrees.solve_estar(N, k)
            again = g_exp_compose(ptrees.sheet_sum(a, k))
            if again != a:
                return False, f"re-substitution changes a_estar ({ptrees.family_name(k)})"
        return True, f"E(sheets(a_estar)) = a_estar through N={N}"
    return _timed("rooted fixed point is stable under re-substitution", run)


# ---------------------------------------------------------------------------
# DSL
# ---------------------------------------------------------------------------

def _as_plain(v) -> CycleIndexSeries:
    return quotient_s2(v) if isinstance(v, S2Series) else v


def check_dsl(N: int = 15) -> CheckResult:
    def run():
        bad = []
        poly = ptrees.solve(N)
        got = specdsl.solve_system(specdsl.load_system("polygonal"), N)
        if _as_plain(got["Ap"]) != poly.a_unoriented:
            bad.append("polygonal")
        kgonal = specdsl.load_system("kgonal")
        for k in (3, 4, 5):
            got = specdsl.solve_system(kgonal, N, params={"k": k})
            if _as_plain(got["Ak"]) != ptrees.solve(N, k).a_unoriented:
                bad.append(f"{k}-gonal")
        succ = succulents.solve(N)
        got = specdsl.solve_system(specdsl.load_system("succulents"), N)
        if _as_plain(got["Spt"]) != succ.s_pointed or _as_plain(got["S"]) != succ.s:
            bad.append("succulents")
        return not bad, ("mismatch: " + ", ".join(bad)) if bad else f"all shipped systems, layerwise through N={N}"
    return _timed("shipped species files equal the built-in pipelines", run)


def run_all(quick: bool = False) -> Iterator[CheckResult]:
    """Run every check in order; ``quick`` shrinks the ranges to finish in seconds."""
    if quick:
        yield check_table1(14)
        yield check_table2(12)
        yield check_oracle(6, 6, 6)
        yield check_s2_builtins(6)
        yield check_plethysm_laws(cases=30, max_truncation=6)
        yield check_integrality(14)
        yield check_orientation_law(14)
        yield check_pointing(12)
        yield check_fixed_point(12)
        yield check_dsl(10)
        return
    yield check_table1()
    yield check_table2()
    yield check_oracle()
    yield check_s2_builtins()
    yield check_plethysm_laws()
    yield check_integrality()
    yield check_orientation_law()
    yield check_pointing()
    yield check_fixed_point()
    yield check_dsl()
