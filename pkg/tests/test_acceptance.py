"""Acceptance gate: ten end-to-end checks with pinned tolerances and budgets.

Each test prints one terminal pass/fail line (straight to the real stdout so
it survives capture).  Symbolic checks demand exact equality; numeric route
comparisons are pinned at 1e-10 relative; positivity searches run the full
64 x 200 budget at tol 1e-9.
"""

import itertools
import json
import time
from contextlib import contextmanager
from dataclasses import replace

import numpy as np
import pytest

from chernweil.batch import RunConfig, verify_c2, verify_inequalities, \
    verify_main_theorem
from chernweil.curvature import (SearchBudget, chern_form, chern_form_oracle,
                                 from_coefficients, segre_form,
                                 total_chern_forms, validate)
from chernweil.exterior import ExteriorForm, decomposable, ipow, multi_indices, \
    wedge
from chernweil.polynomial import SymPoly
from chernweil.positivity import (Status, check_hermitian_positive,
                                  check_positive, check_strongly_positive)
from chernweil.schur import (FlagType, complete_flag_oracle, dp_pushforward,
                             enumerate_partitions, expand_in_roots,
                             gschur_in_segre, jacobi_trudi_check,
                             segre_to_chern)

EQ_TOL = 1e-10
SEARCH = SearchBudget(random_starts=64, local_iters=200, tol=1e-9)


@pytest.fixture
def criterion(capfd):
    # capture must be suspended for the line to reach the terminal
    def _note(line):
        with capfd.disabled():
            print(line, flush=True)

    @contextmanager
    def _criterion(num, label):
        try:
            yield
        except BaseException:
            _note(f"criterion {num:2d}: FAIL - {label}")
            raise
        _note(f"criterion {num:2d}: PASS - {label}")

    return _criterion


def monomials(nvars, degree):
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in monomials(nvars - 1, degree - first):
            yield (first,) + rest


def hermitian_tensor(n, r, rng):
    g = rng.normal(size=(r, r, n, n)) + 1j * rng.normal(size=(r, r, n, n))
    return (g + np.conj(np.transpose(g, (1, 0, 3, 2)))) / 2


def rel_gap(a, b):
    return (a - b).max_abs() / max(1.0, a.max_abs(), b.max_abs())


def test_criterion_01_symbolic_oracle_equivalence(criterion):
    with criterion(1, "push-forward rule matches the divided-difference "
                      "oracle on every monomial, ranks 2..4, excess <= 3"):
        start = time.perf_counter()
        count = 0
        for r in (2, 3, 4):
            flag = FlagType.complete(r)
            d = flag.relative_dimension
            for k in range(4):
                for lam in monomials(r, d + k):
                    p = SymPoly.monomial(lam)
                    left = expand_in_roots(dp_pushforward(p, flag), r, "s")
                    assert left == complete_flag_oracle(p, r), lam
                    count += 1
        elapsed = time.perf_counter() - start
        assert count > 0
        assert elapsed < 60.0, f"{elapsed:.1f} s"


def test_criterion_02_proof_identity_replay(criterion):
    with criterion(2, "headline push-forward identities replay exactly"):
        f3 = FlagType.complete(3)
        got3 = dp_pushforward(SymPoly.monomial((4, 2, 0)), f3)
        assert got3 == gschur_in_segre((-2, 1, 4))
        c1, c2, c3 = (SymPoly.variable(i, 3) for i in range(3))
        assert segre_to_chern(got3, 3) == c1 * c2 - c3

        f2 = FlagType.complete(2)
        got2 = dp_pushforward(SymPoly.monomial((4, 2)), f2)
        assert got2 == gschur_in_segre((1, 4))
        d1, d2 = (SymPoly.variable(i, 2) for i in range(2))
        assert segre_to_chern(got2, 2) == d1 * d2 * d2


def test_criterion_03_jacobi_trudi_sweep(criterion):
    with criterion(3, "Jacobi-Trudi duality for every partition, "
                      "weight <= 6, rank <= 4"):
        start = time.perf_counter()
        for k in range(1, 7):
            for r in range(1, 5):
                for sigma in enumerate_partitions(k, r):
                    assert jacobi_trudi_check(sigma, r), (sigma, r)
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"{elapsed:.1f} s"


def test_criterion_04_main_theorem_battery(criterion):
    with criterion(4, "1000 semipositive rank-3 samples, S_(2,1,0) never "
                      "refuted at tol 1e-9, budget 64x200"):
        start = time.perf_counter()
        total = 0
        for n, samples in ((3, 334), (4, 333), (5, 333)):
            cfg = RunConfig("verify-main", n=n, r=3, samples=samples,
                            seed=20240800 + n, starts=64, iters=200, tol=1e-9)
            report = verify_main_theorem(cfg)
            agg = report["aggregate"]
            assert agg["refuted"] == 0, (n, agg["refuted_indices"])
            assert agg["ok"] and agg["routes_agree"]
            total += agg["samples"]
        assert total == 1000
        elapsed = time.perf_counter() - start
        assert elapsed < 600.0, f"{elapsed:.1f} s"


def test_criterion_05_c2_battery(criterion):
    with criterion(5, "c_2 battery, 200 samples per (r,n) in {2..5}^2, "
                      "minor identity <= 1e-10 relative"):
        for r in (2, 3, 4, 5):
            for n in (2, 3, 4, 5):
                cfg = RunConfig("verify-c2", n=n, r=r, samples=200,
                                seed=100 * r + n, starts=64, iters=200,
                                tol=1e-9, equality_tol=EQ_TOL)
                agg = verify_c2(cfg)["aggregate"]
                assert agg["refuted"] == 0, (r, n, agg["refuted_indices"])
                assert agg["max_minor_identity_gap"] <= EQ_TOL, (r, n)
                assert agg["ok"], (r, n)


def test_criterion_06_inequality_chain(criterion):
    with criterion(6, "500 rank-3 samples, c1^3 - c1c2 and c1c2 - c3 never "
                      "refuted"):
        cfg = RunConfig("verify-ineq", n=3, r=3, samples=500, seed=77,
                        starts=64, iters=200, tol=1e-9)
        report = verify_inequalities(cfg)
        agg = report["aggregate"]
        assert agg["refuted"] == 0, agg["refuted_indices"]
        assert agg["ok"] and agg["s2_factor_ok"]


def test_criterion_07_chern_route_equivalence(criterion):
    with criterion(7, "chern_form vs compound-trace oracle <= 1e-10 on 100 "
                      "samples per (r <= 4, n <= 5), Chern-Segre inversion "
                      "<= 1e-10"):
        rng = np.random.default_rng(20240807)
        for r in (1, 2, 3, 4):
            for n in (1, 2, 3, 4, 5):
                for _ in range(100):
                    point = from_coefficients(hermitian_tensor(n, r, rng))
                    assert validate(point) == []
                    chern = total_chern_forms(point)
                    for k in range(min(n, r) + 1):
                        gap = rel_gap(chern[k], chern_form_oracle(point, k))
                        assert gap <= EQ_TOL, (r, n, k)
                    segre = [segre_form(point, k, chern) for k in range(n + 1)]
                    for k in range(1, n + 1):
                        acc = segre[k]
                        for j in range(1, min(k, r) + 1):
                            acc = acc + wedge(chern[j], segre[k - j])
                        scale = max(1.0, segre[k].max_abs())
                        assert acc.max_abs() <= EQ_TOL * scale, (r, n, k)


def random_sheet(n, p, rng):
    coeffs = {}
    for I in multi_indices(n, p):
        coeffs[(I, ())] = complex(rng.normal(), rng.normal())
    return ExteriorForm(n, p, 0, coeffs)


def test_criterion_08_cone_properties(criterion):
    with criterion(8, "cone nesting, extreme-bidegree agreement, squares "
                      "are Hermitian positive, non-decomposable square is "
                      "not strongly positive"):
        rng = np.random.default_rng(20240808)

        # SP => HP => WP on 200 certified samples
        standard = {n: ExteriorForm(n, 1, 1, {((j,), (j,)): 1j
                                              for j in range(1, n + 1)})
                    for n in (2, 3, 4)}
        certified = 0
        for i in range(200):
            n = (2, 3, 4)[i % 3]
            u = standard[n] * 0.5
            for _ in range(3):
                v = rng.normal(size=(1, n)) + 1j * rng.normal(size=(1, n))
                v /= np.linalg.norm(v)
                alpha = decomposable([list(v[0])])
                u = u + alpha.wedge(alpha.conjugate()) * ipow(1) * \
                    float(rng.uniform(0.2, 1.0))
            sp = check_strongly_positive(u, SEARCH)
            assert sp.status is Status.CERTIFIED, i
            certified += 1
            assert check_hermitian_positive(u, tol=SEARCH.tol).status \
                is Status.CERTIFIED, i
            assert check_positive(u, SEARCH).status is Status.CERTIFIED, i
        assert certified == 200

        # HP and WP agree for p in {0, 1, n-1, n} at n = 3
        n = 3
        for p in (0, 1, 2, 3):
            for trial in range(10):
                w = ExteriorForm.zero(n, p, p)
                for _ in range(3):
                    sheet = random_sheet(n, p, rng) if p else None
                    if p == 0:
                        w = w + ExteriorForm.scalar(n, float(rng.normal()))
                        continue
                    sq = sheet.wedge(sheet.conjugate()) * ipow(p * p)
                    w = w + sq * float(rng.normal())
                hp = check_hermitian_positive(w, tol=SEARCH.tol)
                wp = check_positive(w, SEARCH)
                assert hp.status == wp.status, (p, trial)

        # i^{p^2} xi ^ conj(xi) is Hermitian certified for 100 random xi
        cases = [(3, 1), (3, 2), (4, 2), (4, 3)]
        for i in range(100):
            n, p = cases[i % len(cases)]
            xi = random_sheet(n, p, rng)
            u = xi.wedge(xi.conjugate()) * ipow(p * p)
            assert check_hermitian_positive(u, tol=SEARCH.tol).status \
                is Status.CERTIFIED, i

        # the classical non-decomposable square
        n = 4
        e12 = decomposable([list(np.eye(n)[0]), list(np.eye(n)[1])])
        e34 = decomposable([list(np.eye(n)[2]), list(np.eye(n)[3])])
        xi = e12 + e34
        u = xi.wedge(xi.conjugate()) * ipow(4)
        assert check_hermitian_positive(u, tol=SEARCH.tol).status \
            is Status.CERTIFIED
        assert check_strongly_positive(u, SEARCH).status \
            is not Status.CERTIFIED


def test_criterion_09_negative_controls(criterion):
    with criterion(9, "100 indefinite seeds at (r,n)=(2,2): c_2 refuted at "
                      "least once, every witness replays below -tol"):
        cfg = RunConfig("verify-c2", n=2, r=2, samples=100, seed=0,
                        starts=64, iters=200, tol=1e-9,
                        generators=("indefinite",))
        report = verify_c2(cfg)
        agg = report["aggregate"]
        assert agg["expect_negative"]
        assert agg["refuted"] >= 1
        assert agg["witness_replays_ok"]
        for idx in agg["refuted_indices"]:
            rec = report["samples"][idx]
            assert rec["verdict"]["witness"]["value"] < -cfg.tol
        assert agg["ok"]


def test_criterion_10_determinism(criterion):
    with criterion(10, "identical seeds reproduce byte-identical reports "
                       "modulo timestamp, independent of worker count"):
        def canon(report):
            report = dict(report)
            report.pop("timestamp")
            return json.dumps(report, sort_keys=True)

        cfg = RunConfig("verify-main", n=3, r=3, samples=12, seed=5,
                        starts=16, iters=60, workers=1)
        first, second = verify_main_theorem(cfg), verify_main_theorem(cfg)
        assert canon(first) == canon(second)
        pooled = verify_main_theorem(replace(cfg, workers=2))
        assert canon(first) == canon(pooled)

        neg = RunConfig("verify-c2", n=2, r=2, samples=10, seed=0,
                        starts=16, iters=60, generators=("indefinite",),
                        workers=1)
        assert canon(verify_c2(neg)) == canon(verify_c2(neg))
