"""errorbound: certified absolute/relative bounds, stability, weak sharpness."""

import numpy as np
import pytest

import gen
from avecond import (
    AveProblem,
    Kind,
    NormSpec,
    certify_abs,
    certify_rel,
    cond_exact,
    cond_hmatrix_inf,
    cond_neumann_upper,
    residual,
    solve_exact,
    stability_gap,
    vector_norm,
    weak_sharp_check,
)
from avecond.errors import NotRegularError, ZeroRightHandSideError

ONE, TWO, INF = NormSpec.one(), NormSpec.two(), NormSpec.inf()


class TestCertifyAbs:
    def test_tight_instance(self):
        p = AveProblem(3 * np.eye(2), np.ones(2))
        cond = cond_exact(p.A, INF)
        rep = certify_abs(p, np.zeros(2), INF, cond)
        assert rep.residual_norm == pytest.approx(1.0)
        assert rep.abs_bound == pytest.approx(0.5)
        true_err = vector_norm(np.zeros(2) - solve_exact(p).unique().x, INF)
        assert rep.abs_bound == pytest.approx(true_err, abs=1e-12)

    def test_zero_residual(self):
        p = AveProblem(3 * np.eye(2), np.ones(2))
        x_star = solve_exact(p).unique().x
        rep = certify_abs(p, x_star, INF, cond_exact(p.A, INF))
        assert rep.abs_bound == pytest.approx(0.0, abs=1e-12)

    def test_perturbed_candidate(self):
        A = np.array([[1.0, -4.0], [-4.0, 1.0]])
        p = AveProblem(A, np.ones(2))
        x = solve_exact(p).unique().x + np.array([0.01, 0.0])
        rep = certify_abs(p, x, INF, cond_exact(A, INF))
        assert rep.abs_bound >= 0.01 - 1e-12

    def test_rejects_not_applicable_cond(self):
        A = np.array([[2.0, 1.0], [-2.0, 1.0]])
        p = AveProblem(A, np.ones(2))
        with pytest.raises(ValueError):
            certify_abs(p, np.zeros(2), INF, cond_neumann_upper(A, INF))

    def test_soundness_corpus(self):
        rng = np.random.default_rng(60)
        for _ in range(200):
            n = int(rng.integers(2, 6))
            p = gen.make_regular_problem(rng, n)
            x_star = solve_exact(p).unique().x
            x = x_star + rng.normal(0.0, 1.0, n)
            for spec in (ONE, TWO, INF):
                rep = certify_abs(p, x, spec, cond_exact(p.A, spec))
                assert vector_norm(x - x_star, spec) <= rep.abs_bound + 1e-9

    def test_upper_bound_never_tightens(self):
        rng = np.random.default_rng(61)
        done = 0
        while done < 40:
            n = int(rng.integers(2, 5))
            p = gen.make_regular_problem(rng, n)
            upper = cond_hmatrix_inf(p.A)
            if upper.kind is Kind.NOT_APPLICABLE:
                continue
            done += 1
            x = rng.normal(0.0, 1.0, n)
            exact_rep = certify_abs(p, x, INF, cond_exact(p.A, INF))
            upper_rep = certify_abs(p, x, INF, upper)
            assert upper_rep.abs_bound >= exact_rep.abs_bound - 1e-12


class TestCertifyRel:
    def test_origin_candidate(self):
        p = AveProblem(3 * np.eye(2), np.ones(2))
        rep = certify_rel(p, np.zeros(2), INF)
        assert rep.rel_bound_upper == pytest.approx(2.0, abs=1e-12)
        assert rep.rel_bound_lower == pytest.approx(0.5, abs=1e-12)
        x_star = solve_exact(p).unique().x
        true_rel = 1.0  # ||0 - x*|| / ||x*||
        assert rep.rel_bound_lower <= true_rel <= rep.rel_bound_upper
        assert vector_norm(-x_star, INF) / vector_norm(x_star, INF) == pytest.approx(true_rel)

    def test_zero_at_solution(self):
        p = AveProblem(3 * np.eye(2), np.ones(2))
        rep = certify_rel(p, solve_exact(p).unique().x, INF)
        assert rep.rel_bound_upper == pytest.approx(0.0, abs=1e-12)

    def test_zero_rhs_rejected(self):
        p = AveProblem(3 * np.eye(2), np.zeros(2))
        with pytest.raises(ZeroRightHandSideError):
            certify_rel(p, np.ones(2), INF)

    def test_sandwich_corpus(self):
        rng = np.random.default_rng(62)
        done = 0
        while done < 150:
            n = int(rng.integers(2, 6))
            p = gen.make_regular_problem(rng, n)
            if vector_norm(p.b, INF) < 0.1:
                continue
            done += 1
            x_star = solve_exact(p).unique().x
            x = x_star + rng.normal(0.0, 1.0, n)
            for spec in (ONE, TWO, INF):
                rep = certify_rel(p, x, spec, cond=cond_exact(p.A, spec))
                true_rel = vector_norm(x - x_star, spec) / vector_norm(x_star, spec)
                assert rep.rel_bound_lower <= true_rel + 1e-9
                assert true_rel <= rep.rel_bound_upper + 1e-9


class TestStability:
    def test_same_rhs(self):
        gap, bound = stability_gap(3 * np.eye(2), np.ones(2), np.ones(2), INF)
        assert gap == pytest.approx(0.0, abs=1e-12)

    def test_tight_pair(self):
        gap, bound = stability_gap(3 * np.eye(2), np.ones(2), 2 * np.ones(2), INF)
        assert gap == pytest.approx(0.5, abs=1e-12)
        assert bound == pytest.approx(0.5, abs=1e-12)

    def test_random_pairs(self):
        rng = np.random.default_rng(63)
        A = np.array([[3.0, -1.0], [-1.0, 3.0]])
        for _ in range(50):
            b1 = rng.normal(0.0, 2.0, 2)
            b2 = rng.normal(0.0, 2.0, 2)
            for spec in (ONE, TWO, INF):
                gap, bound = stability_gap(A, b1, b2, spec)
                assert gap <= bound + 1e-9

    def test_not_regular_raises(self):
        with pytest.raises(NotRegularError):
            stability_gap(np.eye(2), np.ones(2), np.zeros(2), INF)


class TestWeakSharp:
    def test_solution_point_trivial(self):
        p = AveProblem(3 * np.eye(2), np.ones(2))
        res = weak_sharp_check(p, samples=50, seed=0)
        assert res.ok and res.tested > 0

    def test_worked_point(self):
        p = AveProblem(3 * np.eye(2), np.ones(2))
        x = np.array([1.0, 1.0])
        c2 = cond_exact(p.A, TWO).value
        lhs = np.linalg.norm(x - solve_exact(p).unique().x) / c2
        rhs = np.ones(2) @ residual(p, x)
        assert lhs == pytest.approx(np.sqrt(2.0), abs=1e-12)
        assert rhs == pytest.approx(2.0, abs=1e-12)
        assert lhs <= rhs

    def test_random_instances(self):
        rng = np.random.default_rng(64)
        for k in range(20):
            n = int(rng.integers(2, 5))
            p = gen.make_regular_problem(rng, n)
            res = weak_sharp_check(p, samples=200, seed=100 + k)
            assert res.ok

    def test_rejects_bad_sample_count(self):
        p = AveProblem(3 * np.eye(2), np.ones(2))
        with pytest.raises(ValueError):
            weak_sharp_check(p, samples=0)
