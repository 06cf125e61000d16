import re

import pytest

from relfix.demos import PlanePoint, example1_g, example1_map, first_coord_relation
from relfix.gspace import GFunctional, SelfMap
from relfix.picard import (
    StoppingPolicy,
    a_priori_bound,
    iterate,
    trace_to_csv,
    uniqueness_via_path,
)
from relfix.relations import FiniteRelation, RelationView, universal_view

ABS_DIFF = GFunctional(lambda a, b: abs(a - b))


class TestIterate:
    def test_instant_convergence(self):
        trace = iterate(SelfMap(lambda x: 0.0), ABS_DIFF, universal_view(), 0.0)
        assert trace.converged
        assert trace.iterates == [0.0, 0.0]
        assert trace.residuals == [0.0]
        assert trace.steps == 1
        assert trace.fixed_point == 0.0

    def test_geometric_run(self):
        trace = iterate(
            SelfMap(lambda x: x / 2.0),
            ABS_DIFF,
            universal_view(),
            1.0,
            StoppingPolicy(residual_tol=1e-6, max_iterations=100),
            alpha=0.5,
        )
        assert trace.converged
        assert trace.alpha_used == 0.5
        assert trace.residuals[0] == 0.5
        for prev, cur in zip(trace.residuals, trace.residuals[1:]):
            assert cur == prev / 2.0
        # certificates dominate the later residuals they were issued for
        for m, cert in enumerate(trace.bound_certificates):
            assert cert == a_priori_bound(0.5, trace.residuals[0], m)
            for n in range(m + 1, len(trace.iterates)):
                gap = abs(trace.iterates[m] - trace.iterates[n])
                assert gap <= cert * (1.0 + 1e-12)

    def test_no_alpha_no_certificates(self):
        trace = iterate(SelfMap(lambda x: 0.0), ABS_DIFF, universal_view(), 1.0)
        assert trace.alpha_used is None
        assert trace.bound_certificates is None

    def test_budget_exhaustion_is_not_convergence(self):
        trace = iterate(
            SelfMap(lambda x: x / 2.0),
            ABS_DIFF,
            universal_view(),
            1.0,
            StoppingPolicy(residual_tol=1e-30, max_iterations=5),
        )
        assert not trace.converged
        assert trace.steps == 5

    def test_uncertified_start_still_runs(self):
        never = RelationView(lambda a, b: False)
        trace = iterate(SelfMap(lambda x: 0.0), ABS_DIFF, never, 1.0)
        assert trace.converged
        assert not trace.certified
        assert not trace.preserved

    def test_audits_on_explicit_relation(self):
        rel = FiniteRelation.from_pairs(2, [(1, 0), (0, 0)])
        trace = iterate(
            SelfMap(lambda i: 0),
            GFunctional(lambda a, b: float(abs(a - b))),
            rel,
            1,
        )
        assert trace.iterates == [1, 0, 0]
        assert trace.certified
        assert trace.preserved

    def test_overflow_aborts_with_step_index(self):
        blowup = SelfMap(lambda x: x * 1e200)
        with pytest.raises(ArithmeticError, match="diverged at step 1"):
            iterate(blowup, ABS_DIFF, universal_view(), 1.0)


class TestAPrioriBound:
    def test_value(self):
        assert a_priori_bound(0.5, 1.0, 3) == 0.25
        assert a_priori_bound(0.25, 0.75, 0) == 1.0

    @pytest.mark.parametrize("alpha", [0.0, 1.0, 1.5, -0.5])
    def test_alpha_domain(self, alpha):
        with pytest.raises(ValueError):
            a_priori_bound(alpha, 1.0, 0)

    def test_negative_residual_rejected(self):
        with pytest.raises(ValueError):
            a_priori_bound(0.5, -1.0, 0)

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            a_priori_bound(0.5, 1.0, -1)


class TestUniquenessViaPath:
    # both candidates are genuinely fixed g-wise: their second coordinate
    # is zero, and the functional ignores the first coordinate
    FP_A = PlanePoint(0.0, 0.0)
    FP_B = PlanePoint(1.0, 0.0)
    ORDERED = RelationView(lambda p, q: p[0] <= q[0])

    def test_geometric_decay(self):
        path = [self.FP_A, PlanePoint(1.0, 1.0), self.FP_B]
        report = uniqueness_via_path(
            example1_map,
            example1_g,
            self.ORDERED,
            self.FP_A,
            self.FP_B,
            path,
            alpha=0.5,
            n_steps=50,
        )
        assert report.bounds == tuple(2.0 * 0.5**k for k in range(51))
        assert report.measured == 0.0
        assert report.coincide

    def test_single_edge_path(self):
        report = uniqueness_via_path(
            example1_map,
            example1_g,
            self.ORDERED,
            self.FP_A,
            self.FP_B,
            [self.FP_A, self.FP_B],
            alpha=0.5,
            n_steps=10,
        )
        assert report.bounds[0] == 0.0
        assert report.coincide

    def test_short_bound_sequence_withholds_verdict(self):
        path = [self.FP_A, PlanePoint(1.0, 1.0), self.FP_B]
        report = uniqueness_via_path(
            example1_map,
            example1_g,
            self.ORDERED,
            self.FP_A,
            self.FP_B,
            path,
            alpha=0.5,
            n_steps=3,
        )
        assert not report.coincide

    def test_edge_outside_symmetric_closure(self):
        path = [self.FP_A, self.FP_B]
        with pytest.raises(ValueError, match="symmetric closure"):
            uniqueness_via_path(
                example1_map,
                example1_g,
                first_coord_relation(),
                self.FP_A,
                self.FP_B,
                path,
                alpha=0.5,
                n_steps=10,
            )

    def test_non_fixed_candidate_rejected(self):
        drifter = PlanePoint(1.0, 0.5)
        with pytest.raises(ValueError, match="not fixed"):
            uniqueness_via_path(
                example1_map,
                example1_g,
                self.ORDERED,
                self.FP_A,
                drifter,
                [self.FP_A, drifter],
                alpha=0.5,
                n_steps=10,
            )

    def test_endpoint_mismatch_rejected(self):
        with pytest.raises(ValueError, match="endpoints"):
            uniqueness_via_path(
                example1_map,
                example1_g,
                self.ORDERED,
                self.FP_A,
                self.FP_B,
                [self.FP_A, PlanePoint(0.5, 0.0)],
                alpha=0.5,
                n_steps=10,
            )

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"alpha": 1.0, "n_steps": 1},
            {"alpha": 0.5, "n_steps": -1},
        ],
    )
    def test_parameter_domains(self, kwargs):
        with pytest.raises(ValueError):
            uniqueness_via_path(
                example1_map,
                example1_g,
                self.ORDERED,
                self.FP_A,
                self.FP_B,
                [self.FP_A, self.FP_B],
                **kwargs,
            )


class TestTraceCsv:
    def test_format(self):
        trace = iterate(
            SelfMap(lambda x: x / 2.0),
            ABS_DIFF,
            universal_view(),
            1.0,
            StoppingPolicy(residual_tol=1e-3, max_iterations=50),
        )
        text = trace_to_csv(trace)
        lines = text.splitlines()
        assert lines[0] == "iteration,residual"
        assert len(lines) == trace.steps + 1
        row = re.compile(r"^\d+,\d\.\d{16}e[+-]\d{2,3}$")
        for line in lines[1:]:
            assert row.match(line), line
        assert text.endswith("\n")


class TestStoppingPolicy:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"residual_tol": 0.0},
            {"residual_tol": -1.0},
            {"residual_tol": float("inf")},
            {"max_iterations": 0},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            StoppingPolicy(**kwargs)
