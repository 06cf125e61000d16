import math

import pytest

from relfix.demos import (
    PlanePoint,
    example1_g,
    example1_map,
    example2_g,
    example2_map,
    first_coord_relation,
)
from relfix.gspace import (
    GFunctional,
    SelfMap,
    check_limit_uniqueness,
    estimate_contraction_factor,
    low_discrepancy_points,
    related_pairs,
    relation_pattern_report,
    verify_g_properties,
)
from relfix.relations import FiniteRelation, universal_view

PLANE_SAMPLES = [
    PlanePoint(1.0, 5.0),
    PlanePoint(2.0, 5.0),
    PlanePoint(1.0, 3.0),
    PlanePoint(1.0, 2.0),
]


class TestGlobalScan:
    def test_degenerate_functional_is_flagged(self):
        report = verify_g_properties(
            example1_g, first_coord_relation(), PLANE_SAMPLES
        )
        assert not report.passed
        assert report.g1_witness == (PlanePoint(1.0, 5.0), PlanePoint(2.0, 5.0))
        assert report.g2_witness is None
        assert report.samples_checked == 4

    def test_metric_functional_passes(self):
        report = verify_g_properties(example2_g, universal_view(), PLANE_SAMPLES)
        assert report.passed
        assert report.g1_witness is None

    def test_triangle_mode_switch(self):
        # asymmetric-looking table: one long edge that two short edges
        # cannot cover, but the long edge never appears in a constrained
        # triple, so only the global scan objects
        table = {
            (0, 1): 1.0,
            (1, 0): 1.0,
            (0, 2): 5.0,
            (2, 0): 5.0,
            (1, 2): 1.0,
            (2, 1): 1.0,
        }
        rel = FiniteRelation.from_pairs(3, [(0, 1)])
        samples = [0, 1, 2]

        loose = GFunctional(lambda a, b: table.get((a, b), 0.0))
        report = verify_g_properties(loose, rel, samples)
        assert report.g3_witness == (0, 2, 1)

        tight = GFunctional(
            lambda a, b: table.get((a, b), 0.0),
            declared_domain_mode="relation_restricted",
        )
        report = verify_g_properties(tight, rel, samples)
        assert report.g3_witness is None
        assert report.passed

    def test_non_finite_value_raises(self):
        bad = GFunctional(lambda a, b: math.inf)
        with pytest.raises(ArithmeticError):
            verify_g_properties(bad, universal_view(), [0, 1])

    def test_report_serializes_witnesses(self):
        report = verify_g_properties(
            example1_g, first_coord_relation(), PLANE_SAMPLES
        )
        doc = report.to_json_dict()
        assert doc["passed"] is False
        assert doc["g1_witness"] == [[1.0, 5.0], [2.0, 5.0]]


class TestPatternScan:
    def test_degenerate_functional_passes_on_patterns(self):
        # the pair that sinks the global scan is unrelated, so the
        # hypothesis-level scan never sees it
        report = relation_pattern_report(
            example1_g, first_coord_relation(), PLANE_SAMPLES
        )
        assert report.passed

    def test_related_vanishing_still_flagged(self):
        report = relation_pattern_report(
            example1_g,
            first_coord_relation(),
            [PlanePoint(1.0, 5.0), PlanePoint(1.0, 5.0 + 0.0)],
        )
        # equal points are skipped, so no witness from the diagonal
        assert report.g1_witness is None

    def test_flags_vanishing_related_pair(self):
        g = GFunctional(lambda a, b: 0.0)
        report = relation_pattern_report(g, universal_view(), [0, 1])
        assert report.g1_witness == (0, 1)


class TestContractionEstimate:
    def test_quartering_map_measures_exactly_a_quarter(self):
        pairs = [
            (PlanePoint(0.0, 1.0), PlanePoint(0.0, 3.0)),
            (PlanePoint(2.0, -1.0), PlanePoint(2.0, 7.0)),
            (PlanePoint(0.0, 1e6), PlanePoint(0.0, 3e6)),
        ]
        est = estimate_contraction_factor(
            example1_g, example1_map, first_coord_relation(), pairs
        )
        assert est.factor == 0.25

    def test_zero_source_pairs_are_skipped(self):
        pairs = [
            (PlanePoint(0.0, 2.0), PlanePoint(0.0, 2.0)),
            (PlanePoint(0.0, 1.0), PlanePoint(0.0, 3.0)),
        ]
        est = estimate_contraction_factor(
            example1_g, example1_map, first_coord_relation(), pairs
        )
        assert est.factor == 0.25
        assert est.worst_pair == (PlanePoint(0.0, 1.0), PlanePoint(0.0, 3.0))

    def test_all_zero_sources_raise(self):
        pairs = [(PlanePoint(0.0, 2.0), PlanePoint(0.0, 2.0))]
        with pytest.raises(ValueError, match="no informative pairs"):
            estimate_contraction_factor(
                example1_g, example1_map, first_coord_relation(), pairs
            )

    def test_unrelated_pair_is_a_caller_error(self):
        pairs = [(PlanePoint(0.0, 1.0), PlanePoint(1.0, 3.0))]
        with pytest.raises(ValueError, match="not in the relation"):
            estimate_contraction_factor(
                example1_g, example1_map, first_coord_relation(), pairs
            )

    def test_expansion_shows_up_off_the_relation(self):
        pairs = [(PlanePoint(10.0, 0.0), PlanePoint(11.0, 0.0))]
        est = estimate_contraction_factor(
            example2_g, example2_map, universal_view(), pairs
        )
        assert est.factor == 5.25


class TestLimitUniqueness:
    def test_degenerate_functional_accepts_distinct_limits(self):
        seq = [PlanePoint(0.0, 1.0), PlanePoint(0.0, 1e-13)]
        a = PlanePoint(5.0, 0.0)
        b = PlanePoint(7.0, 0.0)
        assert check_limit_uniqueness(example1_g, seq, a, b)
        assert a != b

    def test_non_limit_is_rejected(self):
        seq = [PlanePoint(0.0, 0.0)]
        with pytest.raises(ValueError, match="not a g-limit"):
            check_limit_uniqueness(
                example1_g, seq, PlanePoint(0.0, 1.0), PlanePoint(0.0, 0.0)
            )

    def test_empty_sequence_rejected(self):
        with pytest.raises(ValueError):
            check_limit_uniqueness(example1_g, [], 0, 0)

    def test_metric_verdict_follows_the_triangle_bound(self):
        # a genuine metric can never certify both candidates as limits and
        # then separate them: the triangle bound caps their gap at 2 tol
        g = GFunctional(lambda a, b: abs(a - b))
        assert check_limit_uniqueness(g, [0.0], 0.0, 1e-13, tol=1e-12)

    def test_triangle_violator_can_separate(self):
        table = {(1, 2): 1.0, (2, 1): 1.0}
        g = GFunctional(lambda a, b: table.get((a, b), 0.0))
        assert not check_limit_uniqueness(g, [0], 1, 2)


class TestProbePoints:
    def test_deterministic(self):
        box = ((-1.0, 1.0), (0.0, 2.0))
        assert low_discrepancy_points(box, 16) == low_discrepancy_points(box, 16)

    def test_inside_bounds(self):
        box = ((-1.0, 1.0), (0.0, 2.0))
        pts = low_discrepancy_points(box, 64)
        assert len(pts) == 64
        assert all(-1.0 <= x <= 1.0 and 0.0 <= y <= 2.0 for x, y in pts)

    def test_first_point(self):
        pts = low_discrepancy_points(((0.0, 1.0), (0.0, 1.0)), 1)
        assert pts[0] == (0.5, pytest.approx(1.0 / 3.0))


class TestRelatedPairs:
    def test_orders_and_filters(self):
        pts = [PlanePoint(0.0, 1.0), PlanePoint(0.0, 2.0), PlanePoint(1.0, 1.0)]
        pairs = related_pairs(first_coord_relation(), pts)
        assert pairs == [(pts[0], pts[1]), (pts[1], pts[0])]


class TestConstruction:
    def test_bad_mode_rejected(self):
        with pytest.raises(ValueError):
            GFunctional(lambda a, b: 0.0, declared_domain_mode="sometimes")

    def test_selfmap_is_callable(self):
        double = SelfMap(lambda x: 2 * x)
        assert double(3) == 6
