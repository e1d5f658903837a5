import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import sobol_area
from riesz_lab.errors import InputError
from riesz_lab.geometry import (
    Disk,
    Interval,
    IntervalSet,
    build_paper_set,
    default_split_counts,
    disk_lune_area,
    left_edge_region,
    lens_nodes,
    long_intervals,
    lune_nodes,
    measure,
    normalize_intervals,
    set_boolean,
    translate_set,
)

coord = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
raw_pairs = st.lists(st.tuples(coord, coord).map(sorted), max_size=8)


def as_set(pairs):
    return normalize_intervals(pairs)


class TestNormalize:
    def test_two_intervals(self):
        S = normalize_intervals([(0, 1), (2, 3)])
        assert S.pairs() == [(0.0, 1.0), (2.0, 3.0)]
        assert measure(S) == 2.0

    def test_overlap_merges(self):
        assert normalize_intervals([(0, 1), (0.5, 2)]).pairs() == [(0.0, 2.0)]

    def test_empty(self):
        S = normalize_intervals([])
        assert S.empty and measure(S) == 0.0

    def test_touching_and_zero_length(self):
        S = normalize_intervals([(1, 2), (0, 1), (5, 5)])
        assert S.pairs() == [(0.0, 2.0)]

    def test_within_merge_tolerance(self):
        S = normalize_intervals([(0, 1), (1 + 5e-13, 2)])
        assert len(S) == 1

    @pytest.mark.parametrize("bad", [[(0, math.inf)], [(math.nan, 1)], [(2, 1)]])
    def test_rejects(self, bad):
        with pytest.raises(InputError):
            normalize_intervals(bad)

    def test_interval_needs_positive_length(self):
        with pytest.raises(InputError):
            Interval(1.0, 1.0)

    @given(raw_pairs)
    def test_sorted_disjoint(self, pairs):
        S = as_set(pairs)
        lo, hi = S.lows, S.highs
        assert np.all(lo < hi)
        assert np.all(lo[1:] - hi[:-1] > 0)

    @given(raw_pairs)
    def test_measure_bounded_by_input_total(self, pairs):
        total = sum(b - a for a, b in pairs)
        assert measure(as_set(pairs)) <= total + 1e-9


class TestAlgebra:
    def test_subtract(self):
        S = set_boolean(as_set([(0, 1)]), as_set([(0.5, 1)]), "subtract")
        assert S.pairs() == [(0.0, 0.5)]

    def test_translate(self):
        S = translate_set(as_set([(0, 0.1)]), 0.9)
        assert S.pairs()[0][0] == pytest.approx(0.9) and S.pairs()[0][1] == pytest.approx(1.0)
        T = translate_set(as_set([(0, 1), (2, 3)]), -2)
        assert T.pairs() == [(-2.0, -1.0), (0.0, 1.0)]

    def test_unknown_op(self):
        with pytest.raises(InputError):
            set_boolean(as_set([(0, 1)]), as_set([(0, 1)]), "xor")

    @given(raw_pairs, coord)
    def test_translation_preserves_measure(self, pairs, t):
        S = as_set(pairs)
        assert measure(translate_set(S, t)) == pytest.approx(measure(S), abs=1e-9)

    @given(raw_pairs, raw_pairs)
    def test_inclusion_exclusion(self, p, q):
        S, T = as_set(p), as_set(q)
        u = measure(set_boolean(S, T, "union"))
        i = measure(set_boolean(S, T, "intersect"))
        assert u + i == pytest.approx(measure(S) + measure(T), abs=1e-9)

    @given(raw_pairs, raw_pairs)
    def test_subtract_measure(self, p, q):
        S, T = as_set(p), as_set(q)
        d = measure(set_boolean(S, T, "subtract"))
        assert d == pytest.approx(measure(S) - measure(set_boolean(S, T, "intersect")), abs=1e-9)

    @given(raw_pairs, raw_pairs, st.lists(coord, min_size=1, max_size=20))
    def test_membership_matches_pointwise_logic(self, p, q, xs):
        S, T = as_set(p), as_set(q)
        x = np.array(xs)
        # stay off boundaries, where closed/open conventions differ
        edges = np.concatenate([S.lows, S.highs, T.lows, T.highs, [np.inf]])
        x = x[np.min(np.abs(x[:, None] - edges[None, :]), axis=1) > 1e-9]
        inS, inT = S.contains(x), T.contains(x)
        assert np.array_equal(set_boolean(S, T, "intersect").contains(x), inS & inT)
        assert np.array_equal(set_boolean(S, T, "union").contains(x), inS | inT)
        assert np.array_equal(set_boolean(S, T, "subtract").contains(x), inS & ~inT)

    def test_operators(self):
        S, T = as_set([(0, 2)]), as_set([(1, 3)])
        assert (S & T).pairs() == [(1.0, 2.0)]
        assert (S | T).pairs() == [(0.0, 3.0)]
        assert (S - T).pairs() == [(0.0, 1.0)]
        assert (S + 1).pairs() == [(1.0, 3.0)]


class TestPaperSet:
    def test_stage_one(self):
        P = build_paper_set(1)
        assert P.final.pairs() == [(0.0, 1.0), (2.0, 3.0)]
        assert math.isnan(P.eps)

    def test_stage_two_split_three(self):
        P = build_paper_set(2, [3])
        # [2,3] in four pieces of 1/4, left 1/8 of each kept
        expected = [(0.0, 1.0)] + [(2 + j / 4, 2 + j / 4 + 1 / 8) for j in range(4)]
        assert P.final.pairs() == pytest.approx(expected)
        assert P.final.measure == pytest.approx(1.5, abs=1e-15)
        assert len(P.usable) == 3 and P.continuation.lo == pytest.approx(2.75)

    @pytest.mark.parametrize("N", [1, 2, 5, 9, 40])
    def test_stage_two_measure_any_split(self, N):
        assert build_paper_set(2, [N]).final.measure == pytest.approx(1.5, abs=1e-13)

    def test_stage_three_gap(self):
        P = build_paper_set(3, [3, 2])
        st3 = P.steps[-1]
        lengths = [iv.length for iv in st3.kept]
        assert np.allclose(lengths, st3.eps, rtol=0, atol=1e-15)
        gaps = [b.lo - a.hi for a, b in zip(st3.kept, st3.kept[1:])]
        assert np.allclose(gaps, 2 * st3.eps, rtol=1e-12)
        assert len(st3.kept) == 3

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_nesting_and_stage_invariants(self, n):
        P = build_paper_set(n, [3 + k for k in range(n - 1)])
        for k in range(2, n + 1):
            Sk, Sprev = P.stage_set(k), P.stage_set(k - 1)
            inter = set_boolean(Sk, Sprev, "intersect")
            assert inter.pairs() == pytest.approx(Sk.pairs())
            step = P.steps[k - 2]
            assert len(step.kept) == step.splits + 1
            assert len(step.usable) == step.splits
            gaps = [b.lo - a.hi for a, b in zip(step.kept, step.kept[1:])]
            assert np.allclose(gaps, (k - 1) * step.eps, rtol=1e-9)

    def test_default_splits(self):
        assert default_split_counts(4) == [9, 27, 81]
        assert build_paper_set(3).split_counts == (9, 27)

    @pytest.mark.parametrize("args", [(0, None), (2, [0]), (3, [3]), (2, [-1])])
    def test_rejects(self, args):
        with pytest.raises(InputError):
            build_paper_set(*args)


class TestLeftEdges:
    def test_toy_family(self):
        P = build_paper_set(2, [3])
        eps = P.eps
        A = left_edge_region(P, 2, eps)
        # only [0,1] is longer than eps
        assert len(long_intervals(P.final, eps)) == 1
        assert A.pairs() == pytest.approx([(-2 * eps, eps)])

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_measure_formula(self, n):
        P = build_paper_set(n)
        e = len(long_intervals(P.final, P.eps))
        A = left_edge_region(P, n, P.eps)
        assert A.measure == pytest.approx(e * (n + 1) * P.eps, rel=1e-12)

    def test_mismatches(self):
        P = build_paper_set(2, [3])
        with pytest.raises(InputError):
            left_edge_region(P, 3, P.eps)
        with pytest.raises(InputError):
            left_edge_region(P, 2, 2 * P.eps)

    def test_eps_larger_than_everything(self):
        S = IntervalSet((Interval(0.0, 1.0), Interval(2.0, 3.0)))
        assert long_intervals(S, 5.0) == []


class TestDisk:
    def test_default_area(self):
        assert Disk().area == pytest.approx(1.0, abs=1e-12)

    def test_rejects_bad_radius(self):
        with pytest.raises(InputError):
            Disk(0.0)

    def test_lune_limits(self):
        r = 0.7
        assert disk_lune_area(r, 0.0) == 0.0
        assert disk_lune_area(r, 2 * r) == pytest.approx(math.pi * r * r)
        assert disk_lune_area(r, 5.0) == pytest.approx(math.pi * r * r)
        with pytest.raises(InputError):
            disk_lune_area(r, -1.0)

    @given(st.floats(0.0, 2.0), st.floats(0.0, 2.0))
    def test_lune_monotone(self, a, b):
        r = 1 / math.sqrt(math.pi)
        lo, hi = sorted((a, b))
        assert disk_lune_area(r, lo) <= disk_lune_area(r, hi) + 1e-15

    def test_lune_monte_carlo(self):
        r = 1 / math.sqrt(math.pi)
        d = r

        def inside(x):
            return (np.hypot(x[:, 0], x[:, 1]) <= r) & (np.hypot(x[:, 0] - d, x[:, 1]) > r)

        est = sobol_area(inside, ((-r, r), (-r, r)), m=2**23, seed=7)
        assert est == pytest.approx(disk_lune_area(r, d), rel=1e-4)

    @pytest.mark.parametrize("d", [0.01, 0.3, 0.5641895835, 1.0, 1.2])
    @pytest.mark.parametrize("theta", [0.0, 0.7, 2.5])
    def test_lune_nodes_integrate_area(self, d, theta):
        r = 1 / math.sqrt(math.pi)
        pts, w = lune_nodes(r, d, 0.0, theta, 64, 128)
        assert w.sum() == pytest.approx(disk_lune_area(r, d), rel=1e-12, abs=1e-14)
        u = np.array([math.cos(theta), math.sin(theta)])
        # nodes sit in D - d u and outside D
        assert np.all(np.hypot(*(pts + d * u).T) <= r * (1 + 1e-12))
        assert np.all(np.hypot(*pts.T) >= r * (1 - 1e-12))

    @pytest.mark.parametrize("d", [0.05, 0.4, 1.0])
    def test_lens_plus_lune_is_disk(self, d):
        r = 1 / math.sqrt(math.pi)
        _, wl = lune_nodes(r, d, 0.0, 0.3, 64, 128)
        _, wk = lens_nodes(r, d, 0.3, 64, 128)
        assert wl.sum() + wk.sum() == pytest.approx(1.0, rel=1e-12)

    def test_crescent_area(self):
        r, eps = 1 / math.sqrt(math.pi), 0.1
        _, w = lune_nodes(r, r + eps, r - eps, 1.1, 128, 256)
        # (D - s) minus (D - t) has area |lune(|s - t|)|
        assert w.sum() == pytest.approx(disk_lune_area(r, 2 * eps), rel=1e-12)
