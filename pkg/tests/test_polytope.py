"""Geometry tests: polytope builders, vertices, volume, moments, MC."""

from fractions import Fraction
from itertools import combinations
from math import lcm

import numpy as np
import pytest

from powerpoly.exact_math import RatMatrix, rank, solve_square_system
from powerpoly.game_core import parse_game
from powerpoly.polytope import (
    Constraint,
    DegenerateGeometryError,
    EstimateInconclusiveError,
    HPolytope,
    build_representation_polytope,
    build_weight_polytope,
    centroid,
    enumerate_vertices,
    estimate_centroid_mc,
    moments,
    polytope_to_json,
    triangulate,
    volume,
)
from expected_values import WORKED


def poly_from(dim, rows):
    """HPolytope from (coefficients, bound) pairs."""
    return HPolytope(
        dim,
        [Constraint(tuple(Fraction(c) for c in a), Fraction(b)) for a, b in rows],
    )


def vertex_coords(poly):
    return {v.coords for v in enumerate_vertices(poly)}


def cells_volume_moments(cells, dim):
    """Recompute volume and moments from an explicit cell list."""
    from powerpoly.polytope import _simplex_volume

    vol = Fraction(0)
    moms = [Fraction(0)] * dim
    for cell in cells:
        cv = _simplex_volume(cell)
        vol += cv
        for i in range(dim):
            avg = sum(
                (v.coords[i] for v in cell.vertices), Fraction(0)
            ) / len(cell.vertices)
            moms[i] += cv * avg
    return vol, tuple(moms)


UNIT_TRIANGLE = [((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)]
# triangle with vertices (1/3,1/3), (1/2,0), (1/2,1/2)
EDGE_TRIANGLE = [((-1, 1), 0), ((1, 0), Fraction(1, 2)), ((-2, -1), -1)]
UNIT_TETRA = [
    ((-1, 0, 0), 0),
    ((0, -1, 0), 0),
    ((0, 0, -1), 0),
    ((1, 1, 1), 1),
]


class TestWeightPolytope:
    def test_worked_example_vertices(self):
        poly = build_weight_polytope(parse_game("[3;2,1,1]"))
        assert vertex_coords(poly) == WORKED["weight_vertices"]

    def test_matches_hand_built_system(self):
        built = build_weight_polytope(parse_game("[3;2,1,1]"))
        manual = poly_from(
            2,
            [
                ((-1, 0), 0),
                ((0, -1), 0),
                ((1, 1), 1),
                ((-2, -1), -1),
                ((-1, 1), 0),
            ],
        )
        assert vertex_coords(built) == vertex_coords(manual)
        assert volume(built) == volume(manual)
        assert moments(built) == moments(manual)

    def test_single_voter_is_a_point(self):
        poly = build_weight_polytope(parse_game("[1;1]"))
        assert poly.dim == 0
        assert volume(poly) == 1
        assert centroid(poly) == ()

    def test_two_voter_segment(self):
        poly = build_weight_polytope(parse_game("[1;1,1]"))
        assert vertex_coords(poly) == {(Fraction(0),), (Fraction(1),)}
        assert volume(poly) == 1
        assert centroid(poly) == (Fraction(1, 2),)

    def test_three_symmetric_voters(self):
        # pairwise wins against singletons cut the triangle with corners
        # at the three half-half splits
        poly = build_weight_polytope(parse_game("[2;1,1,1]"))
        assert vertex_coords(poly) == {
            (Fraction(1, 2), Fraction(1, 2)),
            (Fraction(1, 2), Fraction(0)),
            (Fraction(0), Fraction(1, 2)),
        }
        assert centroid(poly) == (Fraction(1, 3), Fraction(1, 3))


class TestRepresentationPolytope:
    def test_worked_example_values(self):
        poly = build_representation_polytope(parse_game("[3;2,1,1]"))
        assert volume(poly) == WORKED["rep_volume"]
        moms = moments(poly)
        assert moms[0] == WORKED["rep_quota_moment"]
        assert moms[1:] == WORKED["rep_w_moments"]

    def test_single_voter_quota_segment(self):
        poly = build_representation_polytope(parse_game("[1;1]"))
        assert poly.dim == 1
        assert vertex_coords(poly) == {(Fraction(0),), (Fraction(1),)}
        assert centroid(poly) == (Fraction(1, 2),)

    def test_two_voter_unanimity_triangle(self):
        poly = build_representation_polytope(parse_game("[2;1,1]"))
        assert vertex_coords(poly) == {
            (Fraction(1, 2), Fraction(1, 2)),
            (Fraction(1), Fraction(0)),
            (Fraction(1), Fraction(1)),
        }
        assert volume(poly) == Fraction(1, 4)
        assert centroid(poly) == (Fraction(5, 6), Fraction(1, 2))


class TestVertexEnumeration:
    def test_vertices_satisfy_all_constraints_exactly(self, corpus):
        for game in corpus:
            if game.n > 4:
                continue
            for poly in (
                build_weight_polytope(game),
                build_representation_polytope(game),
            ):
                for v in enumerate_vertices(poly):
                    for idx, con in enumerate(poly.constraints):
                        val = sum(
                            (c * x for c, x in zip(con.a, v.coords)),
                            Fraction(0),
                        )
                        assert val <= con.b
                        assert (val == con.b) == (idx in v.active)

    def test_active_sets_have_full_rank(self, corpus):
        for game in corpus:
            if game.n > 4:
                continue
            for poly in (
                build_weight_polytope(game),
                build_representation_polytope(game),
            ):
                d = poly.dim
                for v in enumerate_vertices(poly):
                    rows = [list(poly.constraints[i].a) for i in sorted(v.active)]
                    assert rank(RatMatrix.from_rows(rows)) == d

    def test_every_nonsingular_active_subset_reproduces_vertex(self):
        # independent solve route: any d active boundaries with full rank
        # must intersect exactly at the vertex they are active on
        for builder in (build_weight_polytope, build_representation_polytope):
            poly = builder(parse_game("[3;2,1,1]"))
            d = poly.dim
            for v in enumerate_vertices(poly):
                confirmed = 0
                for subset in combinations(sorted(v.active), d):
                    mat = RatMatrix.from_rows(
                        [list(poly.constraints[i].a) for i in subset]
                    )
                    rhs = tuple(poly.constraints[i].b for i in subset)
                    sol = solve_square_system(mat, rhs)
                    if sol is not None:
                        assert sol == v.coords
                        confirmed += 1
                assert confirmed >= 1

    def test_empty_polytope_has_no_vertices(self):
        poly = poly_from(1, [((1,), 0), ((-1,), -1)])
        assert enumerate_vertices(poly) == []
        assert volume(poly) == 0

    def test_vertices_sorted_lexicographically(self):
        poly = build_weight_polytope(parse_game("[3;2,1,1]"))
        coords = [v.coords for v in enumerate_vertices(poly)]
        assert coords == sorted(coords)


class TestTriangulation:
    def test_simplex_is_single_cell(self):
        poly = poly_from(2, UNIT_TRIANGLE)
        assert len(triangulate(poly)) == 1

    def test_segment_is_single_cell(self):
        poly = poly_from(1, [((-1,), 0), ((1,), 1)])
        assert len(triangulate(poly)) == 1

    def test_quadrilateral_splits_in_two(self):
        poly = build_weight_polytope(parse_game("[3;2,1,1]"))
        cells = triangulate(poly)
        assert len(cells) == 2
        assert all(len(c.vertices) == 3 for c in cells)

    def test_apex_rules_agree_on_volume_and_moments(self, corpus):
        for game in corpus:
            if game.n > 4:
                continue
            for poly in (
                build_weight_polytope(game),
                build_representation_polytope(game),
            ):
                if poly.dim == 0:
                    continue
                lo = cells_volume_moments(
                    triangulate(poly, apex_rule="lexmin"), poly.dim
                )
                hi = cells_volume_moments(
                    triangulate(poly, apex_rule="lexmax"), poly.dim
                )
                assert lo == hi

    def test_rejects_unknown_apex_rule(self):
        poly = poly_from(2, UNIT_TRIANGLE)
        with pytest.raises(ValueError):
            triangulate(poly, apex_rule="random")


class TestVolumeAndMoments:
    def test_unit_triangle(self):
        poly = poly_from(2, UNIT_TRIANGLE)
        assert volume(poly) == Fraction(1, 2)
        assert moments(poly) == (Fraction(1, 6), Fraction(1, 6))
        assert centroid(poly) == (Fraction(1, 3), Fraction(1, 3))

    def test_worked_weight_polytope(self):
        poly = build_weight_polytope(parse_game("[3;2,1,1]"))
        assert volume(poly) == WORKED["weight_volume"]
        assert moments(poly) == WORKED["weight_moments"]
        # chart drops the last weight; the unit sum recovers it
        assert centroid(poly) == WORKED["avg_weight"][:-1]

    def test_volumes_positive_for_small_corpus(self, corpus):
        for game in corpus:
            if game.n > 4:
                continue
            assert volume(build_weight_polytope(game)) > 0 or game.n == 1
            assert volume(build_representation_polytope(game)) > 0

    def test_tight_redundant_constraint_changes_nothing(self):
        base = build_weight_polytope(parse_game("[3;2,1,1]"))
        extra = (
            # supporting line through vertex (1, 0): tight but redundant
            Constraint((Fraction(1), Fraction(0)), Fraction(1), "w1 <= 1"),
            # strictly redundant halfspace
            Constraint((Fraction(1), Fraction(1)), Fraction(2), "slack"),
        )
        padded = HPolytope(base.dim, base.constraints + extra)
        assert vertex_coords(padded) == vertex_coords(base)
        assert volume(padded) == volume(base)
        assert moments(padded) == moments(base)

    def test_centroid_of_empty_polytope_raises(self):
        poly = poly_from(1, [((1,), 0), ((-1,), -1)])
        with pytest.raises(DegenerateGeometryError):
            centroid(poly)

    def test_centroid_of_infeasible_point_raises(self):
        poly = HPolytope(0, [Constraint((), Fraction(-1))])
        with pytest.raises(DegenerateGeometryError):
            centroid(poly)


def midpoint_riemann(rows, dim, n_cells):
    """Midpoint-rule volume and moments over [0,1]^dim, exact arithmetic.

    Midpoints have coordinates (2i+1)/(2N); clearing denominators turns
    every membership test into an integer comparison, so the only error
    is the O(1/N) boundary-cell term.
    """
    u = 2 * np.arange(n_cells, dtype=np.int64) + 1
    if dim == 2:
        axes = (u[:, None], u[None, :])
    else:
        axes = (u[:, None, None], u[None, :, None], u[None, None, :])
    inside = np.ones((n_cells,) * dim, dtype=bool)
    for a, b in rows:
        scale = lcm(*(Fraction(c).denominator for c in (*a, b)))
        coeffs = [int(Fraction(c) * scale) for c in a]
        bound = int(Fraction(b) * scale)
        lhs = 0
        for c, ax in zip(coeffs, axes):
            lhs = lhs + c * ax
        inside &= lhs <= bound * 2 * n_cells
    vol = inside.sum() / n_cells**dim
    moms = tuple(
        float((ax * inside).sum()) / (2 * n_cells) / n_cells**dim for ax in axes
    )
    return vol, moms


class TestRiemannOracle:
    # midpoint error observed at <= 0.5/N on all three bodies; 1/N is
    # a doubled safety margin
    @pytest.mark.parametrize(
        "rows,dim,n_cells",
        [
            (UNIT_TRIANGLE, 2, 512),
            (EDGE_TRIANGLE, 2, 512),
            (UNIT_TETRA, 3, 128),
        ],
        ids=["unit-triangle", "edge-triangle", "unit-tetra"],
    )
    def test_exact_integrals_match_riemann_sums(self, rows, dim, n_cells):
        poly = poly_from(dim, rows)
        vol_hat, moms_hat = midpoint_riemann(rows, dim, n_cells)
        tol = 1.0 / n_cells
        assert abs(vol_hat - float(volume(poly))) <= tol
        for approx, exact in zip(moms_hat, moments(poly)):
            assert abs(approx - float(exact)) <= tol


class TestMonteCarlo:
    def test_worked_polytope_estimate(self):
        poly = build_weight_polytope(parse_game("[3;2,1,1]"))
        est, se = estimate_centroid_mc(poly, 1_000_000, seed=42)
        for apx, exact in zip(est, WORKED["avg_weight"]):
            assert abs(apx - float(exact)) < 5e-3
        assert all(s > 0 for s in se)

    def test_simplex_proposal_path(self):
        # x,y >= 0 plus a unit sum row triggers the Dirichlet proposal
        poly = poly_from(2, UNIT_TRIANGLE)
        est, _ = estimate_centroid_mc(poly, 200_000, seed=5)
        assert all(abs(apx - 1 / 3) < 5e-3 for apx in est)

    def test_same_seed_is_deterministic(self):
        poly = build_weight_polytope(parse_game("[3;2,1,1]"))
        first = estimate_centroid_mc(poly, 50_000, seed=9)
        second = estimate_centroid_mc(poly, 50_000, seed=9)
        assert first == second

    def test_zero_dimensional_estimate_is_empty(self):
        poly = HPolytope(0, [])
        assert estimate_centroid_mc(poly, 10, seed=0) == ((), ())

    def test_rejects_nonpositive_sample_count(self):
        poly = poly_from(2, UNIT_TRIANGLE)
        with pytest.raises(ValueError):
            estimate_centroid_mc(poly, 0, seed=1)

    def test_starved_sampler_is_inconclusive(self):
        # diagonal band of area ~0.002 inside the unit square: 40 box
        # draws essentially never land two hits
        band = poly_from(
            2,
            [
                ((-1, 0), 0),
                ((0, -1), 0),
                ((1, 0), 1),
                ((0, 1), 1),
                ((1, -1), Fraction(1, 1000)),
                ((-1, 1), Fraction(1, 1000)),
            ],
        )
        with pytest.raises(EstimateInconclusiveError):
            estimate_centroid_mc(band, 40, seed=7)

    def test_empty_box_is_inconclusive(self):
        poly = poly_from(1, [((1,), 0), ((-1,), -1)])
        with pytest.raises(EstimateInconclusiveError):
            estimate_centroid_mc(poly, 100, seed=3)


class TestJsonDump:
    def test_schema_fields_and_values(self):
        poly = build_weight_polytope(parse_game("[3;2,1,1]"))
        doc = polytope_to_json(poly)
        assert doc["dim"] == 2
        assert doc["volume"] == "1/6"
        assert doc["moments"] == ["11/108", "7/216"]
        assert ["1", "0"] in doc["vertices"]
        assert len(doc["constraints"]) == len(poly.constraints)
        first = doc["constraints"][0]
        assert set(first) == {"a", "b", "label"}
