"""Halfspace polytopes over the rationals, built from weighted games.

Two constructions matter here. The weight polytope of a game collects the
normalized weight vectors compatible with its coalition structure; the
representation polytope additionally carries the quota as a coordinate.
Both live in a chart that eliminates the last weight via
w_n = 1 - (w_1 + ... + w_{n-1}), and both close the strict separation
inequalities: the closure only adds boundary slices of measure zero, so
volumes and centroids are unchanged while vertex enumeration gets a
compact polytope to work on.

Everything downstream of construction is exact: vertices are solved as
rational intersections of constraint boundaries, the polytope is cut into
simplices by recursive apex coning, and volumes / first moments come from
edge-matrix determinants. The only floating point in this module sits in
the Monte Carlo estimator and in a pre-filter that discards clearly
infeasible intersection points before their exact feasibility check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .exact_math import RatMatrix, determinant, rank
from .game_core import WeightedGame, coalition_str

__all__ = [
    "Constraint",
    "DegenerateGeometryError",
    "EstimateInconclusiveError",
    "HPolytope",
    "Simplex",
    "Vertex",
    "build_representation_polytope",
    "build_weight_polytope",
    "centroid",
    "enumerate_vertices",
    "estimate_centroid_mc",
    "moments",
    "polytope_to_json",
    "triangulate",
    "volume",
]


class DegenerateGeometryError(ValueError):
    """Centroid requested for an empty or zero-volume polytope."""


class EstimateInconclusiveError(RuntimeError):
    """Monte Carlo run accepted too few samples to say anything."""


@dataclass(frozen=True)
class Constraint:
    """One closed halfspace a . x <= b."""

    a: tuple[Fraction, ...]
    b: Fraction
    label: str = ""


@dataclass(frozen=True)
class Vertex:
    """Extreme point with the indices of the constraints tight at it."""

    coords: tuple[Fraction, ...]
    active: frozenset[int]


@dataclass(frozen=True)
class Simplex:
    """Affinely independent vertex tuple; a cell of a triangulation."""

    vertices: tuple[Vertex, ...]


class HPolytope:
    """Bounded intersection of closed halfspaces in Q^dim.

    Instances are immutable once built; derived data (vertices,
    triangulations, volume, moments) is computed on demand and memoized
    on the instance.
    """

    __slots__ = ("dim", "constraints", "_cache")

    def __init__(self, dim: int, constraints: Iterable[Constraint]) -> None:
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        cons = tuple(constraints)
        for c in cons:
            if len(c.a) != dim:
                raise ValueError("constraint arity does not match dimension")
        self.dim = dim
        self.constraints = cons
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"HPolytope(dim={self.dim}, constraints={len(self.constraints)})"


def _frac_tuple(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def build_weight_polytope(game: WeightedGame) -> HPolytope:
    """Normalized weight vectors compatible with the game's structure.

    Chart coordinates are (w_1 .. w_{n-1}); consumers recover the last
    weight from the unit sum. One constraint per (minimal winning,
    maximal losing) pair demands the winner to outweigh the loser, with
    the strict inequality closed.
    """
    n = game.n
    d = n - 1
    cons: list[Constraint] = []
    for i in range(1, n):
        row = [Fraction(0)] * d
        row[i - 1] = Fraction(-1)
        cons.append(Constraint(tuple(row), Fraction(0), f"w{i} >= 0"))
    cons.append(Constraint((Fraction(1),) * d, Fraction(1), f"w{n} >= 0"))
    for s in sorted(game.minimal_winning):
        for t in sorted(game.maximal_losing):
            s_last = s >> (n - 1) & 1
            t_last = t >> (n - 1) & 1
            row = tuple(
                Fraction((t >> i & 1) - (s >> i & 1) - t_last + s_last)
                for i in range(d)
            )
            label = f"w({coalition_str(s)}) >= w({coalition_str(t)})"
            cons.append(Constraint(row, Fraction(s_last - t_last), label))
    return HPolytope(d, cons)


def build_representation_polytope(game: WeightedGame) -> HPolytope:
    """Normalized (quota, weights) pairs that represent the game.

    Coordinates are (q, w_1 .. w_{n-1}). Minimal winning coalitions must
    reach q, maximal losing ones must not exceed it (strictness closed),
    and 0 <= q <= 1 bounds the quota.
    """
    n = game.n
    d = n
    zero = Fraction(0)
    one = Fraction(1)
    cons: list[Constraint] = []
    cons.append(Constraint((-one,) + (zero,) * (n - 1), zero, "q >= 0"))
    cons.append(Constraint((one,) + (zero,) * (n - 1), one, "q <= 1"))
    for i in range(1, n):
        row = [zero] * d
        row[i] = -one
        cons.append(Constraint(tuple(row), zero, f"w{i} >= 0"))
    cons.append(Constraint((zero,) + (one,) * (n - 1), one, f"w{n} >= 0"))
    for s in sorted(game.minimal_winning):
        s_last = s >> (n - 1) & 1
        row = (one,) + tuple(
            Fraction(s_last - (s >> i & 1)) for i in range(n - 1)
        )
        cons.append(
            Constraint(row, Fraction(s_last), f"w({coalition_str(s)}) >= q")
        )
    for t in sorted(game.maximal_losing):
        t_last = t >> (n - 1) & 1
        row = (-one,) + tuple(
            Fraction((t >> i & 1) - t_last) for i in range(n - 1)
        )
        cons.append(
            Constraint(row, Fraction(-t_last), f"w({coalition_str(t)}) <= q")
        )
    return HPolytope(d, cons)


# -- vertex enumeration -------------------------------------------------

def _integer_rows(constraints: Sequence[Constraint]) -> list[tuple[tuple[int, ...], int]]:
    """Rescale each constraint to a primitive integer row (a, b)."""
    rows = []
    for con in constraints:
        den = lcm(con.b.denominator, *(c.denominator for c in con.a))
        a = tuple(int(c * den) for c in con.a)
        b = int(con.b * den)
        g = 0
        for c in a:
            g = gcd(g, c)
        g = gcd(g, b)
        if g > 1:
            a = tuple(c // g for c in a)
            b //= g
        rows.append((a, b))
    return rows


def _preprocess(rows: Iterable[tuple[tuple[int, ...], int]]):
    """Drop trivial constants, exact duplicates and dominated twins.

    Two constraints with the same primitive normal differ only in b; the
    smaller b implies the larger. Returns None when a constant constraint
    is unsatisfiable (empty polytope).
    """
    best: dict[tuple[int, ...], int] = {}
    order: list[tuple[int, ...]] = []
    for a, b in rows:
        if not any(a):
            if b < 0:
                return None
            continue
        if a not in best:
            order.append(a)
            best[a] = b
        elif b < best[a]:
            best[a] = b
    return [(a, best[a]) for a in order]


def _solve_echelon(ech: list[list[int]], pivots: list[int], d: int):
    """Back-substitute an integer echelon system with d distinct pivots."""
    x: list[Fraction] = [Fraction(0)] * d
    for idx in reversed(range(d)):
        row = ech[idx]
        pc = pivots[idx]
        s = Fraction(row[d])
        for t in range(d):
            if t != pc and row[t]:
                s -= row[t] * x[t]
        x[pc] = s / row[pc]
    den = 1
    for v in x:
        den = lcm(den, v.denominator)
    return tuple(int(v * den) for v in x), den


def _basis_solutions(rows: list[tuple[tuple[int, ...], int]], d: int) -> set:
    """Solutions of every independent d-subset of boundaries.

    A prefix recursion shares elimination work between subsets and prunes
    dependent rows early; dependent prefixes can never become a
    nonsingular square system. Solutions come back as primitive
    (numerators, denominator) pairs with a positive denominator.
    """
    m = len(rows)
    sols: set[tuple[tuple[int, ...], int]] = set()
    ech: list[list[int]] = []
    pivots: list[int] = []

    def reduce_row(a: tuple[int, ...], b: int) -> list[int]:
        r = list(a) + [b]
        for prow, pc in zip(ech, pivots):
            if r[pc]:
                f, q = prow[pc], r[pc]
                for t in range(d + 1):
                    r[t] = r[t] * f - prow[t] * q
        g = 0
        for t in range(d + 1):
            g = gcd(g, r[t])
        if g > 1:
            for t in range(d + 1):
                r[t] //= g
        return r

    def recurse(start: int, depth: int) -> None:
        if depth == d:
            sols.add(_solve_echelon(ech, pivots, d))
            return
        for j in range(start, m - (d - depth) + 1):
            r = reduce_row(*rows[j])
            pc = -1
            for t in range(d):
                if r[t]:
                    pc = t
                    break
            if pc < 0:
                continue
            ech.append(r)
            pivots.append(pc)
            recurse(j + 1, depth + 1)
            ech.pop()
            pivots.pop()

    recurse(0, 0)
    return sols


def _filter_feasible(rows: list[tuple[tuple[int, ...], int]], candidates: set) -> list:
    """Keep candidate points satisfying every constraint, exactly.

    A vectorized float pass rejects points that violate some constraint
    by more than 1e-9 (conversion error is orders of magnitude smaller,
    so no feasible point is lost); survivors are confirmed with integer
    arithmetic.
    """
    cand = list(candidates)
    a_mat = np.array([list(a) for a, _ in rows], dtype=float)
    b_vec = np.array([b for _, b in rows], dtype=float)
    pts = np.array(
        [[num / den for num in nums] for nums, den in cand], dtype=float
    )
    slack = b_vec[None, :] - pts @ a_mat.T
    near = np.nonzero((slack >= -1e-9).all(axis=1))[0]
    out = []
    for idx in near:
        nums, den = cand[idx]
        ok = True
        for a, b in rows:
            acc = 0
            for coef, num in zip(a, nums):
                if coef:
                    acc += coef * num
            if acc > b * den:
                ok = False
                break
        if ok:
            out.append((nums, den))
    return out


def enumerate_vertices(poly: HPolytope) -> list[Vertex]:
    """All extreme points, sorted lexicographically by coordinates.

    Every d-subset of constraint boundaries is solved as an equality
    system; nonsingular, feasible solutions are the vertices. The active
    set of each vertex is recomputed against the polytope's full
    constraint list.
    """
    if "vertices" in poly._cache:
        return poly._cache["vertices"]
    d = poly.dim
    pre = _preprocess(_integer_rows(poly.constraints))
    verts: list[Vertex] = []
    if pre is None:
        pass
    elif d == 0:
        active = frozenset(
            i for i, con in enumerate(poly.constraints) if con.b == 0
        )
        verts = [Vertex((), active)]
    elif len(pre) >= d:
        feasible = _filter_feasible(pre, _basis_solutions(pre, d))
        for nums, den in feasible:
            coords = tuple(Fraction(num, den) for num in nums)
            active = frozenset(
                i
                for i, con in enumerate(poly.constraints)
                if sum((ca * x for ca, x in zip(con.a, coords)), Fraction(0)) == con.b
            )
            verts.append(Vertex(coords, active))
        verts.sort(key=lambda v: v.coords)
    poly._cache["vertices"] = verts
    return verts


# -- triangulation and exact integrals ----------------------------------

def _affine_dim(vertices: Sequence[Vertex]) -> int:
    if len(vertices) <= 1:
        return 0
    base = vertices[0].coords
    diffs = [
        [c - b for c, b in zip(v.coords, base)] for v in vertices[1:]
    ]
    return rank(RatMatrix.from_rows(diffs))


def _triangulate_face(face: tuple[Vertex, ...], k: int, apex_rule: str) -> list:
    # face is a k-dimensional face given by its vertices
    if k == 0:
        return [(face[0],)]
    if k == 1:
        pts = sorted(face, key=lambda v: v.coords)
        if len(pts) < 2:
            return []
        return [(pts[0], pts[-1])]
    pick = min if apex_rule == "lexmin" else max
    apex = pick(face, key=lambda v: v.coords)
    constraint_ids = sorted(set().union(*(v.active for v in face)))
    seen: set[frozenset] = set()
    cells = []
    for ci in constraint_ids:
        if ci in apex.active:
            continue
        sub = tuple(v for v in face if ci in v.active)
        if len(sub) < k:
            continue
        ident = frozenset(v.coords for v in sub)
        if ident in seen:
            continue
        if _affine_dim(sub) != k - 1:
            continue
        seen.add(ident)
        for cell in _triangulate_face(sub, k - 1, apex_rule):
            cells.append(cell + (apex,))
    return cells


def triangulate(
    poly: HPolytope,
    vertices: Sequence[Vertex] | None = None,
    apex_rule: str = "lexmin",
) -> list[Simplex]:
    """Cut the polytope into simplices with pairwise disjoint interiors.

    Recursive facet coning: the apex (lexicographically smallest vertex,
    or largest under apex_rule="lexmax") is coned over a triangulation of
    every facet not containing it. Facets are vertex sets tight on a
    common constraint whose affine dimension is one less than the face's;
    lower-dimensional tight sets are ignored.
    """
    if apex_rule not in ("lexmin", "lexmax"):
        raise ValueError("apex_rule must be 'lexmin' or 'lexmax'")
    key = ("simplices", apex_rule)
    cache_ok = vertices is None
    if cache_ok and key in poly._cache:
        return poly._cache[key]
    verts = list(enumerate_vertices(poly) if vertices is None else vertices)
    if not verts:
        cells: list[Simplex] = []
    elif poly.dim == 0:
        cells = [Simplex((verts[0],))]
    else:
        cells = [
            Simplex(c) for c in _triangulate_face(tuple(verts), poly.dim, apex_rule)
        ]
    if cache_ok:
        poly._cache[key] = cells
    return cells


def _simplex_volume(cell: Simplex) -> Fraction:
    pts = [v.coords for v in cell.vertices]
    d = len(pts) - 1
    if d == 0:
        return Fraction(1)
    rows = [[c - b for c, b in zip(p, pts[0])] for p in pts[1:]]
    return abs(determinant(RatMatrix.from_rows(rows))) / factorial(d)


def volume(poly: HPolytope) -> Fraction:
    """Exact volume; a single point (dim 0) has volume 1 by convention."""
    if "volume" in poly._cache:
        return poly._cache["volume"]
    verts = enumerate_vertices(poly)
    if not verts:
        vol = Fraction(0)
    elif poly.dim == 0:
        vol = Fraction(1)
    else:
        vol = sum((_simplex_volume(c) for c in triangulate(poly)), Fraction(0))
    poly._cache["volume"] = vol
    return vol


def moments(poly: HPolytope) -> tuple[Fraction, ...]:
    """Exact coordinate integrals over the polytope.

    On a simplex the integral of a linear function is its volume times
    the vertex average, so the triangulation makes this a finite sum.
    """
    if "moments" in poly._cache:
        return poly._cache["moments"]
    d = poly.dim
    totals = [Fraction(0)] * d
    for cell in triangulate(poly):
        vol = _simplex_volume(cell)
        if vol == 0:
            continue
        count = len(cell.vertices)
        for i in range(d):
            avg = sum((v.coords[i] for v in cell.vertices), Fraction(0)) / count
            totals[i] += vol * avg
    result = tuple(totals)
    poly._cache["moments"] = result
    return result


def centroid(poly: HPolytope) -> tuple[Fraction, ...]:
    """Exact barycenter (moments divided by volume)."""
    if poly.dim == 0:
        if not enumerate_vertices(poly):
            raise DegenerateGeometryError("empty polytope has no centroid")
        return ()
    vol = volume(poly)
    if vol == 0:
        raise DegenerateGeometryError(
            "zero-volume polytope has no well-defined centroid"
        )
    return tuple(m / vol for m in moments(poly))


# -- Monte Carlo cross-check --------------------------------------------

def _bounding_box(poly: HPolytope) -> list[tuple[Fraction, Fraction]]:
    """Interval bounds per coordinate, derived from the constraints.

    Repeated one-variable propagation: a constraint bounds x_i once every
    other term in it has a finite bound of the right sign. Game polytopes
    stabilize in two passes; anything still unbounded is an error.
    """
    d = poly.dim
    lo: list[Fraction | None] = [None] * d
    hi: list[Fraction | None] = [None] * d
    for _ in range(2 * d + 2):
        changed = False
        for con in poly.constraints:
            for i in range(d):
                ai = con.a[i]
                if ai == 0:
                    continue
                acc = Fraction(0)
                known = True
                for j in range(d):
                    if j == i:
                        continue
                    aj = con.a[j]
                    if aj == 0:
                        continue
                    bound = lo[j] if aj > 0 else hi[j]
                    if bound is None:
                        known = False
                        break
                    acc += aj * bound
                if not known:
                    continue
                val = (con.b - acc) / ai
                if ai > 0:
                    if hi[i] is None or val < hi[i]:
                        hi[i] = val
                        changed = True
                elif lo[i] is None or val > lo[i]:
                    lo[i] = val
                    changed = True
        if not changed:
            break
    if any(l is None or h is None for l, h in zip(lo, hi)):
        raise ValueError("constraints do not bound every coordinate")
    return list(zip(lo, hi))  # type: ignore[arg-type]


def _simplex_block(poly: HPolytope) -> tuple[tuple[int, ...], Fraction]:
    """Largest coordinate block provably confined to a scaled simplex.

    Returns (coordinate indices, scale s) such that the constraints imply
    x_i >= 0 for each member and sum over the block <= s. Empty when no
    such block exists. Sampling the block from the solid simplex instead
    of its bounding box multiplies rejection acceptance by about k!.
    """
    nonneg = set()
    for con in poly.constraints:
        support = [i for i, c in enumerate(con.a) if c != 0]
        if len(support) == 1 and con.a[support[0]] < 0 and con.b == 0:
            nonneg.add(support[0])
    best: tuple[tuple[int, ...], Fraction] = ((), Fraction(0))
    for con in poly.constraints:
        support = [i for i, c in enumerate(con.a) if c != 0]
        if len(support) < 2 or not set(support) <= nonneg:
            continue
        coef = con.a[support[0]]
        if coef <= 0 or any(con.a[i] != coef for i in support):
            continue
        scale = con.b / coef
        if scale > 0 and len(support) > len(best[0]):
            best = (tuple(support), scale)
    return best


def estimate_centroid_mc(
    poly: HPolytope, samples: int, seed: int
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Centroid estimate via seeded rejection sampling.

    Proposal region: any coordinate block the constraints confine to a
    simplex is drawn from that simplex (flat Dirichlet), the remaining
    coordinates from their bounding-box intervals. Returns (estimate,
    standard errors) per coordinate. Deterministic for a fixed seed.
    Raises EstimateInconclusiveError when fewer than two samples land
    inside the polytope, since one point admits no error estimate.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    d = poly.dim
    if d == 0:
        return (), ()
    box = _bounding_box(poly)
    if any(l > h for l, h in box):
        raise EstimateInconclusiveError("bounding box is empty")
    block, scale = _simplex_block(poly)
    free = [i for i in range(d) if i not in block]
    lo = np.array([float(box[i][0]) for i in free])
    hi = np.array([float(box[i][1]) for i in free])
    a_mat = np.array([[float(c) for c in con.a] for con in poly.constraints])
    b_vec = np.array([float(con.b) for con in poly.constraints])
    rng = np.random.default_rng(seed)
    kept = 0
    acc = np.zeros(d)
    acc_sq = np.zeros(d)
    remaining = samples
    while remaining:
        batch = min(remaining, 1 << 17)
        remaining -= batch
        pts = np.empty((batch, d))
        if free:
            pts[:, free] = rng.uniform(lo, hi, size=(batch, len(free)))
        if block:
            k = len(block)
            simplex = rng.dirichlet(np.ones(k + 1), size=batch)[:, :k]
            pts[:, block] = simplex * float(scale)
        inside = pts[(b_vec[None, :] - pts @ a_mat.T >= -1e-12).all(axis=1)]
        if len(inside):
            kept += len(inside)
            acc += inside.sum(axis=0)
            acc_sq += (inside**2).sum(axis=0)
    if kept < 2:
        raise EstimateInconclusiveError(
            f"only {kept} of {samples} samples landed inside the polytope"
        )
    mean = acc / kept
    var = np.maximum((acc_sq - kept * mean**2) / (kept - 1), 0.0)
    stderr = np.sqrt(var / kept)
    return tuple(float(v) for v in mean), tuple(float(v) for v in stderr)


def polytope_to_json(poly: HPolytope) -> dict:
    """Schema-stable dump: dim, constraints, vertices, volume, moments."""
    return {
        "dim": poly.dim,
        "constraints": [
            {"a": [str(c) for c in con.a], "b": str(con.b), "label": con.label}
            for con in poly.constraints
        ],
        "vertices": [
            [str(c) for c in v.coords] for v in enumerate_vertices(poly)
        ],
        "volume": str(volume(poly)),
        "moments": [str(m) for m in moments(poly)],
    }
