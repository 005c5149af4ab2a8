"""Command line front end.

Subcommands: `index` (power indices), `polytope` (geometry inspection),
`intreps` (integer grids), `table` (the built-in n <= 4 catalogue).
Exit codes: 0 on success, 2 for malformed input, 3 for requests beyond
the supported scale.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .canonical_games import canonical_games
from .exact_math import decimal_str
from .game_core import GameFormatError, parse_game
from .indices import (
    EXACT_REP_MAX_VOTERS,
    EXACT_WEIGHT_MAX_VOTERS,
    KIND_AVG_REP,
    KIND_AVG_WEIGHT,
    KIND_SSI,
    ScaleExceededError,
    average_representation_index,
    average_weight_index,
    check_axioms,
    dummy_revealing,
    index_to_json,
    shapley_shubik,
)
from .integer_reps import (
    convergence_experiment,
    enumerate_integer_feasible_weights,
    enumerate_integer_representations,
)
from .polytope import (
    EstimateInconclusiveError,
    build_representation_polytope,
    build_weight_polytope,
    centroid,
    enumerate_vertices,
    estimate_centroid_mc,
    moments,
    polytope_to_json,
    volume,
)

PRECISION_ENV = "POWERPOLY_PRECISION"

_BASE_INDICES = {
    KIND_SSI: shapley_shubik,
    KIND_AVG_WEIGHT: average_weight_index,
    KIND_AVG_REP: average_representation_index,
}

# guaranteed-fast exact scale; one voter more is attempted with a warning
_GUARANTEED_WEIGHT_VOTERS = 5
_GUARANTEED_REP_VOTERS = 4


def _precision(args) -> int:
    if getattr(args, "precision", None) is not None:
        if args.precision < 0:
            raise GameFormatError("precision must be nonnegative")
        return args.precision
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return 6
    try:
        value = int(raw)
    except ValueError:
        raise GameFormatError(f"{PRECISION_ENV} must be an integer") from None
    if value < 0:
        raise GameFormatError(f"{PRECISION_ENV} must be nonnegative")
    return value


def _values_line(values) -> str:
    return " ".join(str(v) for v in values)


def _emit_json(doc) -> None:
    print(json.dumps(doc, indent=2))


def _cmd_index(args) -> int:
    game = parse_game(args.game)
    if args.dummy_revealing:
        index = dummy_revealing(args.kind, game)
    else:
        index = _BASE_INDICES[args.kind](game)
    axioms = check_axioms(game, index) if args.axioms else None
    if args.json:
        _emit_json(index_to_json(game, index, axioms, _precision(args)))
        return 0
    print(_values_line(index.values))
    if index.avg_quota is not None:
        print(f"avg quota: {index.avg_quota}")
    if axioms is not None:
        print(f"symmetric: {'yes' if axioms.symmetric else 'no'}")
        print(f"positive: {'yes' if axioms.positive else 'no'}")
        print(f"efficient: {'yes' if axioms.efficient else 'no'}")
        print(f"dummy property: {'yes' if axioms.dummy_property else 'no'}")
        print(
            "representation compatible: "
            f"{'yes' if axioms.representation_compatible else 'no'}"
        )
    return 0


def _check_polytope_scale(kind: str, n: int, exact_needed: bool) -> None:
    cap = EXACT_WEIGHT_MAX_VOTERS if kind == "weight" else EXACT_REP_MAX_VOTERS
    soft = (
        _GUARANTEED_WEIGHT_VOTERS
        if kind == "weight"
        else _GUARANTEED_REP_VOTERS
    )
    if not exact_needed:
        return
    if n > cap:
        raise ScaleExceededError(
            f"exact {kind} polytope pipeline supports at most {cap} voters; "
            f"use --estimate-centroid-mc instead"
        )
    if n > soft:
        print(
            f"note: {n} voters is beyond the guaranteed exact scale "
            f"({soft}); this may take a while",
            file=sys.stderr,
        )


def _cmd_polytope(args) -> int:
    game = parse_game(args.game)
    build = (
        build_weight_polytope if args.kind == "weight"
        else build_representation_polytope
    )
    wants_exact = (
        args.vertices or args.volume or args.moments or args.json
        or not args.estimate_centroid_mc
    )
    _check_polytope_scale(args.kind, game.n, wants_exact)
    poly = build(game)
    if args.estimate_centroid_mc and args.seed is None:
        print("error: --estimate-centroid-mc requires --seed", file=sys.stderr)
        return 2
    if args.json:
        doc = polytope_to_json(poly)
        if args.estimate_centroid_mc:
            est, err = estimate_centroid_mc(poly, args.samples, args.seed)
            doc["mc_centroid"] = list(est)
            doc["mc_stderr"] = list(err)
            doc["samples"] = args.samples
            doc["seed"] = args.seed
        _emit_json(doc)
        return 0
    precision = _precision(args)
    printed = False
    if args.vertices:
        verts = enumerate_vertices(poly)
        print(" ".join("(" + ", ".join(str(c) for c in v.coords) + ")" for v in verts))
        printed = True
    if args.volume:
        print(volume(poly))
        printed = True
    if args.moments:
        print(_values_line(moments(poly)))
        printed = True
    if args.estimate_centroid_mc:
        est, err = estimate_centroid_mc(poly, args.samples, args.seed)
        print("mc centroid: " + " ".join(f"{v:.{precision}f}" for v in est))
        print("mc stderr: " + " ".join(f"{v:.{precision}f}" for v in err))
        printed = True
    if not printed:
        verts = enumerate_vertices(poly)
        print(f"dim: {poly.dim}")
        print(f"vertices: {len(verts)}")
        print(f"volume: {volume(poly)}")
        print(f"centroid: {_values_line(centroid(poly))}")
    return 0


def _intreps_doc(game, summary, precision) -> dict:
    return {
        "game": game.to_spec(),
        "total": summary.total,
        "with_quota": summary.with_quota,
        "count": summary.count,
        "average": [str(v) for v in summary.average],
        "decimals": [decimal_str(v, precision) for v in summary.average],
    }


def _cmd_intreps(args) -> int:
    game = parse_game(args.game)
    precision = _precision(args)
    if args.convergence:
        try:
            totals = [int(tok) for tok in args.convergence.split(",") if tok.strip()]
        except ValueError:
            raise GameFormatError(
                f"bad totals list: {args.convergence!r}"
            ) from None
        if not totals:
            raise GameFormatError("empty totals list")
        table = convergence_experiment(game, totals, with_quota=args.with_quota)
        if args.json:
            _emit_json(
                {
                    "game": game.to_spec(),
                    "with_quota": args.with_quota,
                    "rows": [
                        {
                            **_intreps_doc(game, row.summary, precision),
                            "l1_to_limit": (
                                None
                                if row.l1_to_limit is None
                                else str(row.l1_to_limit)
                            ),
                        }
                        for row in table.rows
                    ],
                    "limit": index_to_json(game, table.limit, None, precision),
                }
            )
            return 0
        header = ["total", "count"]
        header += [f"avg_{i}" for i in range(1, game.n + 1)]
        header.append("l1_to_limit")
        print(",".join(header))
        for row in table.rows:
            cells = [str(row.summary.total), str(row.summary.count)]
            if row.summary.count:
                cells += [
                    decimal_str(v, precision) for v in row.summary.average
                ]
            else:
                cells += [""] * game.n
            cells.append(
                decimal_str(row.l1_to_limit, precision)
                if row.l1_to_limit is not None
                else ""
            )
            print(",".join(cells))
        print(f"# limit: {_values_line(table.limit.values)}")
        return 0
    if args.total is None:
        raise GameFormatError("either --total or --convergence is required")
    scan = (
        enumerate_integer_representations
        if args.with_quota
        else enumerate_integer_feasible_weights
    )
    summary = scan(game, args.total)
    if args.json:
        _emit_json(_intreps_doc(game, summary, precision))
        return 0
    print(f"count: {summary.count}")
    if summary.count:
        print(f"average: {_values_line(summary.average)}")
        print(
            "decimals: "
            + " ".join(decimal_str(v, precision) for v in summary.average)
        )
    return 0


def _cmd_table(args) -> int:
    if args.max_voters < 1 or args.max_voters > 4:
        print(
            "error: the built-in catalogue covers 1 to 4 voters",
            file=sys.stderr,
        )
        return 3
    precision = _precision(args)
    rows = []
    for spec in canonical_games(args.max_voters):
        game = parse_game(spec)
        aw = average_weight_index(game)
        ar = average_representation_index(game)
        rows.append((spec, game, aw, ar))
    if args.json:
        _emit_json(
            {
                "max_voters": args.max_voters,
                "rows": [
                    {
                        "game": spec,
                        "avg_weight": {
                            "values": [str(v) for v in aw.values],
                            "decimals": [
                                decimal_str(v, precision) for v in aw.values
                            ],
                        },
                        "avg_rep": {
                            "values": [str(v) for v in ar.values],
                            "decimals": [
                                decimal_str(v, precision) for v in ar.values
                            ],
                            "avg_quota": str(ar.avg_quota),
                        },
                    }
                    for spec, _game, aw, ar in rows
                ],
            }
        )
        return 0
    for spec, _game, aw, ar in rows:
        print(
            f"{spec} | avg-weight {_values_line(aw.values)}"
            f" | avg-rep {_values_line(ar.values)}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powerpoly",
        description="Exact power indices for weighted majority games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="compute a power index")
    p_index.add_argument("--game", required=True, help='game spec "[q; w1, ..., wn]"')
    p_index.add_argument(
        "--kind",
        required=True,
        choices=[KIND_SSI, KIND_AVG_WEIGHT, KIND_AVG_REP],
    )
    p_index.add_argument("--dummy-revealing", action="store_true")
    p_index.add_argument("--axioms", action="store_true")
    p_index.add_argument("--json", action="store_true")
    p_index.add_argument("--precision", type=int)
    p_index.set_defaults(func=_cmd_index)

    p_poly = sub.add_parser("polytope", help="inspect a game polytope")
    p_poly.add_argument("--game", required=True)
    p_poly.add_argument("--kind", required=True, choices=["weight", "rep"])
    p_poly.add_argument("--vertices", action="store_true")
    p_poly.add_argument("--volume", action="store_true")
    p_poly.add_argument("--moments", action="store_true")
    p_poly.add_argument("--estimate-centroid-mc", action="store_true")
    p_poly.add_argument("--samples", type=int, default=100_000)
    p_poly.add_argument("--seed", type=int)
    p_poly.add_argument("--json", action="store_true")
    p_poly.add_argument("--precision", type=int)
    p_poly.set_defaults(func=_cmd_polytope)

    p_int = sub.add_parser("intreps", help="scan integer weight grids")
    p_int.add_argument("--game", required=True)
    p_int.add_argument("--total", type=int)
    p_int.add_argument("--with-quota", action="store_true")
    p_int.add_argument(
        "--convergence", metavar="T1,T2,...", help="ascending totals"
    )
    p_int.add_argument("--json", action="store_true")
    p_int.add_argument("--precision", type=int)
    p_int.set_defaults(func=_cmd_intreps)

    p_table = sub.add_parser("table", help="print the built-in catalogue")
    p_table.add_argument("--max-voters", type=int, default=4)
    p_table.add_argument("--json", action="store_true")
    p_table.add_argument("--precision", type=int)
    p_table.set_defaults(func=_cmd_table)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GameFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ScaleExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except EstimateInconclusiveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
