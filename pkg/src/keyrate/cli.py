"""Command-line interface: region sweeps, games, equilibrium maps, bounds.

Subcommands: region, game, ne-map, dm-bound.  Flags mirror the channel
symbols (--a1 for the gain into receiver 1, --p1 for transmit power 1).
An optional JSON config file supplies any flag's value; explicit flags
win.  Exit codes: 0 success, 1 domain/validation error, 2 I/O error.

Output files are deterministic: identical configurations produce
byte-identical bytes.  Rates in CSVs carry 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .discrete import PureStrategy, load_factored_pmf, inner_bound_report
from .errors import DomainError, ResourceError
from .game import best_split_response, game_report, ne_map, noise_corner_game, pure_ne
from .gaussian import (
    PROFILES,
    ChannelParams,
    RegionSample,
    hull_contains,
    region_hull,
    sweep_region,
)

_FW, _BW = PureStrategy.FW, PureStrategy.BW

REGION_COLUMNS = (
    "scheme",
    "rho1",
    "beta1",
    "beta2",
    "lambda1",
    "lambda2",
    "s1",
    "s2",
    "r1",
    "r2",
    "on_frontier",
)

NE_MAP_COLUMNS = (
    "alpha1",
    "alpha2",
    "ne_fwfw",
    "ne_fwbw",
    "ne_bwfw",
    "ne_bwbw",
    "analytic_class",
    "agree",
)

class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this tool reserves 2 for I/O."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(f"error: {message}") from None


def thread_cap() -> int:
    """Parallelism cap from KEYRATE_THREADS (0 = auto). Sweeps are
    vectorized single-threaded, so any cap is honored; the value is
    validated so misconfiguration fails loudly."""
    raw = os.environ.get("KEYRATE_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"KEYRATE_THREADS must be an integer >= 0, got {raw!r}")
    if cap < 0:
        raise DomainError(f"KEYRATE_THREADS must be >= 0, got {cap}")
    return cap


def _fmt(value) -> str:
    """12-significant-digit CSV cell; blank for missing."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    v = float(value)
    if v != v:  # NaN marks an unused parameter
        return ""
    return "%.12g" % (v + 0.0)  # +0.0 normalizes negative zero


def _write_lines(path: Path, lines) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def _region_rows(sample: RegionSample):
    n = sample.n_points
    cols = []
    for name in REGION_COLUMNS:
        if name == "scheme":
            cols.append([sample.scheme] * n)
        elif name == "r1":
            cols.append([_fmt(v) for v in sample.r1])
        elif name == "r2":
            cols.append([_fmt(v) for v in sample.r2])
        elif name == "on_frontier":
            cols.append(["1" if v else "0" for v in sample.frontier_mask])
        elif name in sample.params:
            cols.append([_fmt(v) for v in sample.params[name]])
        else:
            cols.append([""] * n)
    return zip(*cols)


def _write_region_csv(path: Path, sample: RegionSample, frontier_only: bool = False) -> None:
    header = ",".join(REGION_COLUMNS)
    if frontier_only:
        keep = sample.frontier_mask
        rows = (row for row, flag in zip(_region_rows(sample), keep) if flag)
    else:
        rows = _region_rows(sample)
    _write_lines(path, [header] + [",".join(row) for row in rows])


def _write_hull_csv(path: Path, hull: np.ndarray) -> None:
    lines = ["r1,r2"] + [f"{_fmt(v[0])},{_fmt(v[1])}" for v in hull]
    _write_lines(path, lines)


def _region_json_columns(sample: RegionSample, frontier_only: bool = False) -> dict:
    idx = np.flatnonzero(sample.frontier_mask) if frontier_only else np.arange(sample.n_points)
    columns: dict[str, list] = {"scheme": [sample.scheme] * int(idx.size)}
    for name in ("rho1", "beta1", "beta2", "lambda1", "lambda2", "s1", "s2"):
        if name in sample.params:
            values = np.asarray(sample.params[name])[idx]
            columns[name] = [v if isinstance(v, str) else float(v) for v in values]
    columns["r1"] = [float(v) for v in sample.r1[idx]]
    columns["r2"] = [float(v) for v in sample.r2[idx]]
    columns["on_frontier"] = [bool(v) for v in sample.frontier_mask[idx]]
    return columns


def _write_json(path: Path, payload) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _require(merged: dict, keys) -> None:
    missing = [k for k in keys if merged.get(k) is None]
    if missing:
        raise DomainError(
            "missing required parameter(s): " + ", ".join(f"--{k}" for k in missing)
        )


def _channel(merged: dict) -> ChannelParams:
    _require(merged, ("a1", "a2", "p1", "p2"))
    return ChannelParams(
        alpha1=merged["a1"], alpha2=merged["a2"], p1=merged["p1"], p2=merged["p2"]
    )


def _merge(args: argparse.Namespace, defaults: dict) -> dict:
    """defaults < config file < explicit flags."""
    merged = dict(defaults)
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            with open(config_path, "r", encoding="utf-8") as fh:
                loaded = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"config file {config_path} is not valid JSON: {exc}")
        if not isinstance(loaded, dict):
            raise DomainError(f"config file {config_path} must hold a JSON object")
        unknown = [k for k in loaded if k not in defaults]
        if unknown:
            raise DomainError(f"config file {config_path} has unknown keys {unknown}")
        merged.update(loaded)
    for key in defaults:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _schemes_of(scheme: str) -> list[str]:
    if scheme == "all":
        return ["pure", "ts", "an"]
    if scheme in ("pure", "ts", "an"):
        return [scheme]
    raise DomainError(f"scheme must be pure, ts, an or all, got {scheme!r}")


def cmd_region(args: argparse.Namespace) -> int:
    defaults = {
        "a1": None, "a2": None, "p1": None, "p2": None,
        "scheme": "all",
        "rho_grid": 41, "beta_grid": 41, "lambda_grid": 41,
        "beta1": None, "beta2": None,
        "max_evals": 10_000_000,
        "union_hull": False,
        "out": ".", "format": "csv",
    }
    merged = _merge(args, defaults)
    ch = _channel(merged)
    schemes = _schemes_of(merged["scheme"])
    out_dir = Path(merged["out"])
    os.makedirs(out_dir, exist_ok=True)
    fmt = merged["format"]
    if fmt not in ("csv", "json"):
        raise DomainError(f"format must be csv or json, got {fmt!r}")

    samples: dict[str, RegionSample] = {}
    for scheme in schemes:
        sample = sweep_region(
            ch,
            scheme,
            rho_grid=int(merged["rho_grid"]),
            beta_grid=int(merged["beta_grid"]),
            lambda_grid=int(merged["lambda_grid"]),
            beta1=merged["beta1"],
            beta2=merged["beta2"],
            max_evals=int(merged["max_evals"]),
        )
        samples[scheme] = sample
        if fmt == "csv":
            _write_region_csv(out_dir / f"{scheme}_points.csv", sample)
            _write_region_csv(out_dir / f"{scheme}_frontier.csv", sample, frontier_only=True)
            _write_hull_csv(out_dir / f"{scheme}_hull.csv", sample.hull)
        else:
            _write_json(out_dir / f"{scheme}_points.json", _region_json_columns(sample))
            _write_json(
                out_dir / f"{scheme}_frontier.json",
                _region_json_columns(sample, frontier_only=True),
            )
            _write_json(
                out_dir / f"{scheme}_hull.json",
                {"vertices": [[float(v[0]), float(v[1])] for v in sample.hull]},
            )
        max_r1, max_r2 = sample.max_rates
        print(
            f"scheme={scheme} points={sample.n_points} "
            f"frontier={int(sample.frontier_mask.sum())} "
            f"max_r1={_fmt(max_r1)} max_r2={_fmt(max_r2)}"
        )

    if len(schemes) == 3:
        an_ts = hull_contains(samples["an"].hull, samples["ts"].hull)
        ts_pure = hull_contains(samples["ts"].hull, samples["pure"].hull)
        an_pure = hull_contains(samples["an"].hull, samples["pure"].hull)
        print(
            f"containment an>=ts={an_ts} ts>=pure={ts_pure} an>=pure={an_pure}"
        )
        if merged["union_hull"]:
            r1 = np.concatenate([samples[s].r1 for s in schemes])
            r2 = np.concatenate([samples[s].r2 for s in schemes])
            union = region_hull(r1, r2)
            if fmt == "csv":
                _write_hull_csv(out_dir / "union_hull.csv", union)
            else:
                _write_json(
                    out_dir / "union_hull.json",
                    {"vertices": [[float(v[0]), float(v[1])] for v in union]},
                )
            print(f"union_hull_vertices={len(union)}")
    return 0


def cmd_game(args: argparse.Namespace) -> int:
    defaults = {
        "a1": None, "a2": None, "p1": None, "p2": None,
        "beta1": 1.0, "beta2": 1.0,
        "tol": 1e-9,
        "gamma2": False, "br_grid": 1001,
        "out": None,
    }
    merged = _merge(args, defaults)
    ch = _channel(merged)
    game, report = game_report(ch, merged["beta1"], merged["beta2"], merged["tol"])
    payload = {
        "channel": {"alpha1": ch.alpha1, "alpha2": ch.alpha2, "p1": ch.p1, "p2": ch.p2},
        "beta1": game.beta1,
        "beta2": game.beta2,
        "payoffs": game.payoff_table(),
        "margins": {
            f"{s1.value},{s2.value}": list(game.margins[(s1, s2)])
            for s1, s2 in PROFILES
        },
        **report.as_dict(),
    }
    if merged["gamma2"]:
        corner = noise_corner_game(ch)
        corner_eq = pure_ne(corner, merged["tol"])
        responses = []
        for player in (1, 2):
            for lam_other in (0.0, 0.25, 0.5, 0.75, 1.0):
                br = best_split_response(
                    ch, player, lam_other, int(merged["br_grid"]), merged["tol"]
                )
                responses.append(
                    {
                        "player": player,
                        "lambda_other": lam_other,
                        "maximizers": [float(v) for v in br.maximizers],
                        "max_value": br.max_value,
                        "endpoint_attained": br.endpoint_attained,
                    }
                )
        payload["noise_game"] = {
            "corner_payoffs": corner.payoff_table(),
            "corner_equilibria": [f"{s1.value},{s2.value}" for s1, s2 in corner_eq],
            "matches_matrix_game": set(corner_eq) == set(report.equilibria),
            "best_responses": responses,
        }
    text = json.dumps(payload, indent=2, sort_keys=True)
    if merged["out"]:
        _write_lines(Path(merged["out"]), [text])
    else:
        print(text)
    return 0


def cmd_ne_map(args: argparse.Namespace) -> int:
    defaults = {"p": 1.0, "grid": 101, "tol": 1e-9, "out": "ne_map.csv", "format": "csv"}
    merged = _merge(args, defaults)
    result = ne_map(merged["p"], int(merged["grid"]), merged["tol"])
    rows = []
    for a1, a2, report in result.rows():
        flags = {
            key: ("1" if prof in set(report.equilibria) else "0")
            for key, prof in zip(
                ("ne_fwfw", "ne_fwbw", "ne_bwfw", "ne_bwbw"),
                ((_FW, _FW), (_FW, _BW), (_BW, _FW), (_BW, _BW)),
            )
        }
        rows.append(
            [
                _fmt(a1),
                _fmt(a2),
                flags["ne_fwfw"],
                flags["ne_fwbw"],
                flags["ne_bwfw"],
                flags["ne_bwbw"],
                report.conditions.classification,
                "1" if report.agree else "0",
            ]
        )
    if merged["format"] == "json":
        payload = [dict(zip(NE_MAP_COLUMNS, row)) for row in rows]
        _write_json(Path(merged["out"]), payload)
    else:
        _write_lines(
            Path(merged["out"]),
            [",".join(NE_MAP_COLUMNS)] + [",".join(row) for row in rows],
        )
    print(f"cells={len(rows)} disagreements={result.disagreements}")
    return 0


def cmd_dm_bound(args: argparse.Namespace) -> int:
    defaults = {"input": None, "out": None, "max_entries": 10_000_000}
    merged = _merge(args, defaults)
    _require(merged, ("input",))
    path = merged["input"]
    if not os.path.exists(path):
        raise OSError(f"input file not found: {path}")
    f = load_factored_pmf(path)
    report = inner_bound_report(f, int(merged["max_entries"]))
    payload = {
        "r1": report.rates.r1,
        "r2": report.rates.r2,
        "forward_rate_1": report.forward_rate_1,
        "backward_rate_1": report.backward_rate_1,
        "forward_rate_2": report.forward_rate_2,
        "backward_rate_2": report.backward_rate_2,
        "terms": report.terms(),
        "forward_only": report.forward_only,
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    if merged["out"]:
        _write_lines(Path(merged["out"]), [text])
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="keyrate",
        description="Key-rate regions and allocation games for two interfering pairs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    region = sub.add_parser(
        "region", help="sweep a transmission scheme and emit points/frontier/hull"
    )
    region.add_argument("--scheme", choices=["pure", "ts", "an", "all"], default=None)
    region.add_argument("--a1", type=float, default=None, help="cross gain into receiver 1")
    region.add_argument("--a2", type=float, default=None, help="cross gain into receiver 2")
    region.add_argument("--p1", type=float, default=None, help="transmit power 1 (SNR units)")
    region.add_argument("--p2", type=float, default=None, help="transmit power 2 (SNR units)")
    region.add_argument("--rho-grid", dest="rho_grid", type=int, default=None)
    region.add_argument("--beta-grid", dest="beta_grid", type=int, default=None)
    region.add_argument("--lambda-grid", dest="lambda_grid", type=int, default=None)
    region.add_argument("--beta1", type=float, default=None, help="pin beta1 instead of sweeping")
    region.add_argument("--beta2", type=float, default=None, help="pin beta2 instead of sweeping")
    region.add_argument("--max-evals", dest="max_evals", type=int, default=None)
    region.add_argument("--union-hull", dest="union_hull", action="store_true", default=None)
    region.add_argument("--out", default=None, help="output directory")
    region.add_argument("--format", choices=["csv", "json"], default=None)
    region.add_argument("--config", default=None, help="JSON config mirroring the flags")
    region.set_defaults(func=cmd_region)

    game = sub.add_parser("game", help="2x2 strategy game: payoffs, equilibria, conditions")
    for flag in ("--a1", "--a2", "--p1", "--p2", "--beta1", "--beta2", "--tol"):
        game.add_argument(flag, type=float, default=None)
    game.add_argument("--gamma2", action="store_true", default=None,
                      help="also analyze the continuous noise-splitting game")
    game.add_argument("--br-grid", dest="br_grid", type=int, default=None)
    game.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    game.add_argument("--config", default=None)
    game.set_defaults(func=cmd_game)

    nemap = sub.add_parser("ne-map", help="equilibrium classification over the gain square")
    nemap.add_argument("--p", type=float, default=None, help="common transmit power")
    nemap.add_argument("--grid", type=int, default=None, help="points per gain axis")
    nemap.add_argument("--tol", type=float, default=None)
    nemap.add_argument("--out", default=None)
    nemap.add_argument("--format", choices=["csv", "json"], default=None)
    nemap.add_argument("--config", default=None)
    nemap.set_defaults(func=cmd_ne_map)

    dm = sub.add_parser("dm-bound", help="evaluate the factored-source bound from a JSON file")
    dm.add_argument("input", nargs="?", default=None, help="factored-pmf JSON file")
    dm.add_argument("--out", default=None)
    dm.add_argument("--max-entries", dest="max_entries", type=int, default=None)
    dm.add_argument("--config", default=None)
    dm.set_defaults(func=cmd_dm_bound)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        thread_cap()
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 1
        return 0 if exc.code is None else int(exc.code)
    except (DomainError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
