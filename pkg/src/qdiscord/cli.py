"""Command-line harness: single-state measures, family sweeps, random and
near-boundary sampling, bound verification, and crossover location.

Exit codes: 0 success, 1 usage error, 2 validation error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import bounds, io as qio
from .measures import DEFAULT_OPT, OptimizerConfig, discord_numeric
from .states import Family, ParamOutOfRange, StateError, make_family

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3

PIMPLE_SL = bounds.PIMPLE_SL


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="qdiscord", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, optimizer=True, output=True):
        if optimizer:
            sp.add_argument("--grid-theta", type=int, default=60)
            sp.add_argument("--grid-phi", type=int, default=120)
            sp.add_argument("--restarts", type=int, default=3)
        if output:
            sp.add_argument("--out", dest="output_path", default=None)
            sp.add_argument("--format", choices=["csv", "json"], default=None)

    def add_family(sp, required=False):
        sp.add_argument(
            "--family",
            choices=["werner", "alpha", "beta", "twoparam", "pure"],
            required=required,
        )
        sp.add_argument("--param", type=float, default=None)
        sp.add_argument("--param2", type=float, default=None)

    sp = sub.add_parser("point", help="measures of a single state")
    add_family(sp)
    sp.add_argument("--in", dest="input_path", default=None)
    add_common(sp)

    sp = sub.add_parser("sweep", help="boundary curve of one family")
    add_family(sp, required=True)
    sp.add_argument("--plane", choices=["eof-q", "sl-q"], default="eof-q")
    sp.add_argument("--n", type=int, default=512, help="curve resolution")
    add_common(sp)

    sp = sub.add_parser("sample", help="random density-matrix batch")
    sp.add_argument("--n", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    add_common(sp)

    sp = sub.add_parser("near", help="near-boundary batch for one family")
    add_family(sp, required=True)
    sp.add_argument("--n", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--epsilon", type=float, default=1e-3)
    add_common(sp)

    sp = sub.add_parser("verify", help="containment check of a random batch")
    sp.add_argument("--plane", choices=["eof-q", "sl-q"], default="eof-q")
    sp.add_argument("--n", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--slack", type=float, default=bounds.DEFAULT_SLACK)
    add_common(sp)

    sp = sub.add_parser("crossover", help="junctions of the horn upper bound")
    add_common(sp)
    return p


def _optimizer_from(args):
    return OptimizerConfig(
        grid_theta=getattr(args, "grid_theta", 60),
        grid_phi=getattr(args, "grid_phi", 120),
        restarts=getattr(args, "restarts", 3),
    )


def _family_from(args):
    if args.family is None:
        return None
    if args.param is None:
        raise UsageError(f"--family {args.family} requires --param")
    return Family(args.family, args.param, args.param2)


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _record_json(rec, fam=None, seed=None):
    obj = dataclasses.asdict(rec)
    if fam is not None:
        obj["family"] = fam.kind
        obj["param1"] = fam.p1
        obj["param2"] = fam.p2
    if seed is not None:
        obj["seed"] = seed
    return json.dumps(obj, indent=2) + "\n"


def run_point(args):
    cfg = _optimizer_from(args)
    fam = _family_from(args)
    if (fam is None) == (args.input_path is None):
        raise UsageError("point requires exactly one of --family or --in")
    rho = make_family(fam) if fam is not None else qio.read_state_file(args.input_path)
    rec = discord_numeric(rho, cfg)
    if (args.format or "json") == "json":
        return _record_json(rec, fam), args.output_path
    batch = bounds.SampleBatch(
        records=[rec],
        seeds=[getattr(args, "seed", 0) or 0],
        provenance="point",
        families=[fam],
    )
    return qio.csv_text(batch), args.output_path


def run_sweep(args):
    cfg = _optimizer_from(args)
    fam_kind = args.family
    curve = bounds.sweep_family(fam_kind, args.plane, args.n, cfg)
    return qio.csv_text(curve), args.output_path


def run_sample(args):
    cfg = _optimizer_from(args)
    batch = bounds.sample_random(args.n, args.seed, cfg)
    return qio.csv_text(batch), args.output_path


def run_near(args):
    cfg = _optimizer_from(args)
    batch = bounds.sample_near_boundary(
        args.family, args.n, args.epsilon, args.seed, cfg
    )
    return qio.csv_text(batch), args.output_path


def run_verify(args):
    cfg = _optimizer_from(args)
    batch = bounds.sample_random(args.n, args.seed, cfg)
    if args.plane == "eof-q":
        report = bounds.verify_bounds(batch, "eof-q", args.slack, cfg)
        obj = report.to_json_obj()
    else:
        keep = [r.linear_entropy <= PIMPLE_SL for r in batch.records]
        gate = bounds.SampleBatch(
            records=[r for r, k in zip(batch.records, keep) if k],
            seeds=[s for s, k in zip(batch.seeds, keep) if k],
            provenance=batch.provenance,
        )
        obj = bounds.verify_bounds(gate, "sl-q", args.slack, cfg).to_json_obj()
        rest = bounds.SampleBatch(
            records=[r for r, k in zip(batch.records, keep) if not k],
            seeds=[s for s, k in zip(batch.seeds, keep) if not k],
            provenance=batch.provenance,
        )
        # the S_L > 8/9 slice is informational only (Werner-takeover region)
        if rest.records:
            obj["informational_above_8_9"] = bounds.verify_bounds(
                rest, "sl-q", args.slack, cfg
            ).to_json_obj()
        else:
            obj["informational_above_8_9"] = None
    obj["seed"] = args.seed
    obj["n"] = args.n
    obj["plane"] = args.plane
    return json.dumps(obj, indent=2) + "\n", args.output_path


def run_crossover(args):
    cfg = _optimizer_from(args)
    e_aw, q_aw, e_wp = bounds.horn_crossovers(cfg)
    obj = {
        "alpha_werner": {"eof": e_aw, "discord": q_aw},
        "werner_pure": {"eof": e_wp, "discord": e_wp},
    }
    return json.dumps(obj, indent=2) + "\n", args.output_path


COMMANDS = {
    "point": run_point,
    "sweep": run_sweep,
    "sample": run_sample,
    "near": run_near,
    "verify": run_verify,
    "crossover": run_crossover,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        text, path = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StateError, ParamOutOfRange, json.JSONDecodeError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FileNotFoundError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        _emit(text, path)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
