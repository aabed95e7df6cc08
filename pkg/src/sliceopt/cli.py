"""
Command-line entry point.

    sliceopt optimize --algorithm WOA --slice URLLC --seed 3
    sliceopt bench --seeds 0..9 --out results
    sliceopt oracle --out fixtures
    sliceopt validate

Exit codes: 0 success, 1 validation failure, 2 bad arguments or config.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algorithms import ALGORITHM_NAMES, make_params
from .bench import BENCH_STALL_WINDOW, SuiteConfig, execute_suite
from .engine import RunConfig, optimize
from .objective import ObjectiveWeights, calibrate_bounds
from .report import write_report
from .slice_model import SliceType

TOP_LEVEL_KEYS = {
    "algorithms", "slices", "seeds", "run_config", "scenario_overrides", "w1", "w2",
    "algorithm_params", "convergence_delta", "workers", "algorithm", "slice", "seed",
}
RUN_CONFIG_KEYS = {"max_iterations", "tolerance", "population_size", "stall_window"}


class ConfigError(ValueError):
    def __init__(self, key, message):
        super().__init__("invalid value for '%s': %s" % (key, message))
        self.key = key


def parse_seeds(text):
    """``"3"``, ``"0..9"`` (inclusive) or ``"1,4,7"``."""
    text = str(text).strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            seeds = list(range(lo, hi + 1))
        else:
            seeds = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise ConfigError("seeds", "expected N, A..B or a comma list, got %r" % text) from None
    if not seeds or any(s < 0 for s in seeds):
        raise ConfigError("seeds", "seeds must be non-negative, got %r" % text)
    return seeds


def _split_names(values):
    out = []
    for v in values or []:
        out.extend(s.strip() for s in v.split(",") if s.strip())
    return out


def load_config(path):
    if path is None:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError("--config", str(exc)) from None
    except json.JSONDecodeError as exc:
        raise ConfigError("--config", "not valid JSON (%s)" % exc) from None
    if not isinstance(data, dict):
        raise ConfigError("--config", "top level must be a JSON object")
    return data


def build_suite(data, args):
    """Merge file values and flags (flags win) into a validated SuiteConfig."""
    unknown = sorted(set(data) - TOP_LEVEL_KEYS)
    if unknown:
        raise ConfigError(unknown[0], "unknown key")

    algorithms = _split_names(args.algorithm) or data.get("algorithms") or (
        [data["algorithm"]] if "algorithm" in data else list(ALGORITHM_NAMES))
    for name in algorithms:
        if name not in ALGORITHM_NAMES:
            raise ConfigError(
                "algorithm", "unknown algorithm %r; valid names are: %s"
                % (name, ", ".join(ALGORITHM_NAMES)))

    slices = _split_names(args.slice) or data.get("slices") or (
        [data["slice"]] if "slice" in data else [s.value for s in SliceType])
    try:
        slices = [SliceType.parse(s) for s in slices]
    except ValueError as exc:
        raise ConfigError("slice", str(exc)) from None

    if args.seeds is not None:
        seeds = parse_seeds(args.seeds)
    elif args.seed is not None:
        seeds = [args.seed]
    elif "seeds" in data:
        seeds = data["seeds"]
        if not isinstance(seeds, list) or not all(isinstance(s, int) and s >= 0 for s in seeds):
            raise ConfigError("seeds", "expected a list of non-negative integers")
    elif "seed" in data:
        seeds = [data["seed"]]
    else:
        seeds = list(range(10))

    run = dict(data.get("run_config", {}))
    unknown = sorted(set(run) - RUN_CONFIG_KEYS)
    if unknown:
        raise ConfigError("run_config.%s" % unknown[0], "unknown key")
    run.setdefault("stall_window", BENCH_STALL_WINDOW)
    for key in RUN_CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            run[key] = value
    for key, value in run.items():
        try:
            RunConfig(**{key: value})
        except (TypeError, ValueError) as exc:
            raise ConfigError("run_config.%s" % key, str(exc)) from None
    run_config = RunConfig(**run)

    w1 = args.w1 if args.w1 is not None else data.get("w1")
    w2 = args.w2 if args.w2 is not None else data.get("w2")
    weights = None
    if w1 is not None or w2 is not None:
        if w1 is None or w2 is None:
            raise ConfigError("w1" if w1 is None else "w2", "w1 and w2 must be given together")
        try:
            weights = ObjectiveWeights(float(w1), float(w2))
        except (TypeError, ValueError) as exc:
            raise ConfigError("w1", str(exc)) from None

    params = data.get("algorithm_params", {})
    if not isinstance(params, dict):
        raise ConfigError("algorithm_params", "expected an object")
    for name, overrides in params.items():
        if name not in ALGORITHM_NAMES:
            raise ConfigError("algorithm_params.%s" % name, "unknown algorithm")
        try:
            make_params(name, overrides)
        except KeyError as exc:
            raise ConfigError("algorithm_params.%s.%s" % (name, exc.args[0]), "unknown key") from None
        except (TypeError, ValueError) as exc:
            raise ConfigError("algorithm_params.%s" % name, str(exc)) from None

    overrides = data.get("scenario_overrides", {})
    for name, over in overrides.items():
        try:
            SliceType.parse(name)
        except ValueError as exc:
            raise ConfigError("scenario_overrides.%s" % name, str(exc)) from None
        bad = sorted(set(over) - {"seed", "n"})
        if bad:
            raise ConfigError("scenario_overrides.%s.%s" % (name, bad[0]), "unknown key")

    delta = data.get("convergence_delta", 0.01)
    if not isinstance(delta, (int, float)) or delta <= 0:
        raise ConfigError("convergence_delta", "must be a positive number")

    return SuiteConfig(
        algorithms=algorithms,
        slices=slices,
        seeds=seeds,
        run_config=run_config,
        weights=weights,
        algorithm_params=params,
        scenario_overrides={SliceType.parse(k).value: v for k, v in overrides.items()},
        convergence_delta=float(delta),
    )


def _write_json(path, obj):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def run_path(out_dir, algorithm, slice_type, seed):
    return os.path.join(out_dir, "runs", "%s-%s-%d.json" % (algorithm, slice_type.value, seed))


def cmd_optimize(args, data):
    suite = build_suite(data, args)
    if len(suite.algorithms) != 1 or len(suite.slices) != 1 or len(suite.seeds) != 1:
        raise ConfigError("algorithm", "optimize takes exactly one algorithm, slice and seed")
    name, slice_type, seed = suite.algorithms[0], suite.slices[0], suite.seeds[0]
    spec = suite.scenario(slice_type)
    bounds = calibrate_bounds(spec, 1000, seed=spec.seed)
    config = suite.run_config.with_(algorithm=name, seed=seed)
    record = optimize(spec, suite.weights_for(slice_type), bounds, config,
                      suite.algorithm_params.get(name))
    _write_json(run_path(args.out, name, slice_type, seed), record.to_dict())
    print(record.to_json(indent=2))
    return 0


def cmd_bench(args, data):
    suite = build_suite(data, args)
    workers = args.workers if args.workers is not None else data.get("workers")
    result = execute_suite(suite, workers=workers)
    for slice_type, record in result.records:
        _write_json(run_path(args.out, record.algorithm, slice_type, record.seed), record.to_dict())
    _write_json(os.path.join(args.out, "baselines.json"), {
        s.value: {
            "scenario": result.scenarios[s].to_dict(),
            "bounds": result.bounds[s].to_dict(),
            "weights": suite.weights_for(s).to_dict(),
            "baseline": result.baselines[s].to_dict(),
        }
        for s in suite.slices
    })
    for path in write_report(result.rows, args.out):
        print(path)
    return 0


def cmd_oracle(args, data):
    from .validation import write_fixtures

    for path in write_fixtures(args.out):
        print(path)
    return 0


def cmd_validate(args, data):
    from .validation import run_validation

    algorithms = _split_names(args.algorithm) or list(ALGORITHM_NAMES)
    for name in algorithms:
        if name not in ALGORITHM_NAMES:
            raise ConfigError("algorithm", "unknown algorithm %r; valid names are: %s"
                              % (name, ", ".join(ALGORITHM_NAMES)))
    return 0 if run_validation(algorithms) else 1


def _add_run_flags(p):
    p.add_argument("--config", metavar="PATH", help="JSON run/suite configuration")
    p.add_argument("--algorithm", action="append", metavar="NAME",
                   help="algorithm name (repeat or comma-separate for bench): %s"
                   % ", ".join(ALGORITHM_NAMES))
    p.add_argument("--slice", action="append", metavar="{eMBB|URLLC|mMTC}")
    p.add_argument("--seed", type=int, metavar="N")
    p.add_argument("--seeds", metavar="A..B")
    p.add_argument("--max-iterations", dest="max_iterations", type=int, metavar="N")
    p.add_argument("--tolerance", type=float, metavar="X")
    p.add_argument("--population-size", dest="population_size", type=int, metavar="N")
    p.add_argument("--stall-window", dest="stall_window", type=int, metavar="N")
    p.add_argument("--w1", type=float, metavar="X")
    p.add_argument("--w2", type=float, metavar="X")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError("arguments", message)


def build_parser():
    parser = _Parser(prog="sliceopt", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("optimize", help="run one algorithm on one slice scenario")
    _add_run_flags(p)
    p.add_argument("--out", default="results", metavar="DIR")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("bench", help="run the full evaluation matrix and write tables")
    _add_run_flags(p)
    p.add_argument("--out", default="results", metavar="DIR")
    p.add_argument("--workers", type=int, metavar="N",
                   help="worker processes (default: number of processors)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="compute and store grid-oracle fixtures")
    p.add_argument("--out", default="fixtures", metavar="DIR")
    p.add_argument("--config", metavar="PATH")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("validate", help="run the oracle and calibration-function gates")
    p.add_argument("--algorithm", action="append", metavar="NAME")
    p.add_argument("--config", metavar="PATH")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        data = load_config(getattr(args, "config", None))
        if args.command == "optimize":
            # A single run needs one of each; default to the first slice and seed 0.
            if not args.algorithm and "algorithm" not in data:
                raise ConfigError("algorithm", "optimize needs --algorithm; valid names are: %s"
                                  % ", ".join(ALGORITHM_NAMES))
            if not args.slice and "slice" not in data:
                args.slice = [SliceType.EMBB.value]
            if args.seed is None and args.seeds is None and "seed" not in data:
                args.seed = 0
        return args.func(args, data)
    except ConfigError as exc:
        print("sliceopt: error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
