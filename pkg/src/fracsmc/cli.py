"""Command line entry point: ``fracsmc {run,profile,oracle}``.

Settings are resolved in layers: built-in defaults, then the header of a
previous results file (``--from-csv``), then a JSON config file
(``--config``), then explicit flags.
"""
import argparse
import sys

from .experiment import (ExperimentConfig, load_config_file, profile_table, read_csv_header,
                         run_experiment)
from .oracles import SUITES, run_suite
from .problems import EXAMPLES
from .wos import SOURCE_PARAMETERS

EXIT_OK, EXIT_USAGE, EXIT_ORACLE, EXIT_IO = 0, 1, 2, 3

# flag dest -> ExperimentConfig field
_FLAG_FIELDS = {"example": "example", "n": "n", "s": "s", "f": "f", "radius": "radius",
                "nt": "degree", "m": "M", "k": "K", "reps": "replicas", "seed": "seed",
                "angular_seed": "angular_seed", "max_steps": "max_steps",
                "source_factor": "source_factor", "workers": "workers", "out": "out"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _experiment_flags(p):
    p.add_argument("--example", type=int, choices=EXAMPLES, help="benchmark preset")
    p.add_argument("--n", type=int, help="dimension")
    p.add_argument("--s", type=float, help="fractional order in (0, 2)")
    p.add_argument("--f", help="custom radial source: zero, one, const:C, poly:c0,c1,.. (in r^2), sin-r2")
    p.add_argument("--radius", type=float, help="ball radius")
    p.add_argument("--nt", type=int, help="polynomial degree N_t (N_t + 1 nodes)")
    p.add_argument("--m", type=int, help="walk-on-spheres paths per node")
    p.add_argument("--k", type=int, help="residual corrections")
    p.add_argument("--reps", type=int, help="independent replicas R")
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--angular-seed", type=int, help="seed of the node direction")
    p.add_argument("--max-steps", type=int, help="walk truncation length")
    p.add_argument("--source-factor", choices=SOURCE_PARAMETERS, help="source-factor parameters")
    p.add_argument("--workers", type=int, help="threads for path simulation")
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--from-csv", help="reuse the config stored in a results CSV header")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--dry-run", action="store_true", help="print the resolved config and exit")


def build_parser():
    parser = _Parser(prog="fracsmc", description="Spectral Monte Carlo for the fractional Poisson equation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _experiment_flags(sub.add_parser("run", help="error series E_inf per iteration"))
    _experiment_flags(sub.add_parser("profile", help="radial profile of the final interpolant"))
    o = sub.add_parser("oracle", help="run independent numerical oracles")
    o.add_argument("--suite", choices=SUITES + ("all",), default="all")
    o.add_argument("--n", type=int, help="dimension for the zeta suite")
    o.add_argument("--s", type=float, help="order for the zeta suite")
    o.add_argument("--m", type=int, help="sample count for the exit and zeta suites")
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--out", help="report path (default: stdout)")
    return parser


def resolve_config(args):
    """ExperimentConfig from layered sources; raises OSError or ValueError."""
    layers = {}
    if args.from_csv:
        layers.update(read_csv_header(args.from_csv))
    if args.config:
        layers.update(load_config_file(args.config))
    for dest, name in _FLAG_FIELDS.items():
        value = getattr(args, dest, None)
        if value is not None:
            layers[name] = value
    if "f" in layers and layers.get("f") is not None and "example" not in layers:
        layers["example"] = None
    return ExperimentConfig.from_mapping(layers).resolved()


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _oracle(args):
    suites = SUITES if args.suite == "all" else (args.suite,)
    lines, failed = [], False
    for name in suites:
        kwargs = {}
        if name in ("exit", "zeta"):
            kwargs["seed"] = args.seed
            if args.m is not None:
                kwargs["M"] = args.m
        if name == "zeta":
            if args.n is not None:
                kwargs["n"] = args.n
            if args.s is not None:
                kwargs["s"] = args.s
        for check in run_suite(name, **kwargs):
            lines.append(check.line())
            failed |= check.required and not check.passed
    lines.append("oracles: " + ("FAILED" if failed else "all required checks passed"))
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_ORACLE if failed else EXIT_OK


def _experiment(args):
    config = resolve_config(args)
    if args.dry_run:
        items = [("command", args.command)] + list(vars(config).items())
        _write("".join(f"# {k}={v}\n" for k, v in items), None)
        return EXIT_OK
    table, state = run_experiment(config)
    text = table.to_csv() if args.command == "run" else profile_table(table, state)
    _write(text, config.out)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "oracle":
            return _oracle(args)
        return _experiment(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        name = getattr(exc, "filename", None)
        detail = f"{name}: {exc.strerror}" if name and exc.strerror else str(exc)
        print(f"fracsmc: I/O error: {detail}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, TypeError) as exc:
        print(f"fracsmc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
