"""Experiment configuration and CSV results tables."""
from dataclasses import asdict, dataclass, fields, replace
import json
from typing import Optional

import numpy as np

from . import __version__
from .eigenbasis import ProblemSpec, reference_solution
from .interp import InterpolantRadial, eval_radial
from .problems import EXAMPLE_DIMENSION, EXAMPLES, example_problem, radial_form
from .smc import SmcConfig, run

# Config keys echoed into CSV headers; ``workers`` and ``out`` do not affect results.
RESULT_KEYS = ("example", "n", "s", "f", "radius", "degree", "M", "K", "replicas", "seed",
               "angular_seed", "max_steps", "source_factor")
PROFILE_POINTS = 201


def _fmt(x):
    return "%.17g" % x


@dataclass(frozen=True)
class ExperimentConfig:
    example: Optional[int] = 2
    n: Optional[int] = None
    s: float = 0.4
    f: Optional[str] = None
    radius: float = 1.0
    degree: Optional[int] = None
    M: Optional[int] = None
    K: int = 100
    replicas: Optional[int] = None
    seed: int = 0
    angular_seed: int = 0
    max_steps: int = 1000
    source_factor: str = "derived"
    workers: int = 1
    out: Optional[str] = None

    def resolved(self):
        """Fill preset-dependent defaults (N_t, M, R, n)."""
        if self.example is not None and self.example not in EXAMPLES:
            raise ValueError(f"unknown example {self.example!r}; choose from {EXAMPLES}")
        if self.example is None and (self.f is None or self.n is None):
            raise ValueError("a custom problem needs both n and f")
        n = self.n if self.n is not None else EXAMPLE_DIMENSION[self.example]
        big = self.example == 3
        return replace(
            self, n=n,
            degree=self.degree if self.degree is not None else (12 if big else 2),
            M=self.M if self.M is not None else (2000 if big else 50),
            replicas=self.replicas if self.replicas is not None else (30 if n >= 10 else 100))

    def problem(self):
        """(ProblemSpec, exact solution or None)."""
        cfg = self.resolved()
        if cfg.example is not None:
            problem, exact = example_problem(cfg.example, cfg.s, cfg.n)
            if cfg.f is None and cfg.radius == 1.0:
                return problem, exact
            f = radial_form(cfg.f) if cfg.f is not None else problem.f
            return ProblemSpec(cfg.n, cfg.s, f, radius=cfg.radius, name=problem.name), (
                exact if cfg.f is None and cfg.radius == 1.0 else None)
        return ProblemSpec(cfg.n, cfg.s, radial_form(cfg.f), radius=cfg.radius, name="custom"), None

    def smc_config(self):
        cfg = self.resolved()
        return SmcConfig(degree=cfg.degree, M=cfg.M, K=cfg.K, master_seed=cfg.seed,
                         replicas=cfg.replicas, max_steps=cfg.max_steps,
                         angular_seed=cfg.angular_seed, parameters=cfg.source_factor,
                         workers=cfg.workers)

    def header_items(self):
        cfg = asdict(self.resolved())
        return [(k, cfg[k]) for k in RESULT_KEYS]

    @classmethod
    def from_mapping(cls, mapping):
        known = {f.name: f for f in fields(cls)}
        unknown = set(mapping) - set(known)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**{k: _coerce(k, v) for k, v in mapping.items()})


_INT_KEYS = {"example", "n", "degree", "M", "K", "replicas", "seed", "angular_seed",
             "max_steps", "workers"}
_FLOAT_KEYS = {"s", "radius"}


def _coerce(key, value):
    if value is None or value == "None":
        return None
    if key in _INT_KEYS:
        return int(value)
    if key in _FLOAT_KEYS:
        return float(value)
    return str(value)


def load_config_file(path):
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: config file must hold a JSON object")
    return data


def read_csv_header(path):
    """Config mapping stored in a results CSV header."""
    items = {}
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition("=")
            if key in RESULT_KEYS:
                items[key] = value
    return items


@dataclass
class ResultsTable:
    config: ExperimentConfig
    nodes: np.ndarray
    weights: np.ndarray
    rows: list

    @property
    def e_inf(self):
        return np.array([r[1] for r in self.rows])

    def header_lines(self, command="run"):
        lines = [f"# {k}={v}" for k, v in self.config.header_items()]
        lines.append(f"# command={command}")
        lines.append("# quadrature_nodes=" + ";".join(_fmt(t) for t in self.nodes))
        lines.append("# quadrature_weights=" + ";".join(_fmt(w) for w in self.weights))
        lines.append(f"# version={__version__}")
        return lines

    def columns(self):
        cols = ["iter", "E_inf"]
        for k in range(len(self.nodes)):
            cols += [f"node_{k}_mean", f"node_{k}_stderr"]
        return cols + ["truncated"]

    def to_csv(self):
        out = self.header_lines("run") + [",".join(self.columns())]
        for row in self.rows:
            it, e, means, errs, trunc = row
            cells = [str(it), _fmt(e)]
            for m, s in zip(means, errs):
                cells += [_fmt(m), _fmt(s)]
            cells.append(str(trunc))
            out.append(",".join(cells))
        return "\n".join(out) + "\n"


def run_experiment(config, callback=None):
    """Run the residual iteration; returns (ResultsTable, final SmcState)."""
    cfg = config.resolved()
    problem, exact = cfg.problem()
    state, series = run(problem, exact, cfg.smc_config(), callback)
    rows = [(i + 1, series.e_inf[i], series.node_means[i], series.node_stderr[i],
             int(series.truncated[i])) for i in range(len(series.e_inf))]
    return ResultsTable(cfg, state.rule.nodes.copy(), state.rule.weights.copy(), rows), state


def profile_table(table, state, points=PROFILE_POINTS):
    """CSV text of radius vs. replica-mean interpolant vs. truth."""
    cfg = table.config
    problem, exact = cfg.problem()
    if exact is None:
        exact = reference_solution(problem, max(32, 2 * cfg.degree))
    R = problem.radius
    unit_r = np.linspace(0.0, 1.0, points)
    interp = InterpolantRadial(state.rule, state.values, cfg.n, cfg.s)
    u_star = np.mean(np.atleast_2d(eval_radial(interp, unit_r)), axis=0)
    truth = exact(R * unit_r)
    lines = table.header_lines("profile") + [f"# profile_points={points}", "radius,u_star,u_ref"]
    lines += [",".join(_fmt(v) for v in row) for row in zip(R * unit_r, u_star, truth)]
    return "\n".join(lines) + "\n"
