"""Command-line pipelines over fixture frames and linear frame files.

Each command resolves a frame (or the orthogonal pair), runs its pipeline,
prints a short summary, and, when ``--out`` is given, writes a JSON report;
the sweep command additionally writes the convergence table as CSV and the
report path renders matplotlib figures next to the delimited output.

Exit codes: 0 pass, 2 parse/validation error, 3 precondition error,
4 numerical failure (non-convergence or a failed verdict).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .certify import certify_frame
from .duality import canonical_dual, is_dual
from .errors import (
    ConvergenceError,
    DivergenceError,
    DualityError,
    FrameMismatchError,
    MembershipError,
    NotInvertibleError,
    PreconditionError,
    SamplerExhaustedError,
    SchemaError,
)
from .fixtures import linear_frame, parse_fixture
from .frame_core import Frame, SolverCfg, frame_map, reconstruct, synthesis, analysis
from .report import (
    render_certify_figure,
    render_sweep_figure,
    report_to_json,
    write_report,
    write_sweep_csv,
)
from .spaces import sample_points
from .transforms import (
    CheckCfg,
    apply_similarity,
    direct_sum,
    interpolate,
    is_orthogonal,
    projections_equal,
    recover_similarity,
    scalar_ambient,
    scalar_bi_lip,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_NUMERICAL = 4

COMMANDS = (
    "certify",
    "dual",
    "similarity",
    "orthogonality",
    "interpolate",
    "direct-sum",
    "reconstruct-sweep",
)

_FRAME_FILE_FIELDS = ("p", "N", "ambient_dim", "scalar_field", "U_matrix", "V_matrix")


@dataclass
class RunConfig:
    command: str
    fixture: str = "disc:N=30"
    n_pairs: int = 1000
    n_probes: int = 64
    seed: int = 0
    tol: float = 1e-8
    solver: SolverCfg = field(default_factory=SolverCfg)
    out: str | None = None
    fig: bool = True
    scale: float = 2.0
    coeff_a: float = 1.0
    coeff_b: float = 1.0
    coeff_c: float = 0.5
    coeff_d: float = 0.5
    sweep: tuple[int, ...] = (5, 10, 20, 30)

    def echo(self) -> dict:
        return {
            "command": self.command,
            "fixture": self.fixture,
            "n_pairs": self.n_pairs,
            "n_probes": self.n_probes,
            "seed": self.seed,
            "tol": self.tol,
            "solver": {
                "damping": self.solver.damping,
                "max_iter": self.solver.max_iter,
                "residual_tol": self.solver.residual_tol,
            },
            "out": self.out,
            "fig": self.fig,
            "scale": self.scale,
            "coefficients": [self.coeff_a, self.coeff_b, self.coeff_c, self.coeff_d],
            "sweep": list(self.sweep),
        }


def parse_frame_file(path) -> Frame:
    """Load a linear frame from a JSON file.

    Required fields: p, N, ambient_dim, scalar_field, U_matrix (N rows of
    length ambient_dim), V_matrix (ambient_dim rows of length N).  Only
    linear frames serialize; the nonlinear fixtures are named constructions.
    """
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SchemaError(f"cannot read frame file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"frame file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("frame file must hold a JSON object")
    for name in _FRAME_FILE_FIELDS:
        if name not in doc:
            raise SchemaError(f'frame file is missing field "{name}"')
    p = doc["p"]
    if not isinstance(p, (int, float)) or isinstance(p, bool) or not (1.0 <= float(p) < np.inf):
        raise SchemaError(f'"p" must be a number with 1 <= p < inf, got {p!r}')
    N = doc["N"]
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise SchemaError(f'"N" must be a positive integer, got {N!r}')
    dim = doc["ambient_dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SchemaError(f'"ambient_dim" must be a positive integer, got {dim!r}')
    if doc["scalar_field"] not in ("real", "complex"):
        raise SchemaError(f'"scalar_field" must be "real" or "complex", got {doc["scalar_field"]!r}')

    def matrix(name, rows, cols):
        value = doc[name]
        ok = (
            isinstance(value, list)
            and len(value) == rows
            and all(
                isinstance(r, list)
                and len(r) == cols
                and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in r)
                for r in value
            )
        )
        if not ok:
            raise SchemaError(f'"{name}" must be a {rows} x {cols} matrix of numbers')
        return np.asarray(value, dtype=float)

    U = matrix("U_matrix", N, dim)
    V = matrix("V_matrix", dim, N)
    return linear_frame(U, V, p=float(p))


def resolve_fixture(text: str):
    """A fixture id, or a path to a linear frame file."""
    if text.endswith(".json") or os.path.sep in text or os.path.exists(text):
        return parse_frame_file(text)
    return parse_fixture(text)


def _single_frame(resolved, command: str) -> Frame:
    if isinstance(resolved, tuple):
        raise PreconditionError(f"command '{command}' needs a single frame, not the pair fixture")
    return resolved


def _frame_pair(resolved, command: str) -> tuple[Frame, Frame]:
    if not isinstance(resolved, tuple):
        raise PreconditionError(
            f"command '{command}' needs the orthogonal pair fixture (orthopair)"
        )
    return resolved


def _jsonable_point(pt) -> object:
    vals = []
    for z in np.atleast_1d(np.asarray(pt, dtype=complex)):
        if z.imag == 0.0:
            vals.append(float(z.real))
        else:
            vals.append([float(z.real), float(z.imag)])
    return vals[0] if len(vals) == 1 else vals


def _run_certify(config: RunConfig):
    F = _single_frame(resolve_fixture(config.fixture), config.command)
    cert = certify_frame(F, config.n_pairs, config.n_probes, config.seed)
    payload = {"certification": cert.to_dict()}
    return payload, cert.certified, None, cert.to_dict()


def _run_dual(config: RunConfig):
    F = _single_frame(resolve_fixture(config.fixture), config.command)
    dual = canonical_dual(F, config.solver)
    dual_ok = is_dual(F, dual, samples=min(200, config.n_pairs), seed=config.seed, tol=config.tol)
    cert_f = certify_frame(F, config.n_pairs, config.n_probes, config.seed)
    cert_d = certify_frame(dual, config.n_pairs, config.n_probes, config.seed)
    payload = {
        "original": cert_f.to_dict(),
        "canonical_dual": cert_d.to_dict(),
        "is_dual": dual_ok,
        "reciprocity": {
            "one_over_b": 1.0 / cert_f.b_hat if cert_f.b_hat > 0 else None,
            "one_over_a": 1.0 / cert_f.a_hat if cert_f.a_hat > 0 else None,
            "dual_a_hat": cert_d.a_hat,
            "dual_b_hat": cert_d.b_hat,
        },
    }
    passed = dual_ok and cert_f.certified and cert_d.certified
    return payload, passed, None, cert_d.to_dict()


def _run_similarity(config: RunConfig):
    F = _single_frame(resolve_fixture(config.fixture), config.command)
    if config.scale == 0.0:
        raise PreconditionError("similarity scale must be nonzero")
    point_t = scalar_bi_lip(1.0 / config.scale)
    ambient_t = scalar_ambient(config.scale, F.M.ambient_dim)
    samples = min(200, config.n_pairs)
    G = apply_similarity(F, point_t, ambient_t, CheckCfg(samples=samples, seed=config.seed))
    recovered_point, recovered_ambient = recover_similarity(F, G, config.solver)
    pts = sample_points(F.M, samples, config.seed)
    dev_point = max(
        F.M.norm(recovered_point.forward(x) - x / config.scale) for x in pts
    )
    dev_ambient = max(
        F.M.norm(recovered_ambient.forward(x) - config.scale * x) for x in pts
    )
    proj_equal = projections_equal(
        F, G, n_probes=min(64, config.n_probes), seed=config.seed,
        tol=config.tol, cfg=config.solver,
    )
    orthogonal = is_orthogonal(F, G, samples=samples, seed=config.seed, tol=max(config.tol, 1e-9))
    rows = [
        {
            "x": _jsonable_point(x),
            "point_transform": _jsonable_point(recovered_point.forward(x)),
            "ambient_transform": _jsonable_point(recovered_ambient.forward(x)),
        }
        for x in pts[:5]
    ]
    payload = {
        "scale": config.scale,
        "max_deviation_point_transform": float(dev_point),
        "max_deviation_ambient_transform": float(dev_ambient),
        "projections_equal": proj_equal,
        "is_orthogonal": orthogonal,
        "recovered_map_samples": rows,
    }
    passed = dev_point <= config.tol and dev_ambient <= config.tol and proj_equal and not orthogonal
    return payload, passed, None, None


def _run_orthogonality(config: RunConfig):
    F, G = _frame_pair(resolve_fixture(config.fixture), config.command)
    samples = min(500, config.n_pairs)
    worst = 0.0
    for x in sample_points(F.M, samples, config.seed):
        worst = max(
            worst,
            F.M.norm(synthesis(F, analysis(G, x))),
            F.M.norm(synthesis(G, analysis(F, x))),
        )
    orthogonal = worst <= config.tol
    payload = {"is_orthogonal": orthogonal, "max_mixed_norm": float(worst), "samples": samples}
    return payload, orthogonal, None, None


def _run_interpolate(config: RunConfig):
    F, G = _frame_pair(resolve_fixture(config.fixture), config.command)
    dim = F.M.ambient_dim
    blended = interpolate(
        F, G,
        scalar_bi_lip(config.coeff_a),
        scalar_bi_lip(config.coeff_b),
        scalar_ambient(config.coeff_c, dim),
        scalar_ambient(config.coeff_d, dim),
        CheckCfg(samples=min(200, config.n_pairs), seed=config.seed, tol=config.tol),
    )
    pts = sample_points(blended.M, min(200, config.n_pairs), config.seed + 1)
    identity_err = max(blended.M.norm(frame_map(blended, x) - x) for x in pts)
    cert = certify_frame(blended, min(500, config.n_pairs), config.n_probes, config.seed)
    payload = {
        "coefficients": {
            "a": config.coeff_a,
            "b": config.coeff_b,
            "c": config.coeff_c,
            "d": config.coeff_d,
        },
        "identity_max_error": float(identity_err),
        "certification": cert.to_dict(),
    }
    passed = identity_err <= config.tol and cert.certified
    return payload, passed, None, cert.to_dict()


def _run_direct_sum(config: RunConfig):
    F, G = _frame_pair(resolve_fixture(config.fixture), config.command)
    total = direct_sum(F, G, CheckCfg(samples=min(200, config.n_pairs), seed=config.seed))
    d = F.M.ambient_dim
    pts = sample_points(total.M, min(200, config.n_pairs), config.seed)
    block_dev = 0.0
    identity_err = 0.0
    for xy in pts:
        image = frame_map(total, xy)
        blocks = np.concatenate([frame_map(F, xy[:d]), frame_map(G, xy[d:])])
        block_dev = max(block_dev, total.M.norm(image - blocks))
        identity_err = max(identity_err, total.M.norm(image - xy))
    cert = certify_frame(total, min(500, config.n_pairs), config.n_probes, config.seed)
    payload = {
        "blockwise_max_deviation": float(block_dev),
        "identity_max_error": float(identity_err),
        "certification": cert.to_dict(),
        "product_norm": total.M.description,
    }
    passed = block_dev <= config.tol and cert.certified
    return payload, passed, None, cert.to_dict()


def _sweep_fixture_text(fixture: str, N: int) -> str:
    name, _, rest = fixture.partition(":")
    chunks = [
        chunk for chunk in rest.split(",")
        if chunk.strip() and not chunk.strip().lower().startswith("n=")
    ]
    chunks.append(f"N={N}")
    return f"{name.strip()}:{','.join(chunks)}"


def _run_sweep(config: RunConfig):
    name = config.fixture.partition(":")[0].strip().lower()
    if name not in ("disc", "log"):
        raise PreconditionError(
            "reconstruct-sweep needs a truncation-parameterized fixture (disc or log)"
        )
    samples = min(200, config.n_pairs)
    rows = []
    for N in config.sweep:
        F = parse_fixture(_sweep_fixture_text(config.fixture, N))
        pts = sample_points(F.M, samples, config.seed)
        errors = [F.M.norm(reconstruct(F, x, config.solver) - x) for x in pts]
        bound = 2.0 * max(float(F.tail_bound(x)) for x in pts) + 10.0 * config.solver.residual_tol
        rows.append(
            {
                "N": int(N),
                "max_error": float(max(errors)),
                "mean_error": float(np.mean(errors)),
                "samples": samples,
                "bound": float(bound),
            }
        )
    payload = {"fixture": name, "rows": rows}
    passed = all(row["max_error"] <= row["bound"] for row in rows)
    return payload, passed, rows, None


_RUNNERS = {
    "certify": _run_certify,
    "dual": _run_dual,
    "similarity": _run_similarity,
    "orthogonality": _run_orthogonality,
    "interpolate": _run_interpolate,
    "direct-sum": _run_direct_sum,
    "reconstruct-sweep": _run_sweep,
}


def run(config: RunConfig) -> tuple[dict, bool]:
    """Execute one pipeline; returns the full report and the pass flag."""
    start = time.perf_counter()
    payload, passed, rows, cert = _RUNNERS[config.command](config)
    report = {
        "command": config.command,
        "config": config.echo(),
        "payload": payload,
        "version": __version__,
        "wall_time": time.perf_counter() - start,
    }
    if config.out:
        out = Path(config.out)
        write_report(report, out)
        if rows is not None:
            write_sweep_csv(rows, out.with_suffix(".csv"))
            if config.fig:
                render_sweep_figure(rows, out.with_suffix(".png"), title=config.fixture)
        elif cert is not None and config.fig:
            render_certify_figure(cert, out.with_suffix(".png"), title=config.fixture)
    return report, passed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lipframe",
        description="certify and transform Lipschitz p-approximate Schauder frames",
    )
    parser.add_argument("--version", action="version", version=f"lipframe {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for command in COMMANDS:
        cp = sub.add_parser(command)
        cp.add_argument("--fixture", default="disc:N=30",
                        help="fixture id (disc:N=30, log:N=40,right=10, linear:U=...,V=..., "
                             "orthopair) or path to a linear frame JSON file")
        cp.add_argument("--n-pairs", type=int, default=1000, dest="n_pairs")
        cp.add_argument("--n-probes", type=int, default=64, dest="n_probes")
        cp.add_argument("--seed", type=int, default=0)
        cp.add_argument("--tol", type=float, default=1e-8)
        cp.add_argument("--lambda", type=float, default=1.0, dest="damping",
                        help="solver damping factor")
        cp.add_argument("--max-iter", type=int, default=500, dest="max_iter")
        cp.add_argument("--residual-tol", type=float, default=1e-10, dest="residual_tol")
        cp.add_argument("--out", default=None, help="write the JSON report here")
        cp.add_argument("--no-fig", action="store_true",
                        help="skip rendering figures next to the report")
        if command == "similarity":
            cp.add_argument("--scale", type=float, default=2.0,
                            help="ambient scale of the applied similarity")
        if command == "interpolate":
            cp.add_argument("--coeff-a", type=float, default=1.0, dest="coeff_a")
            cp.add_argument("--coeff-b", type=float, default=1.0, dest="coeff_b")
            cp.add_argument("--coeff-c", type=float, default=0.5, dest="coeff_c")
            cp.add_argument("--coeff-d", type=float, default=0.5, dest="coeff_d")
        if command == "reconstruct-sweep":
            cp.add_argument("--sweep-n", default="5,10,20,30", dest="sweep_n",
                            help="comma-separated truncation lengths")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    seed = args.seed
    env_seed = os.environ.get("LIPFRAME_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            raise SchemaError(f"LIPFRAME_SEED must be an integer, got '{env_seed}'") from None
    try:
        solver = SolverCfg(
            damping=args.damping, max_iter=args.max_iter, residual_tol=args.residual_tol
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    config = RunConfig(
        command=args.command,
        fixture=args.fixture,
        n_pairs=args.n_pairs,
        n_probes=args.n_probes,
        seed=seed,
        tol=args.tol,
        solver=solver,
        out=args.out,
        fig=not args.no_fig,
    )
    if hasattr(args, "scale"):
        config.scale = args.scale
    for name in ("coeff_a", "coeff_b", "coeff_c", "coeff_d"):
        if hasattr(args, name):
            setattr(config, name, getattr(args, name))
    if hasattr(args, "sweep_n"):
        try:
            config.sweep = tuple(int(v) for v in args.sweep_n.split(",") if v.strip())
        except ValueError:
            raise SchemaError(f"--sweep-n must be comma-separated integers, got '{args.sweep_n}'") from None
        if not config.sweep:
            raise SchemaError("--sweep-n must name at least one truncation length")
    return config


def _summarize(report: dict, passed: bool) -> str:
    payload = report["payload"]
    lines = [f"lipframe {report['command']} on {report['config']['fixture']}"]
    if "certification" in payload:
        cert = payload["certification"]
        lines.append(
            f"  a_hat={cert['a_hat']:.6g} b_hat={cert['b_hat']:.6g} "
            f"c_hat={cert['c_hat']:.6g} d_hat={cert['d_hat']:.6g} -> {cert['verdict']}"
        )
    if "rows" in payload:
        for row in payload["rows"]:
            lines.append(
                f"  N={row['N']:>3d} max_error={row['max_error']:.3e} "
                f"mean_error={row['mean_error']:.3e} samples={row['samples']}"
            )
    if "is_dual" in payload:
        lines.append(f"  is_dual={payload['is_dual']}")
    if "is_orthogonal" in payload:
        lines.append(f"  is_orthogonal={payload['is_orthogonal']}")
    if "projections_equal" in payload:
        lines.append(f"  projections_equal={payload['projections_equal']}")
    if "identity_max_error" in payload:
        lines.append(f"  identity_max_error={payload['identity_max_error']:.3e}")
    lines.append(f"  result: {'PASS' if passed else 'FAIL'}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        report, passed = run(config)
    except SchemaError as exc:
        print(f"lipframe: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (
        PreconditionError,
        MembershipError,
        NotInvertibleError,
        FrameMismatchError,
        SamplerExhaustedError,
        ValueError,
    ) as exc:
        print(f"lipframe: precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ConvergenceError, DivergenceError, DualityError) as exc:
        print(f"lipframe: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(_summarize(report, passed))
    if config.out:
        print(f"  report: {config.out}")
    if not passed:
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
