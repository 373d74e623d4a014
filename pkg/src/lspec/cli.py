"""Command-line front end: ``lspec <command> [options]``.

Commands
--------
spectrum   eigenvalues of L_n(nu)
counting   eigenvalue counts above thresholds vs. the log-density law
extremes   smallest and largest eigenvalues vs. their predictions
norm       ||L_n(1)|| (best constant of the truncated Hardy inequality)
validate   invariant suite at reduced scale

Tables are CSV (default) or JSON. CSV output starts with a schema comment
line ``# lspec-schema v1``; numbers carry 17 significant digits, and JSON
reuses the exact same number text.

Exit codes: 0 success, 1 validation failure, 2 invalid arguments,
3 numerical failure (bracketing or convergence).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from .errors import BracketError, ConvergenceError, DomainError

SCHEMA_LINE = "# lspec-schema v1"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


@dataclass
class ExperimentConfig:
    """Parsed options shared by all commands."""

    command: str
    n_grid: list[int] = field(default_factory=list)
    nu: float = 1.0
    thresholds: list[float] = field(default_factory=list)
    j_list: list[int] = field(default_factory=lambda: [1])
    order: int | None = None
    tol: float = 0.0
    output_format: str = "csv"
    output_path: str | None = None
    seed: int | None = None
    inject_failure: bool = False

    def __post_init__(self):
        if self.tol < 0:
            raise DomainError("--tol must be nonnegative")
        if any(n < 1 for n in self.n_grid):
            raise DomainError("grid values of n must be positive")
        if any(j < 1 for j in self.j_list):
            raise DomainError("j values must be positive")


@dataclass
class Table:
    columns: list[str]
    rows: list[list[Any]]
    comments: list[str] = field(default_factory=list)


# --- serialisation -----------------------------------------------------------


def format_field(v: Any) -> str:
    """CSV text of one field: 17 significant digits for floats, empty for None."""
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    return str(v)


def _json_field(v: Any) -> str:
    if v is None:
        return "null"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer, float, np.floating)):
        text = format_field(v)
        return text if math.isfinite(float(v)) else "null"
    return json.dumps(str(v))


def render(table: Table, fmt: str) -> str:
    if fmt == "csv":
        out = io.StringIO()
        out.write(SCHEMA_LINE + "\n")
        for c in table.comments:
            out.write(f"# {c}\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([format_field(v) for v in row])
        return out.getvalue()
    if fmt == "json":
        items = []
        for row in table.rows:
            body = ", ".join(f"{json.dumps(c)}: {_json_field(v)}" for c, v in zip(table.columns, row))
            items.append("  {" + body + "}")
        return "[\n" + ",\n".join(items) + "\n]\n" if items else "[]\n"
    raise DomainError(f"unknown format {fmt!r}")


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# --- commands ----------------------------------------------------------------


def _single_n(cfg: ExperimentConfig) -> int:
    if len(cfg.n_grid) != 1:
        raise DomainError(f"{cfg.command} needs exactly one --n")
    return cfg.n_grid[0]


def cmd_spectrum(cfg: ExperimentConfig) -> tuple[Table, int]:
    from .eigensolve import spectrum_L

    n = _single_n(cfg)
    s = spectrum_L(n, cfg.nu, abs_tol=cfg.tol)
    rows = [[int(j), float(mu), s.method, s.abs_tol] for j, mu in zip(range(1, len(s) + 1), s.values)]
    return Table(["j", "mu_j", "method", "abs_tol"], rows), EXIT_OK


def cmd_counting(cfg: ExperimentConfig) -> tuple[Table, int]:
    from .asymptotics import counting_density, expected_count
    from .eigensolve import count_above

    if not cfg.thresholds:
        raise DomainError("counting needs --x or --x-grid")
    if any(not 0 < x < 4 for x in cfg.thresholds):
        raise DomainError("thresholds must lie in (0, 4)")
    rows = []
    status = EXIT_OK
    comments = []
    for n in sorted(set(cfg.n_grid)):
        counts = []
        for x in sorted(set(cfg.thresholds)):
            c = count_above(n, cfg.nu, x).count
            counts.append(c)
            per_log = c / math.log(n) if n > 1 else None
            rows.append([n, x, c, per_log, counting_density(x / 4.0), expected_count(x, n)])
        if any(b > a for a, b in zip(counts, counts[1:])):
            status = EXIT_VALIDATION
            comments.append(f"monotonicity violated at n={n}")
    return Table(["n", "x_abs", "count", "count_over_log_n", "density_limit", "expected"], rows, comments), status


def cmd_extremes(cfg: ExperimentConfig) -> tuple[Table, int]:
    from .asymptotics import large_eig_prediction, small_eig_prediction, small_eig_residual, CBRT3
    from .eigensolve import MAX_LARGE_J, find_large_eigs, spectrum_L
    from .specfun import airy_zero

    js = sorted(set(cfg.j_list))
    if js[-1] > MAX_LARGE_J:
        raise DomainError(f"j must not exceed {MAX_LARGE_J}")
    rows = []
    comments = []
    for n in sorted(set(cfg.n_grid)):
        if js[-1] > n:
            raise DomainError(f"j={js[-1]} exceeds n={n}")
        small = spectrum_L(n, cfg.nu, indices=js, polish=False)
        for j, mu in zip(small.indices, small.values):
            p1 = 1.0 / (4.0 * n * n)
            p2 = small_eig_prediction(int(j), n).value
            rows.append(["small", int(j), n, cfg.nu, float(mu), p1, p2, abs(mu - p1), abs(mu - p2),
                         small_eig_residual(float(mu), n), airy_zero(int(j)) / CBRT3])
        if cfg.nu == 1.0 and n >= 3:
            big = find_large_eigs(n, js[-1])
            L = math.log(n)
            for j in js:
                mu = float(big[j - 1])
                p1 = large_eig_prediction(j, n, 1).value
                p2 = large_eig_prediction(j, n, 2).value
                rows.append(["large", j, n, cfg.nu, mu, p1, p2, abs(mu - p1), abs(mu - p2),
                             abs(mu - p2) * L ** 4, None])
        elif cfg.nu != 1.0:
            comments.append("large side computed only for nu = 1")
    cols = ["side", "j", "n", "nu", "mu_exact", "pred_order1", "pred_order2", "err_order1",
            "err_order2", "scaled_residual", "target"]
    return Table(cols, rows, sorted(set(comments))), EXIT_OK


def cmd_norm(cfg: ExperimentConfig) -> tuple[Table, int]:
    from .asymptotics import norm_expansion
    from .eigensolve import find_large_eigs

    if cfg.nu != 1.0:
        raise DomainError("norm is available for nu = 1 only")
    rows = []
    for n in sorted(set(cfg.n_grid)):
        exact = float(find_large_eigs(n, 1)[0]) if n > 1 else 1.0
        row: list[Any] = [n, exact]
        preds, errs, scaled = [], [], []
        for k in (1, 2, 3, 4):
            if n >= 3:
                p = norm_expansion(n, k).value
                preds.append(p)
                errs.append(abs(exact - p))
                scaled.append(abs(exact - p) * math.log(n) ** (k + 2))
            else:
                preds.append(None)
                errs.append(None)
                scaled.append(None)
        rows.append(row + preds + errs + scaled)
    cols = (["n", "norm_exact"] + [f"order{k}" for k in range(1, 5)]
            + [f"err_order{k}" for k in range(1, 5)] + [f"scaled_err_order{k}" for k in range(1, 5)])
    return Table(cols, rows, ["quantity: best constant of the truncated discrete Hardy inequality"]), EXIT_OK


def cmd_validate(cfg: ExperimentConfig) -> tuple[Table, int]:
    from .validation import run_suite

    results = run_suite(seed=cfg.seed if cfg.seed is not None else 0, inject_failure=cfg.inject_failure)
    rows = [[r.name, "PASS" if r.passed else "FAIL", r.measured, r.expected] for r in results]
    status = EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION
    return Table(["check", "status", "measured", "expected"], rows), status


COMMANDS: dict[str, Callable[[ExperimentConfig], tuple[Table, int]]] = {
    "spectrum": cmd_spectrum,
    "counting": cmd_counting,
    "extremes": cmd_extremes,
    "norm": cmd_norm,
    "validate": cmd_validate,
}


# --- argument parsing --------------------------------------------------------


def _int_list(text: str) -> list[int]:
    out = []
    for t in text.split(","):
        if not t.strip():
            continue
        try:
            v = float(t)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected integers, got {t!r}")
        if not v.is_integer():
            raise argparse.ArgumentTypeError(f"expected integers, got {t!r}")
        out.append(int(v))
    return out


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_value(text: str) -> int:
    v = _int_list(text)
    if len(v) != 1:
        raise argparse.ArgumentTypeError(f"expected one integer, got {text!r}")
    return v[0]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lspec", description="Spectral experiments for Hilbert L-matrices.")
    parser.add_argument("--version", action="version", version=f"lspec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, need_n: bool = True) -> None:
        g = p.add_mutually_exclusive_group(required=need_n)
        g.add_argument("--n", type=_int_value, help="matrix order (accepts 1e6)")
        g.add_argument("--n-grid", type=_int_list, help="comma-separated list of orders")
        p.add_argument("--nu", type=float, default=1.0, help="parameter nu (default 1)")
        p.add_argument("--tol", type=float, default=0.0, help="absolute tolerance (0 = full precision)")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--output", default=None, help="output file (default stdout)")

    p = sub.add_parser("spectrum", help="eigenvalues of L_n(nu)")
    common(p)
    p = sub.add_parser("counting", help="counts above thresholds")
    common(p)
    gx = p.add_mutually_exclusive_group(required=True)
    gx.add_argument("--x", type=float, help="threshold x_abs in (0, 4)")
    gx.add_argument("--x-grid", type=_float_list, help="comma-separated thresholds")
    p = sub.add_parser("extremes", help="extreme eigenvalues vs. predictions")
    common(p)
    p.add_argument("--j-list", type=_int_list, default=[1], help="comma-separated indices j (<= 20)")
    p = sub.add_parser("norm", help="norm of L_n(1) vs. its expansion")
    common(p)
    p.add_argument("--order", type=int, choices=[1, 2, 3, 4], default=None,
                   help="accepted for interface symmetry; all orders are tabulated")
    p = sub.add_parser("validate", help="run the invariant suite at reduced scale")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", default=None)
    p.add_argument("--inject-failure", action="store_true",
                   help="perturb a constant to check that the harness reports failures")
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    n_grid = []
    if getattr(args, "n", None) is not None:
        n_grid = [args.n]
    elif getattr(args, "n_grid", None):
        n_grid = args.n_grid
    thresholds = []
    if getattr(args, "x", None) is not None:
        thresholds = [args.x]
    elif getattr(args, "x_grid", None):
        thresholds = args.x_grid
    return ExperimentConfig(
        command=args.command,
        n_grid=n_grid,
        nu=getattr(args, "nu", 1.0),
        thresholds=thresholds,
        j_list=getattr(args, "j_list", [1]) or [1],
        order=getattr(args, "order", None),
        tol=getattr(args, "tol", 0.0),
        output_format=args.format,
        output_path=args.output,
        seed=getattr(args, "seed", None),
        inject_failure=getattr(args, "inject_failure", False),
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        table, status = COMMANDS[cfg.command](cfg)
        _emit(render(table, cfg.output_format), cfg.output_path)
    except ValueError as exc:
        # DomainError derives from ValueError
        print(f"lspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BracketError, ConvergenceError) as exc:
        print(f"lspec: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"lspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
