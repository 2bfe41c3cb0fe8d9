"""Command line interface: ``fracle <solve|sweep|tables|verify>``."""
import argparse
from concurrent.futures import ThreadPoolExecutor
import csv
import json
import math
from pathlib import Path
import sys
import time

import numpy as np

from . import __version__
from .diagnostics import (
    convergence_study,
    rate_of_convergence,
    residual_error,
    stability_report,
)
from .exceptions import (
    ConfigurationError,
    ConvergenceError,
    DomainError,
    FracleError,
    OracleError,
    SingularSystemError,
)
from .problems import builtin, classical_reference, make_nonlinearity
from .solver import (
    ProblemSpec,
    SolverConfig,
    eval_caputo_beta,
    eval_solution,
    qlm_solve,
    residual_values,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONVERGENCE, EXIT_SINGULAR, EXIT_ORACLE = 0, 1, 2, 3, 4, 5

TABLE_ORDERS = [(1.55, 0.55), (1.65, 0.65), (1.75, 0.75), (1.85, 0.85), (1.95, 0.95), (1.99, 0.99)]
STUDY_ORDERS = [(1.85, 0.85), (1.95, 0.95), (1.99, 0.99)]
STABILITY_ORDERS = [(1.75, 0.75), (1.85, 0.85), (1.95, 0.95)]
VERIFY_ORDERS = [(1.85, 0.85), (1.95, 0.95), (1.99, 0.99), (2.0, 1.0)]
VERIFY_TOL = 5e-3


# -- serialization ---------------------------------------------------------

def fmt(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    return str(value)


def _json(obj, indent=0):
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(inner + _json(v, indent + 1) for v in obj) + "\n" + pad + "]"
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if math.isfinite(obj) else "null"
    return json.dumps(str(obj))


def write_csv(stream, header, rows):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(row.get(h)) for h in header])


def _open_out(path):
    if path is None:
        return sys.stdout
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", encoding="utf-8", newline="\n")


def emit(path, header, rows, fmt_name, manifest, meta):
    stream = _open_out(path)
    try:
        if fmt_name == "json":
            stream.write(_json({"manifest": manifest, "rows": [{h: r.get(h) for h in header} for r in rows],
                                "meta": meta}) + "\n")
        else:
            write_csv(stream, header, rows)
    finally:
        if stream is not sys.stdout:
            stream.close()


# -- argument handling -----------------------------------------------------

def _float_list(text):
    try:
        return [float(t) for t in str(text).split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated reals, got {text!r}") from None


def _level_list(text):
    text = str(text)
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            levels = list(range(int(lo), int(hi) + 1))
        else:
            levels = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n, n1..n2 or n1,n2,..., got {text!r}") from None
    if not levels:
        raise argparse.ArgumentTypeError(f"empty level list {text!r}")
    return levels


def build_parser():
    parser = argparse.ArgumentParser(prog="fracle", description="Fractional Lane-Emden Haar collocation solver")
    parser.add_argument("--version", action="version", version=f"fracle {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--case", type=int, choices=(1, 2, 3), help="built-in test case")
        p.add_argument("--spec", type=Path, help="JSON file with an inline problem")
        p.add_argument("--alpha", type=_float_list, help="order alpha (or comma list)")
        p.add_argument("--beta", type=_float_list, help="order beta (or comma list)")
        p.add_argument("-J", dest="J", type=_level_list, help="level n, range n1..n2 or list")
        p.add_argument("--tol", type=float, default=1e-12)
        p.add_argument("--max-iter", type=int, default=50)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="output file (directory for 'tables')")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--dense-residual", type=int, help="also report the residual on n uniform midpoints")
        p.add_argument("--diagnostics", action="store_true", help="compute ||T^-1||_2 and kappa(T)")
        p.add_argument("--timing", action="store_true", help="record wall time in meta (breaks byte-identity)")

    for name, help_ in (("solve", "solve one problem"), ("sweep", "sweep orders and levels"),
                        ("tables", "regenerate the residual, rate and stability tables for a case"),
                        ("verify", "compare the alpha->2, beta->1 limit with the classical oracle")):
        common(sub.add_parser(name, help=help_))
    return parser


def _manifest(args):
    keys = ("command", "case", "spec", "alpha", "beta", "J", "tol", "max_iter", "format",
            "out", "jobs", "dense_residual", "diagnostics")
    return {k: (str(getattr(args, k)) if isinstance(getattr(args, k), Path) else getattr(args, k)) for k in keys}


def load_spec(path, alpha=None, beta=None):
    """Build a ProblemSpec from a JSON file.

    Keys: alpha, beta, lambda, a, b, c, d, name and ``f`` (``{"kind": "zero"}``,
    ``{"kind": "power", "power": 5, "coef": 1}`` or ``{"kind": "exp", "rate": -1, "coef": 1}``).
    """
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise ConfigurationError(f"cannot read spec {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigurationError(f"spec {path} must hold a JSON object")
    nl = dict(data.get("f", {"kind": "zero"}))
    try:
        f, fp = make_nonlinearity(nl.pop("kind", "zero"), **nl)
    except TypeError as exc:
        raise ConfigurationError(f"bad nonlinearity parameters in {path}: {exc}") from None
    return ProblemSpec(
        alpha if alpha is not None else data.get("alpha", 2.0),
        beta if beta is not None else data.get("beta", 1.0),
        data.get("lambda", 2.0), f, fp,
        data.get("a", 0.0), data.get("b", 0.0), data.get("c", 0.0), data.get("d", 1.0),
        name=data.get("name", "inline"),
    )


def _problem_factory(args):
    if (args.case is None) == (args.spec is None):
        raise ConfigurationError("give exactly one of --case or --spec")
    if args.case is not None:
        return lambda al, be: builtin(args.case, al, be)
    return lambda al, be: load_spec(args.spec, al, be)


def _order_pairs(args, default):
    if args.alpha is None and args.beta is None:
        return list(default)
    alphas = args.alpha or [None]
    betas = args.beta or [None]
    if len(alphas) == 1:
        alphas = alphas * len(betas)
    if len(betas) == 1:
        betas = betas * len(alphas)
    if len(alphas) != len(betas):
        raise ConfigurationError("--alpha and --beta lists must have equal length (or one scalar)")
    if args.spec is None and None in alphas + betas:
        raise ConfigurationError("both --alpha and --beta are required with --case")
    return list(zip(alphas, betas))


def _config(args, J, diagnostics=None):
    return SolverConfig(J=J, tol=args.tol, max_iter=args.max_iter, compute_diagnostics=diagnostics)


# -- commands --------------------------------------------------------------

def cmd_solve(args):
    make = _problem_factory(args)
    pairs = _order_pairs(args, [])
    if len(pairs) > 1 or (args.case is not None and not pairs):
        raise ConfigurationError("solve needs scalar --alpha and --beta")
    al, be = pairs[0] if pairs else (None, None)
    levels = args.J or [6]
    if len(levels) != 1:
        raise ConfigurationError("solve needs a single -J level")
    problem = make(al, be)
    sol = qlm_solve(problem, _config(args, levels[0], True if args.diagnostics else None))

    rows = []
    for kind, xs in (("collocation", sol.grid.collocation_points), ("plot", np.linspace(0.0, 1.0, 201))):
        ys = eval_solution(sol, xs)
        dys = eval_caputo_beta(sol, xs)
        rows += [{"kind": kind, "x": x, "y": y, "dbeta_y": dy} for x, y, dy in zip(xs, ys, dys)]
    summary = {
        "problem": problem.name, "alpha": problem.alpha, "beta": problem.beta, "J": sol.grid.J,
        "N": sol.grid.N, "residual_error": residual_error(sol, "tables"),
        "collocation_residual": residual_error(sol, "collocation"),
        "iterations": sol.iterations, "last_update": sol.last_update,
        "inv_norm": sol.inv_norm, "kappa": sol.kappa,
    }
    if args.dense_residual:
        summary["dense_residual"] = residual_error(sol, args.dense_residual)
    header = ["kind", "x", "y", "dbeta_y"]
    if args.format == "json":
        emit(args.out, header, rows, "json", _manifest(args), {**_meta(args), **summary})
    else:
        srows = [{"key": k, "value": v} for k, v in summary.items()]
        if args.out is None:
            emit(None, ["key", "value"], srows, "csv", None, None)
        else:
            out = Path(args.out)
            emit(out, header, rows, "csv", None, None)
            emit(out.with_name(out.stem + ".summary.csv"), ["key", "value"], srows, "csv", None, None)
    return EXIT_OK


def cmd_sweep(args):
    make = _problem_factory(args)
    pairs = _order_pairs(args, STUDY_ORDERS)
    levels = sorted(set(args.J or [6]))

    def run(cell):
        (al, be), J = cell
        sol = qlm_solve(make(al, be), _config(args, J, True if args.diagnostics else False))
        row = {"alpha": sol.problem.alpha, "beta": sol.problem.beta, "J": J,
               "E_res": residual_error(sol, "tables"), "iterations": sol.iterations,
               "inv_norm": sol.inv_norm, "kappa": sol.kappa}
        if args.dense_residual:
            row["dense_residual"] = residual_error(sol, args.dense_residual)
        return row

    cells = [(p, J) for p in pairs for J in levels]
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        rows = list(pool.map(run, cells))
    for prev, row in zip([None] + rows[:-1], rows):
        row["case"] = args.case if args.case is not None else "inline"
        if prev and (prev["alpha"], prev["beta"]) == (row["alpha"], row["beta"]) and prev["J"] == row["J"] - 1:
            row["RoC"] = rate_of_convergence(prev["E_res"], row["E_res"])
    header = ["case", "alpha", "beta", "J", "E_res", "RoC", "iterations", "inv_norm", "kappa"]
    if args.dense_residual:
        header.append("dense_residual")
    emit(args.out, header, rows, args.format, _manifest(args), _meta(args))
    return EXIT_OK


def _tag(al, be):
    return f"a{al:g}_b{be:g}".replace(".", "p")


def cmd_tables(args):
    if args.case is None:
        raise ConfigurationError("tables needs --case")
    case = args.case
    levels = args.J or list(range(1, 11))
    config = _config(args, 6, False)
    outdir = Path(args.out or f"tables_case{case}")
    tables = {}

    orders = TABLE_ORDERS + ([(2.0, 1.0)] if case == 2 else [])

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        sols = list(pool.map(lambda pair: qlm_solve(builtin(case, *pair), config), orders))
    tables["residual_J6"] = (["alpha", "beta", "E_res"],
                             [{"alpha": al, "beta": be, "E_res": residual_error(s, "tables")}
                              for (al, be), s in zip(orders, sols)])
    xs_plot = np.linspace(0.0, 1.0, 201)
    xs_res = (np.arange(200) + 0.5) / 200
    sol_cols = {_tag(*p): eval_solution(s, xs_plot) for p, s in zip(orders, sols)}
    tables["fig_solution_J6"] = (["x"] + list(sol_cols),
                                 [{"x": x, **{k: v[i] for k, v in sol_cols.items()}} for i, x in enumerate(xs_plot)])
    res_cols = {_tag(*p): residual_values(s, xs_res) for p, s in zip(orders, sols)}
    tables["fig_residual_J6"] = (["x"] + list(res_cols),
                                 [{"x": x, **{k: v[i] for k, v in res_cols.items()}} for i, x in enumerate(xs_res)])

    for al, be in STUDY_ORDERS:
        rows = convergence_study(builtin(case, al, be), min(levels), max(levels), config, jobs=args.jobs)
        tables[f"convergence_{_tag(al, be)}"] = (
            ["J", "E_res", "RoC", "iterations"],
            [{"J": r.J, "E_res": r.E_res, "RoC": r.RoC, "iterations": r.iterations} for r in rows])

    stab_levels = [J for J in range(1, 7) if J <= max(levels)]
    if stab_levels:
        cells = stability_report(builtin(case, 1.75, 0.75), STABILITY_ORDERS, stab_levels, config, jobs=args.jobs)
        for key in ("inv_norm", "kappa"):
            header = ["alpha", "beta"] + [f"J{J}" for J in stab_levels]
            rows = []
            for al, be in STABILITY_ORDERS:
                row = {"alpha": al, "beta": be}
                for c in cells:
                    if (c.alpha, c.beta) == (al, be):
                        row[f"J{c.J}"] = getattr(c, key)
                rows.append(row)
            tables[f"stability_{key}"] = (header, rows)

    if args.format == "json":
        rows = [{"table": name, **row} for name, (_, trows) in tables.items() for row in trows]
        stream = _open_out(outdir / "tables.json")
        with stream:
            stream.write(_json({"manifest": _manifest(args), "rows": rows, "meta": _meta(args)}) + "\n")
    else:
        for name, (header, rows) in tables.items():
            emit(outdir / f"{name}.csv", header, rows, "csv", None, None)
    return EXIT_OK


def cmd_verify(args):
    if args.case is None:
        raise ConfigurationError("verify needs --case")
    case = args.case
    J = (args.J or [6])[0]
    config = _config(args, J, False)
    pairs = _order_pairs(args, VERIFY_ORDERS)
    sols = [qlm_solve(builtin(case, al, be), config) for al, be in pairs]
    xs = sols[0].grid.collocation_points
    ref = classical_reference(case, np.concatenate([xs, [0.5]]))
    rows = []
    for (al, be), sol in zip(pairs, sols):
        y = eval_solution(sol, xs)
        rows.append({"alpha": al, "beta": be, "J": J,
                     "max_deviation": float(np.max(np.abs(y - ref[:-1]))),
                     "deviation_at_half": abs(eval_solution(sol, 0.5) - ref[-1])})
    emit(args.out, ["alpha", "beta", "J", "max_deviation", "deviation_at_half"], rows,
         args.format, _manifest(args), _meta(args))
    limit = [r for r in rows if (r["alpha"], r["beta"]) == (2.0, 1.0)]
    if not limit:
        return EXIT_OK
    return EXIT_OK if limit[0]["max_deviation"] <= VERIFY_TOL else EXIT_FAIL


COMMANDS = {"solve": cmd_solve, "sweep": cmd_sweep, "tables": cmd_tables, "verify": cmd_verify}


def _meta(args):
    runtime = None
    if args.timing:
        runtime = round((time.perf_counter() - args._t0) * 1000.0, 3)
    return {"version": __version__, "runtime_ms": runtime}


def _exit_code(exc):
    if isinstance(exc, ConvergenceError):
        return EXIT_CONVERGENCE
    if isinstance(exc, SingularSystemError):
        return EXIT_SINGULAR
    if isinstance(exc, OracleError):
        return EXIT_ORACLE
    if isinstance(exc, (ConfigurationError, DomainError)):
        return EXIT_USAGE
    return EXIT_FAIL


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args._t0 = time.perf_counter()
    try:
        return COMMANDS[args.command](args)
    except FracleError as exc:
        code = _exit_code(exc)
        record = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
        if isinstance(exc, ConvergenceError):
            record["last_update"] = exc.last_update
        if isinstance(exc, OracleError):
            record["bracket"] = list(exc.bracket)
        sys.stderr.write(_json(record) + "\n")
        return code


if __name__ == "__main__":
    sys.exit(main())
