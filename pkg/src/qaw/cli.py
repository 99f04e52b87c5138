"""Command-line interface: ``qaw <command> [options]``.

Commands
--------
eval        density, phi_h, h_n or Poisson-Mehler values on a grid of x
integrate   int g_n dx by quadrature against its closed form
moments     q-Hermite moments: closed form against quadrature
expand      expansion table A_n, T_j (recursion, with closed forms when n <= 4)
verify      run identity suites (see ``qaw.verify``)
conjecture  scan the product-form guess for int g_5 over q
gasper      Gasper-Rahman integral: quadrature against product form

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
``QAW_MAX_TERMS`` overrides the truncation cap of every infinite product.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import platform
import sys

import numpy as np

from . import __version__
from . import verify as suites
from .density import (
    DensitySpec,
    Family,
    density_value,
    f_h_density,
    moment_quadrature,
    moment_sequence,
    phi_h,
    poisson_mehler,
)
from .errors import QError
from .expand import closed_form_T_all, conjecture_scan, expansion_table, gasper_rahman_check
from .qcore import DEFAULT_EPS_TRUNC, DEFAULT_MAX_TERMS, QContext
from .qpoly import q_hermite
from .quad import integrate_theta
from .symfun import conjugate_pair

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing


def parse_params(text: str | None) -> tuple:
    """``"0.1,-0.2,0.6@0.5"`` -> ``(0.1, -0.2, 0.6e^{0.5i}, 0.6e^{-0.5i})``."""
    if not text:
        return ()
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if "@" in tok:
            rho, eta = (float(v) for v in tok.split("@"))
            out.extend(conjugate_pair(rho, math.cos(eta)))
        else:
            out.append(float(tok))
    return tuple(out)


def parse_floats(text: str | None) -> list[float]:
    if text is None:
        return []
    return [float(v) for v in text.split(",") if v.strip()]


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"0:10"`` (inclusive) or ``"1,4,7"``."""
    out = []
    for tok in text.split(","):
        if ":" in tok:
            lo, hi = (int(v) for v in tok.split(":"))
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(tok))
    if any(n < 0 for n in out):
        raise UsageError("orders must be nonnegative")
    return out


def max_terms_from_env() -> int:
    raw = os.environ.get("QAW_MAX_TERMS")
    if raw is None:
        return DEFAULT_MAX_TERMS
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"QAW_MAX_TERMS must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("QAW_MAX_TERMS must be at least 1")
    return value


def make_context(q: float, args) -> QContext:
    return QContext(q, eps_trunc=args.trunc, max_terms=max_terms_from_env())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", default=None, help="deformation parameter, -1 < q <= 1 (default 0)")
    common.add_argument("--params", default=None, help="comma list; rho@eta expands to a conjugate pair")
    common.add_argument("--family", choices=[f.value for f in Family], default=None)
    common.add_argument("--tol", type=float, default=None, help="pass/fail tolerance")
    common.add_argument("--trunc", type=float, default=DEFAULT_EPS_TRUNC, help="truncation epsilon for products")
    common.add_argument("--format", choices=["json", "csv", "pretty"], default="pretty")
    common.add_argument("--output", default=None, help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="qaw", description="q-Hermite density ladder tools")
    parser.add_argument("--version", action="version", version=f"qaw {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate functions on a grid")
    p.add_argument("--x", default="0", help="comma list of abscissae in [-1, 1]")
    p.add_argument("--y", default=None, help="second variable for --pm")
    p.add_argument("--n", type=int, default=None, help="evaluate h_n instead of a density")
    p.add_argument("--t", type=float, default=None, help="evaluate phi_h(x|t)")
    p.add_argument("--pm", action="store_true", help="evaluate the Poisson-Mehler kernel")
    p.add_argument("--rho", type=float, default=None)

    sub.add_parser("integrate", parents=[common], help="int g_n dx, closed form against quadrature")

    p = sub.add_parser("moments", parents=[common], help="q-Hermite moments")
    p.add_argument("--n", default="0:10", help="orders: 3, 0:10 or 1,4,7")

    p = sub.add_parser("expand", parents=[common], help="expansion table")
    p.add_argument("--n", type=int, default=12, help="highest order reported")

    p = sub.add_parser("verify", parents=[common], help="identity suites")
    p.add_argument("--suite", action="append", default=None, help=f"one of {', '.join(suites.SUITES)} (default all)")

    p = sub.add_parser("conjecture", parents=[common], help="int g_5 product-form probe")
    p.add_argument("--qs", default="-0.5,-0.3,0,0.3,0.5,0.7", help="comma list of q values")

    sub.add_parser("gasper", parents=[common], help="Gasper-Rahman integral")
    return parser


# ---------------------------------------------------------------------------
# commands


def _q(args, default=0.0) -> float:
    return default if args.q is None else float(args.q)


def _spec(args, ctx) -> DensitySpec:
    params = parse_params(args.params)
    family = Family(args.family) if args.family else None
    return DensitySpec.of(params, ctx, family=family)


def cmd_eval(args):
    q = _q(args)
    ctx = make_context(q, args)
    xs = np.asarray(parse_floats(args.x))
    if np.any(np.abs(xs) > 1):
        raise UsageError("--x values must lie in [-1, 1]")
    rows = []
    if args.pm:
        if args.rho is None:
            raise UsageError("--pm needs --rho")
        ys = parse_floats(args.y) or [0.0]
        for y in ys:
            vals = poisson_mehler(xs, y, args.rho, ctx)
            rows.extend({"x": float(x), "y": float(y), "value": float(v)} for x, v in zip(xs, vals))
        return rows, 0
    if args.t is not None:
        vals = phi_h(xs, args.t, ctx)
        return [{"x": float(x), "t": args.t, "value": v} for x, v in zip(xs, vals)], 0
    if args.n is not None:
        if args.n < 0:
            raise UsageError("--n must be nonnegative")
        vals = q_hermite(args.n, xs, q)
        return [{"n": args.n, "x": float(x), "value": float(v)} for x, v in zip(xs, vals)], 0
    if args.family == Family.Q_HERMITE.value and not args.params:
        vals = f_h_density(xs, ctx)
    else:
        vals = density_value(_spec(args, ctx), xs)
    return [{"x": float(x), "value": v} for x, v in zip(xs, np.atleast_1d(vals))], 0


def cmd_integrate(args):
    tol = args.tol = args.tol if args.tol is not None else 1e-9
    ctx = make_context(_q(args), args)
    spec = _spec(args, ctx)
    closed = spec.normalizer()
    quad = integrate_theta(lambda x: density_value(spec, x, normalized=False), tol=min(tol, 1e-12) * 1e-1)
    diff = abs(quad.value - closed) / abs(closed)
    return [{"n": 0, "closed": closed, "quad": quad.value, "diff": diff}], int(diff > tol)


def cmd_moments(args):
    tol = args.tol = args.tol if args.tol is not None else 1e-9
    ctx = make_context(_q(args), args)
    spec = _spec(args, ctx)
    orders = parse_range(args.n)
    closed = moment_sequence(spec, max(orders))
    rows = []
    for n in orders:
        quad = moment_quadrature(spec, n, tol=min(tol, 1e-11) * 1e-1).value
        rows.append({"n": n, "closed": closed[n], "quad": quad, "diff": abs(quad - closed[n])})
    return rows, int(any(r["diff"] > tol for r in rows))


def cmd_expand(args):
    tol = args.tol = args.tol if args.tol is not None else 1e-8
    ctx = make_context(_q(args), args)
    params = parse_params(args.params)
    for a in params:
        if not abs(a) < 1:
            raise UsageError(f"parameter {a!r} must have modulus < 1")
    table = expansion_table(params, ctx, order=args.n)
    closed = closed_form_T_all(len(params), args.n, params, ctx) if len(params) <= 4 and ctx.q != 1 else None
    rows = []
    for j in range(args.n + 1):
        row = {"n": j, "closed": None, "recursion": table.T[j], "diff": None}
        if closed is not None:
            row["closed"] = closed[j]
            row["diff"] = abs(table.T[j] - closed[j])
        rows.append(row)
    meta = {"A": table.A, "J": table.J, "tail_estimate": table.tail_estimate, "provenance": table.provenance.value}
    failed = any(r["diff"] is not None and r["diff"] > tol * max(1.0, abs(r["closed"])) for r in rows)
    return rows, int(failed), meta


def cmd_verify(args):
    names = []
    for s in args.suite or []:
        names.extend(v.strip() for v in s.split(","))
    unknown = [n for n in names if n not in suites.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}")
    results = suites.run(names, q=None if args.q is None else float(args.q))
    return [r.row() for r in results], int(not all(r.passed for r in results))


def cmd_conjecture(args):
    params = parse_params(args.params)
    if len(params) != 5:
        raise UsageError(f"conjecture needs 5 parameters, got {len(params)}")
    qs = [float(args.q)] if args.q is not None else parse_floats(args.qs)
    rows = []
    for q in qs:
        try:
            rows.extend(conjecture_scan(params, [make_context(q, args)]))
        except QError as err:
            rows.append({"q": q, "series": None, "conjectured": None, "signed": None, "residual": None, "error": str(err)})
    for row in rows:
        if isinstance(row["q"], QContext):
            row["q"] = row["q"].q
        row.setdefault("error", "")
    return rows, 0


def cmd_gasper(args):
    tol = args.tol = args.tol if args.tol is not None else 1e-7
    params = parse_params(args.params)
    if len(params) != 5:
        raise UsageError(f"gasper needs 5 parameters, got {len(params)}")
    ctx = make_context(_q(args), args)
    lhs, rhs = gasper_rahman_check(params, ctx)
    diff = abs(lhs / rhs - 1)
    return [{"n": 0, "closed": rhs, "quad": lhs, "diff": diff}], int(diff > tol)


COMMANDS = {
    "eval": cmd_eval,
    "integrate": cmd_integrate,
    "moments": cmd_moments,
    "expand": cmd_expand,
    "verify": cmd_verify,
    "conjecture": cmd_conjecture,
    "gasper": cmd_gasper,
}


# ---------------------------------------------------------------------------
# output


def _plain(v):
    """JSON-safe scalar: complex -> [re, im], numpy -> python."""
    if isinstance(v, (complex, np.complexfloating)):
        v = complex(v)
        return v.real if v.imag == 0 else [v.real, v.imag]
    if isinstance(v, np.generic):
        return v.item()
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    return v


def render(doc: dict, fmt: str) -> str:
    rows = doc["rows"]
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    columns = []
    for row in rows:
        columns.extend(k for k in row if k not in columns)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: "" if row.get(k) is None else _csv_cell(row[k]) for k in columns})
        return buf.getvalue()
    cells = [[_pretty_cell(row.get(k)) for k in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def _csv_cell(v):
    if isinstance(v, list):
        return f"{v[0]!r}{v[1]:+}j"
    return repr(v) if isinstance(v, float) else v


def _pretty_cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, list):
        return f"{v[0]:.10g}{v[1]:+.10g}j"
    return str(v)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        result = COMMANDS[args.command](args)
    except (UsageError, QError, ValueError, ArithmeticError) as err:
        print(f"qaw {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    rows, status = result[0], result[1]
    meta = {
        "trunc": args.trunc,
        "tol": args.tol,
        "versions": {"qaw": __version__, "numpy": np.__version__, "python": platform.python_version()},
    }
    if len(result) > 2:
        meta.update(result[2])
    if args.command == "conjecture":
        q_out = [r["q"] for r in rows]
    else:
        q_out = None if args.q is None and args.command == "verify" else _q(args)
    doc = _plain(
        {
            "command": args.command,
            "q": q_out,
            "params": list(parse_params(args.params)),
            "rows": rows,
            "meta": meta,
        }
    )
    text = render(doc, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
