"""Command-line front end.

    heisacf harmonic --expr "x - 3*y*t - 2*x^3"
    heisacf harmonic --basis 3
    heisacf functional --kind J --expr "x - 3*y*t - 2*x^3" --r-max 0.3 --r-count 16
    heisacf coeffs --expr "x - 3*y*t - 2*x^3" --K 3 --euclid
    heisacf counterexample --alpha 2 1 --euclid-baseline

Exit codes: 0 ok, 1 a mathematical check failed, 2 usage or input error,
3 a non-finite value came out of the quadrature.
"""

from __future__ import annotations

import argparse
import io
import math
import sys
from dataclasses import dataclass
from importlib import metadata
from typing import Sequence

from .errors import DomainError, NonFiniteError, ParseError
from .functionals import (
    DEFAULT_TOL,
    I_euclid,
    I_heis,
    J_beta_heis,
    J_euclid,
    J_heis,
    classify,
    euclid_series_coefficients,
    geometric_grid,
    sample_curve,
    series_coefficients,
)
from .harmonic import h_harmonic_basis
from .operators import kohn_laplacian
from .parse import format_poly, parse
from .poly import Poly3
from .quadrature import DEFAULT_ORDERS, Orders, koranyi_sphere_rule

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

KINDS = ("I", "J", "Jbeta", "Ieuclid", "Jeuclid")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    expr: str | None
    r_min: float
    r_max: float
    r_count: int
    orders: Orders
    beta: float | None
    alpha: tuple[float, float]
    out: str | None
    format: str
    tol: float

    def validate(self) -> None:
        if not 0 < self.r_min < self.r_max:
            raise UsageError(f"need 0 < --r-min < --r-max, got {self.r_min} and {self.r_max}")
        if self.r_count < 3:
            raise UsageError(f"--r-count must be at least 3, got {self.r_count}")
        o = self.orders
        if o.n_phi < 2 or o.n_theta < 4 or o.n_theta % 4 or o.n_r < 1:
            raise UsageError(
                f"bad orders n_phi={o.n_phi} n_theta={o.n_theta} n_r={o.n_r} "
                "(need n_phi >= 2, n_theta >= 4 and a multiple of 4, n_r >= 1)"
            )
        if self.beta is not None and not self.beta > 0:
            raise UsageError(f"--beta must be positive, got {self.beta}")
        if not (self.alpha[0] > 0 and self.alpha[1] > 0):
            raise UsageError(f"--alpha values must be positive, got {self.alpha}")
        if not self.tol > 0:
            raise UsageError(f"--tol must be positive, got {self.tol}")


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def _num(v: float) -> str:
    return f"{v:.17g}"


def _common(p: argparse.ArgumentParser, r_max: float = 0.5, r_count: int = 24) -> None:
    p.add_argument("--expr", help="polynomial in x, y, t, e.g. 'x - 3*y*t - 2*x^3'")
    p.add_argument("--r-min", type=float, default=0.02)
    p.add_argument("--r-max", type=float, default=r_max)
    p.add_argument("--r-count", type=int, default=r_count)
    p.add_argument("--n-phi", type=int, default=DEFAULT_ORDERS.n_phi)
    p.add_argument("--n-theta", type=int, default=DEFAULT_ORDERS.n_theta)
    p.add_argument("--n-r", type=int, default=DEFAULT_ORDERS.n_r)
    p.add_argument("--beta", type=float)
    p.add_argument("--alpha", type=float, nargs=2, metavar=("A1", "A2"))
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--format", choices=("csv", "table"), default="csv")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heisacf", description="Heisenberg-group monotonicity checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("harmonic", help="test Kohn-harmonicity or list a harmonic basis")
    _common(p)
    p.add_argument("--basis", type=int, metavar="D", help="print a basis of H1-harmonic polynomials of degree D")

    p = sub.add_parser("functional", help="sample a functional on a geometric r-grid")
    _common(p)
    p.add_argument("--kind", choices=KINDS, required=True)

    p = sub.add_parser("coeffs", help="series coefficients a_k and a_{h,k}")
    _common(p)
    p.add_argument("--K", type=int, help="truncation degree (default: degree of the input)")
    p.add_argument("--euclid", action="store_true", help="also emit the Euclidean coefficients")

    p = sub.add_parser("counterexample", help="reproduce the decreasing counterexample")
    _common(p, r_max=0.3, r_count=16)
    p.add_argument("--euclid-baseline", action="store_true")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        expr=args.expr,
        r_min=args.r_min,
        r_max=args.r_max,
        r_count=args.r_count,
        orders=Orders(args.n_phi, args.n_theta, args.n_r),
        beta=args.beta,
        alpha=tuple(args.alpha) if args.alpha else (1.0, 1.0),
        out=args.out,
        format=args.format,
        tol=args.tol,
    )
    cfg.validate()
    return cfg


def _require_expr(cfg: RunConfig) -> Poly3:
    if not cfg.expr:
        raise UsageError(f"{cfg.command} needs --expr")
    return parse(cfg.expr)


def _meta(cfg: RunConfig, **extra) -> list[str]:
    o = cfg.orders
    lines = [
        f"# heisacf {_version()} {cfg.command}",
        f"# orders n_phi={o.n_phi} n_theta={o.n_theta} n_r={o.n_r} escalation={o.escalation}",
        f"# tol={cfg.tol:g}",
    ]
    lines += [f"# {k}={v}" for k, v in extra.items()]
    return lines


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> list[str]:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    fmt = lambda row: "  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip()
    return [fmt(header), fmt(["-" * w for w in widths])] + [fmt(r) for r in rows]


def _rows(cfg: RunConfig, header: Sequence[str], rows: Sequence[Sequence[str]]) -> list[str]:
    if cfg.format == "table":
        return _table(header, rows)
    return [",".join(header)] + [",".join(r) for r in rows]


# -- commands --------------------------------------------------------------------


def cmd_harmonic(cfg: RunConfig, basis: int | None, out: io.TextIOBase) -> int:
    if basis is not None:
        for p in h_harmonic_basis(basis):
            out.write(format_poly(p) + "\n")
        return EXIT_OK
    u = _require_expr(cfg)
    res = kohn_laplacian(u)
    if res.is_zero():
        out.write("H1-harmonic: yes\n")
        return EXIT_OK
    out.write(f"H1-harmonic: no; residual = {format_poly(res)}\n")
    return EXIT_CHECK


def _functional(kind: str, u: Poly3, cfg: RunConfig):
    o = cfg.orders
    a1, a2 = cfg.alpha
    if kind == "I":
        return lambda r: I_heis(u, r, o)
    if kind == "J":
        return lambda r: J_heis(u, r, o, a1, a2)
    if kind == "Jbeta":
        if cfg.beta is None:
            raise UsageError("--kind Jbeta needs --beta")
        return lambda r: J_beta_heis(u, cfg.beta, r, o, a1, a2)
    if kind == "Ieuclid":
        return lambda r: I_euclid(u, r, o)
    return lambda r: J_euclid(u, r, o, a1, a2)


def cmd_functional(cfg: RunConfig, kind: str, out: io.TextIOBase) -> int:
    u = _require_expr(cfg)
    fn = _functional(kind, u, cfg)
    radii = geometric_grid(cfg.r_min, cfg.r_max, cfg.r_count)
    curve = sample_curve(fn, radii, kind, format_poly(u), cfg.orders)
    verdict = classify(curve, cfg.tol)
    extra = {"functional": kind, "expr": format_poly(u)}
    if kind == "Jbeta":
        extra["beta"] = _num(cfg.beta)
    if kind in ("J", "Jbeta", "Jeuclid"):
        extra["alpha"] = f"{_num(cfg.alpha[0])} {_num(cfg.alpha[1])}"
    lines = _meta(cfg, **extra)
    lines += _rows(cfg, ["r", "value"], [[_num(r), _num(v)] for r, v in curve.samples])
    lines.append(f"# verdict={verdict.kind} max_violation={verdict.evidence:.3e}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_coeffs(cfg: RunConfig, K: int | None, euclid: bool, out: io.TextIOBase) -> int:
    u = _require_expr(cfg)
    if K is not None and K < 1:
        raise UsageError(f"--K must be at least 1, got {K}")
    rule = koranyi_sphere_rule(cfg.orders.n_phi, cfg.orders.n_theta)
    rows = []
    sets = [("", series_coefficients(u, K, rule))]
    if euclid:
        sets.append(("euclid_", euclid_series_coefficients(u, K, cfg.orders.n_phi)))
    for prefix, sc in sets:
        for k in range(1, sc.K + 1):
            rows.append([f"{prefix}diag", str(k), "", _num(sc.a(k))])
        for k in range(2, sc.K + 1):
            for h in range(1, k):
                rows.append([f"{prefix}cross", str(k), str(h), _num(sc.a_cross(k, h))])
    lines = _meta(cfg, expr=format_poly(u))
    lines += _rows(cfg, ["kind", "k", "h", "value"], rows)
    sc = sets[0][1]
    if sc.K >= 3:
        lines.append(f"# a2+2*a31={_num(sc.near_zero_quantity())}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_counterexample(cfg: RunConfig, alpha_given: bool, euclid: bool, out: io.TextIOBase) -> int:
    from .reproduce import run_counterexample

    rep = run_counterexample(
        cfg.r_min,
        cfg.r_max,
        cfg.r_count,
        cfg.orders,
        cfg.tol,
        alpha=cfg.alpha if alpha_given else None,
        euclid_baseline=euclid,
    )
    lines = _meta(cfg, expr=rep.I_curve.expr)
    rows = [[_num(r), _num(i), _num(j)] for r, i, j in zip(rep.radii, rep.I_curve.values, rep.J_curve.values)]
    lines += _rows(cfg, ["r", "I", "J"], rows)
    a1, c2, a3 = rep.fit
    lines.append(f"# fit a1={_num(a1)} c2={_num(c2)} a3={_num(a3)}")
    lines += [f"# {n}" for n in rep.notes]
    lines.append(f"# phase_symmetry max_rel={rep.phase_residual:.3e}")
    for c in rep.checks:
        lines.append(f"# check {c.name}: {'pass' if c.passed else 'FAIL'} ({c.detail})")
    rel_a1 = abs(a1 - math.pi**2) / math.pi**2
    lines.append(
        f"# I: {rep.I_verdict.kind}; J: {rep.J_verdict.kind}; "
        f"max |I+-I-|/I = {rep.phase_residual:.1e}; a1 = pi^2 (rel err {rel_a1:.1e})"
    )
    out.write("\n".join(lines) + "\n")
    failed = rep.failed()
    if failed:
        for c in failed:
            sys.stderr.write(f"heisacf: check failed: {c.name}: {c.detail}\n")
        return EXIT_CHECK
    return EXIT_OK


# -- entry point -------------------------------------------------------------------


def _report_parse_error(expr: str, err: ParseError) -> None:
    sys.stderr.write(f"heisacf: parse error: {err}\n")
    raw = expr.encode("utf-8")
    col = len(raw[: err.offset].decode("utf-8", errors="replace"))
    sys.stderr.write(f"  {expr}\n  {' ' * col}^\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    buf = io.StringIO()
    try:
        cfg = _config(args)
        if args.command == "harmonic":
            code = cmd_harmonic(cfg, args.basis, buf)
        elif args.command == "functional":
            code = cmd_functional(cfg, args.kind, buf)
        elif args.command == "coeffs":
            code = cmd_coeffs(cfg, args.K, args.euclid, buf)
        else:
            code = cmd_counterexample(cfg, args.alpha is not None, args.euclid_baseline, buf)
    except UsageError as e:
        sys.stderr.write(f"heisacf: {e}\n")
        return EXIT_USAGE
    except ParseError as e:
        _report_parse_error(args.expr or "", e)
        return EXIT_USAGE
    except DomainError as e:
        sys.stderr.write(f"heisacf: {e}\n")
        return EXIT_USAGE
    except NonFiniteError as e:
        sys.stderr.write(f"heisacf: non-finite value: {e}\n")
        return EXIT_NUMERIC

    text = buf.getvalue()
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
