"""Command-line front end: adelic-codes {code,audit,beta,rr,selftest}.

Exit status is 0 on success, 2 when an audit records a bound violation and
1 on any error. Output files are deterministic; the only run metadata is the
leading ``#`` comment line.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from . import __version__, selftest
from .adele import degree, local_smith_form
from .codes import build_code_F, build_code_Omega, distance_bound_audit
from .codes.linear import DEFAULT_BUDGET
from .cohomology import h0_basis, h1_dim, splitting_type
from .curve import d_special_differential, parse_divisor, riemann_roch_basis
from .mass import calibrate_convention
from .specfile import JobSpec, read_spec

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2
DEFAULT_PRECISION = 8


def _header(command: str, spec_text: str | None = None) -> str:
    parts = [f"adelic-codes {__version__}", f"command={command}"]
    if spec_text is not None:
        parts.append("spec-sha256=" + hashlib.sha256(spec_text.encode()).hexdigest()[:16])
    return "# " + " ".join(parts) + "\n"


def format_section(f) -> str:
    return "(" + ", ".join(c.format() for c in f) + ")"


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def _load(path: str) -> tuple[JobSpec, str]:
    text = Path(path).read_text(encoding="utf-8")
    return read_spec(path), text


def _settings(args, spec: JobSpec):
    budget = args.budget or spec.budget or DEFAULT_BUDGET
    precision = args.precision or spec.precision or DEFAULT_PRECISION
    return budget, precision


def _require_D(spec: JobSpec):
    if spec.D is None:
        raise ValueError("this command needs a divisor D in the spec file")
    return spec.D


def _smith_lines(g, precision: int) -> list[str]:
    lines = []
    for p in g.places:
        S = local_smith_form(g, p, precision)
        if not S.check_series(precision):
            raise AssertionError(f"Smith form at {p.format()} failed its series check")
        lines.append(f"orders.{p.format()} = {','.join(map(str, S.orders))}")
    return lines


def _write(out: Path, name: str, header: str, body: str):
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(header + body, encoding="utf-8")


def cmd_code(args) -> int:
    spec, text = _load(args.spec)
    budget, precision = _settings(args, spec)
    D = _require_D(spec)
    g = spec.g
    w0 = d_special_differential(D)
    C = build_code_F(D, g)
    Cd = build_code_Omega(D, g, w0)
    report = distance_bound_audit(D, g, budget, w0)
    body = report.to_text() + "".join(line + "\n" for line in _smith_lines(g, precision))
    header = _header("code", text)
    out = Path(args.out)
    _write(out, "C_F.txt", header, C.format_matrix())
    _write(out, "C_Omega.txt", header, Cd.format_matrix())
    _write(out, "report.txt", header, body)
    sys.stdout.write(body)
    return EXIT_OK


def cmd_audit(args) -> int:
    spec, text = _load(args.spec)
    budget, precision = _settings(args, spec)
    D = _require_D(spec)
    g = spec.g
    report = distance_bound_audit(D, g, budget)
    body = report.to_text() + "".join(line + "\n" for line in _smith_lines(g, precision))
    for c in report.violations:
        body += f"violation: {c.name}; {c.detail}\n"
    if args.out:
        _write(Path(args.out), "audit.txt", _header("audit", text), body)
    sys.stdout.write(body)
    return EXIT_VIOLATION if report.violations else EXIT_OK


def cmd_beta(args) -> int:
    report = calibrate_convention(tuple(args.q), tuple(args.r), args.alpha, truncation=args.truncation)
    body = report.format_table()
    if args.keyvalue:
        body += "\n" + report.format_keyvalue()
    if args.out:
        _write(Path(args.out), "beta.txt", _header("beta"), body)
    sys.stdout.write(body)
    return EXIT_OK


def cmd_rr(args) -> int:
    lines = []
    if args.spec:
        spec, text = _load(args.spec)
        F, E = spec.F, spec.E
        if args.divisor:
            E = parse_divisor(args.divisor, F)
    else:
        if not (args.q and args.divisor):
            raise ValueError("rr needs a spec file, or --q and --divisor")
        from .specfile import parse_spec

        spec, text = None, None
        F = parse_spec(f"field: {args.q[0]}\n").F
        E = parse_divisor(args.divisor, F)
    if E is not None:
        basis = riemann_roch_basis(E)
        lines.append(f"E = {E.format()}")
        lines.append(f"l(E) = {len(basis)}")
        lines += [f"L.{i} = {f.format()}" for i, f in enumerate(basis)]
    if spec is not None and (spec.blocks or spec.E is not None):
        g = spec.g
        S = h0_basis(g)
        lines.append(f"rank = {g.r}")
        lines.append(f"degree = {degree(g)}")
        lines.append(f"h0 = {S.dim}")
        lines.append(f"h1 = {h1_dim(g)}")
        lines.append(f"splitting_type = {','.join(map(str, splitting_type(g)))}")
        lines += [f"H0.{i} = {format_section(f)}" for i, f in enumerate(S.basis)]
    body = "\n".join(lines) + "\n"
    if args.out:
        _write(Path(args.out), "rr.txt", _header("rr", text), body)
    sys.stdout.write(body)
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = selftest.run(args.seed)
    sys.stdout.write(selftest.report(results, args.seed))
    return EXIT_OK if all(r.ok for r in results) else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adelic-codes", description="Rank-r adelic codes on the projective line.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("spec", help="job spec file")
        p.add_argument("--budget", type=int, help=f"enumeration budget q^k for exact distance (default {DEFAULT_BUDGET})")
        p.add_argument("--precision", type=int, help=f"local expansion precision (default {DEFAULT_PRECISION})")

    p = sub.add_parser("code", help="build C_F and C_Omega, write generator matrices and a report")
    common(p)
    p.add_argument("--out", default=".", help="output directory (default: current directory)")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("audit", help="audit the distance and dimension bounds; exit 2 on a violation")
    common(p)
    p.add_argument("--out", help="also write audit.txt into this directory")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("beta", help="calibrate the mass formula against the P^1 oracle")
    p.add_argument("--q", type=_int_list, default=[2, 3], help="comma-separated field sizes")
    p.add_argument("--r", type=_int_list, default=[1, 2, 3], help="comma-separated ranks")
    p.add_argument("--alpha", type=int, default=0, help="degree per rank (d = r * alpha)")
    p.add_argument("--truncation", type=int, default=30, help="splitting-type spread for the total-mass oracle")
    p.add_argument("--keyvalue", action="store_true", help="append a machine-readable key/value block")
    p.add_argument("--out", help="also write beta.txt into this directory")
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("rr", help="list a Riemann-Roch basis and the global sections of g")
    p.add_argument("spec", nargs="?", help="job spec file")
    p.add_argument("--q", type=_int_list, help="field size when no spec is given")
    p.add_argument("--divisor", help="divisor E, e.g. '2*(inf) - (x)'")
    p.add_argument("--out", help="also write rr.txt into this directory")
    p.set_defaults(func=cmd_rr)

    p = sub.add_parser("selftest", help="run the seeded invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses status 2 for usage errors; 2 is reserved for violations here
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except KeyboardInterrupt:
        raise
    except Exception as exc:  # every failure is reported, never a traceback
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
