"""Command-line front end.

    twosided gen two-sided --n 5 --method rec
    twosided gamma --n-max 9 --method expand --format csv
    twosided verify --suite theorems --max-n 6
    twosided export --n-max 12 --dir out/

Exit codes: 0 success, 1 usage error, 2 theorem-class failure (or a gamma row
that could not be expanded), 3 internal error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import gammalab, genpoly, verify
from .exactpoly import InternalError, LinearSystemError, Polynomial
from .genpoly import PolyFamily
from .permstat import Permutation, SignedPermutation

log = logging.getLogger("twosided")

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INTERNAL = 0, 1, 2, 3

BRUTE_CAPS = {"S": 11, "B": 8, "I": 11}
REC_CAP = 40
EXPAND_CAP = 20
FAMILY_DOMAIN = {
    "eulerian": "S", "eulerian-homog": "S", "two-sided": "S", "two-sided-homog": "S",
    "two-sided-tau": "S", "reversal-homog": "S", "cyclic": "S",
    "type-B": "B", "type-B-tau": "B", "invseq": "I",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def env_cap(cap: int) -> int:
    """EULERIAN_MAX_N may lower a hard cap, never raise it."""
    raw = os.environ.get("EULERIAN_MAX_N")
    if not raw:
        return cap
    try:
        return min(cap, int(raw))
    except ValueError:
        raise UsageError(f"EULERIAN_MAX_N must be an integer, got {raw!r}") from None


def family_cap(kind: str, method: str) -> int:
    if method == "rec":
        return env_cap(REC_CAP)
    return env_cap(BRUTE_CAPS[FAMILY_DOMAIN[kind]])


# -- formatting -----------------------------------------------------------------

def _power(base: str, k: int, wrap: bool) -> str:
    if k == 0:
        return ""
    b = f"({base})" if wrap or k > 1 else base
    return b if k == 1 else f"{b}^{k}"


_PRETTY_BASES = {
    "two-sided-homog": ("four-variable", ("stxy", "st+xy", "tx+sy")),
    "two-sided": ("bivariate", ("st", "s+t", "1+st")),
    "eulerian-homog": ("univariate", ("ty", None, "t+y")),
}


def pretty_expansion(row: gammalab.GammaRow, names, m: int) -> str:
    mono, first, second = names
    parts = []
    for key, c in row.nonzero().items():
        i, j = key[0], (key[1] if len(key) > 1 else 0)
        k = m - 2 * i - j
        body = (_power(mono, i, False) + (_power(first, j, True) if first else "")
                + _power(second, k, True))
        parts.append((c, body or "1"))
    out = ""
    for c, body in parts:
        mag = abs(c)
        if body == "1":
            term = str(mag)
        else:
            term = body if mag == 1 else f"{mag}{body}"
        if not out:
            out = ("-" if c < 0 else "") + term
        else:
            out += f" {'-' if c < 0 else '+'} {term}"
    return out or "0"


def pretty_polynomial(p: Polynomial, kind: str, n: int) -> str:
    if kind in _PRETTY_BASES:
        flavor, names = _PRETTY_BASES[kind]
        try:
            row = gammalab.expand_gamma(p, gammalab.BasisSpec(flavor, n + 1), n)
            if not row.non_integers():
                return pretty_expansion(row, names, n + 1)
        except LinearSystemError:
            pass
    return str(p)


def format_polynomial(p: Polynomial, fmt: str, kind: str, n: int) -> str:
    if fmt == "json":
        return p.to_json() + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([*p.vars, "coeff"])
        for e, c in p.terms():
            w.writerow([*e, c])
        return buf.getvalue()
    return pretty_polynomial(p, kind, n) + "\n"


def format_gamma(rows, fmt: str, flavor: str, method: str) -> str:
    if fmt == "csv":
        return gammalab.rows_csv(rows)
    if fmt == "json":
        return json.dumps({"flavor": flavor, "method": method,
                           "rows": [r.to_dict() for r in rows]}) + "\n"
    lines = []
    for r in rows:
        cells = " ".join(f"{','.join(map(str, k))}:{v}" for k, v in r.nonzero().items())
        lines.append(f"n={r.n}  {cells}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands -------------------------------------------------------------------

def _parse_tau(kind: str, text: str | None, n: int):
    if kind not in genpoly.TAU_FAMILIES:
        if text is not None:
            raise UsageError(f"family {kind} does not take --tau")
        return None
    if text is None:
        raise UsageError(f"family {kind} requires --tau (a permutation of size {n})")
    cls = Permutation if genpoly.TAU_FAMILIES[kind] == "S" else SignedPermutation
    try:
        tau = cls.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad --tau: {exc}") from None
    if len(tau) != n:
        raise UsageError(f"--tau has size {len(tau)} but --n is {n}")
    return tau


def cmd_gen(args) -> int:
    kind, method, n = args.family, args.method, args.n
    if method == "rec" and kind not in genpoly.REC:
        raise UsageError(f"family {kind} has no recurrence; valid with --method rec: "
                         f"{', '.join(genpoly.REC)}")
    lo = 2 if kind == "cyclic" else 1
    cap = family_cap(kind, method)
    if not lo <= n <= cap:
        raise UsageError(f"--n must be in {lo}..{cap} for {kind} with --method {method}")
    family = PolyFamily(kind, n, _parse_tau(kind, args.tau, n))
    p = genpoly.generate(family, method, workers=args.workers)
    _emit(format_polynomial(p, args.format, kind, n), args.out)
    return EXIT_OK


def _gamma_rows(n_max: int, method: str, flavor: str, workers: int):
    failures = []
    if method == "rec":
        if flavor == "four-variable":
            return gammalab.gamma_bivariate_rec(n_max), failures
        if flavor == "bivariate":
            return [gammalab.flip_j(r, r.n + 1)
                    for r in gammalab.gamma_bivariate_rec(n_max)], failures
        if flavor == "univariate":
            return gammalab.gamma_univariate_rec(n_max), failures
        raise UsageError("type-B has no gamma recurrence; use --method expand")
    rows = []
    for n in range(1, n_max + 1):
        try:
            if flavor == "four-variable":
                row = gammalab.expand_four_variable(genpoly.rec_four_variable(n), n)
            elif flavor == "bivariate":
                row = gammalab.expand_gamma(genpoly.rec_two_sided(n),
                                            gammalab.BasisSpec("bivariate", n + 1), n)
            elif flavor == "univariate":
                row = gammalab.expand_gamma(genpoly.rec_eulerian_homog(n),
                                            gammalab.BasisSpec("univariate", n + 1), n)
            else:
                row = gammalab.expand_gamma(genpoly.rec_typeB(n),
                                            gammalab.BasisSpec("bivariate", n, 0), n)
        except LinearSystemError as exc:
            failures.append(f"n={n}: {exc}")
            continue
        rows.append(row)
    return rows, failures


def cmd_gamma(args) -> int:
    cap = env_cap(REC_CAP if args.method == "rec" else EXPAND_CAP)
    if not 1 <= args.n_max <= cap:
        raise UsageError(f"--n-max must be in 1..{cap} with --method {args.method}")
    rows, failures = _gamma_rows(args.n_max, args.method, args.flavor, args.workers)
    _emit(format_gamma(rows, args.format, args.flavor, args.method), args.out)
    for f in failures:
        print(f"expansion failed: {f}", file=sys.stderr)
    return EXIT_FAIL if failures else EXIT_OK


def cmd_verify(args) -> int:
    target = args.check or args.suite
    valid = sorted(verify.SUITES) + sorted(verify.CHECKS)
    if target not in valid:
        raise UsageError(f"unknown check or suite {target!r}; valid: {', '.join(valid)}")
    max_n = args.max_n
    if max_n is not None:
        if max_n < 1:
            raise UsageError("--max-n must be >= 1")
        max_n = env_cap(max_n)
    elif os.environ.get("EULERIAN_MAX_N"):
        max_n = env_cap(10 ** 6)
    reports = verify.run_suite(target, max_n, workers=args.workers)
    text = json.dumps([r.to_dict() for r in reports], indent=1) + "\n"
    if args.format == "pretty":
        text = "".join(
            f"{r.outcome.upper():5} [{r.kind}] {r.check} {json.dumps(r.params)}"
            + (f"  -- {r.witness}" if r.witness else "") + "\n" for r in reports)
    _emit(text, args.out)
    return EXIT_FAIL if verify.theorem_failures(reports) else EXIT_OK


def cmd_export(args) -> int:
    cap = env_cap(EXPAND_CAP)
    if not 1 <= args.n_max <= cap:
        raise UsageError(f"--n-max must be in 1..{cap}")
    d = Path(args.dir)
    d.mkdir(parents=True, exist_ok=True)
    (d / "gamma_four_variable.csv").write_text(
        gammalab.rows_csv(gammalab.gamma_bivariate_rec(args.n_max)))
    (d / "gamma_univariate.csv").write_text(
        gammalab.rows_csv(gammalab.gamma_univariate_rec(args.n_max)))
    typeb = [r for r in (gammalab.expand_gamma_typeB(n) for n in range(1, args.n_max + 1))
             if isinstance(r, gammalab.GammaRow)]
    (d / "gamma_typeB_experimental.csv").write_text(gammalab.rows_csv(typeb))
    polys = {kind: {str(n): genpoly.REC[kind](n).to_dict() for n in range(1, args.n_max + 1)}
             for kind in ("two-sided", "two-sided-homog", "type-B")}
    (d / "polynomials.json").write_text(json.dumps(polys) + "\n")
    print(f"wrote 4 files to {d}", file=sys.stderr)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, suppress: bool):
    dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--workers", type=int, default=dflt(1), help="worker processes (default 1)")
    p.add_argument("--format", choices=("json", "csv", "pretty"), default=dflt("json"))
    p.add_argument("--out", default=dflt(None), help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="twosided", description=__doc__.split("\n\n")[0])
    _add_common(ap, suppress=False)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate one polynomial family")
    g.add_argument("family", choices=genpoly.FAMILIES)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--method", choices=("brute", "rec"), default="rec")
    g.add_argument("--tau", help="permutation for the tau families, e.g. 3142 or --tau=-1,2")
    _add_common(g, suppress=True)
    g.set_defaults(func=cmd_gen)

    m = sub.add_parser("gamma", help="gamma-coefficient triangle")
    m.add_argument("--n-max", type=int, required=True)
    m.add_argument("--method", choices=("rec", "expand"), default="rec")
    m.add_argument("--flavor", choices=("four-variable", "bivariate", "univariate", "type-B"),
                   default="four-variable")
    _add_common(m, suppress=True)
    m.set_defaults(func=cmd_gamma)

    v = sub.add_parser("verify", help="run verification checks")
    v.add_argument("check", nargs="?", help="a single check name (overrides --suite)")
    v.add_argument("--suite", default="all", help="all, theorems, conjectures or a check name")
    v.add_argument("--max-n", type=int)
    _add_common(v, suppress=True)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="write gamma tables and polynomials to a directory")
    e.add_argument("--n-max", type=int, required=True)
    e.add_argument("--dir", required=True)
    _add_common(e, suppress=True)
    e.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.workers < 1:
        print("twosided: error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    started = time.perf_counter()
    try:
        rc = args.func(args)
        log.info("done in %.2fs, exit %d", time.perf_counter() - started, rc)
        return rc
    except UsageError as exc:
        print(f"twosided: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalError as exc:
        print(f"twosided: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
