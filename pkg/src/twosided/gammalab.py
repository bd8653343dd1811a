"""Gamma-basis expansions.

Two bases are supported for a top exponent m:

* four-variable: B_{i,j} = (stxy)^i (st+xy)^j (tx+sy)^(m-2i-j)
* bivariate:     (st)^i (s+t)^j (1+st)^(m-2i-j)

Homogenizing a bivariate element to degree m in (s,x) and (t,y) gives the
four-variable element with the roles of the last two factors swapped, so a
bivariate coefficient at (i, j) equals the four-variable one at (i, m-2i-j).
Type A rows are keyed by the four-variable (i, j) unless stated otherwise.
"""
from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

from . import genpoly
from .exactpoly import (
    InternalError,
    LinearSystemError,
    Polynomial,
    solve_exact_linear,
)
from .genpoly import ST, STXY, TY
from .report import VerificationReport

FLAVORS = ("bivariate", "four-variable", "univariate")


@dataclass(frozen=True)
class BasisSpec:
    flavor: str
    m: int
    i_min: int = 1

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.i_min not in (0, 1):
            raise ValueError("i_min must be 0 or 1")

    def indices(self) -> list[tuple[int, ...]]:
        """Valid index region, ordered by i then j."""
        if self.flavor == "univariate":
            return [(i,) for i in range(self.i_min, self.m // 2 + 1)]
        return [(i, j) for i in range(self.i_min, self.m // 2 + 1)
                for j in range(self.m - 2 * i + 1)]

    def contains(self, i: int, j: int | None = None) -> bool:
        if self.flavor == "univariate":
            return self.i_min <= i and 2 * i <= self.m
        return self.i_min <= i and j >= 0 and 2 * i + j <= self.m


@dataclass
class GammaRow:
    n: int
    entries: dict[tuple[int, ...], int] = field(default_factory=dict)

    def nonzero(self) -> dict[tuple[int, ...], int]:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def __eq__(self, other):
        if not isinstance(other, GammaRow):
            return NotImplemented
        return self.n == other.n and self.nonzero() == other.nonzero()

    def negatives(self) -> dict[tuple[int, ...], int]:
        return {k: v for k, v in self.nonzero().items() if v < 0}

    def non_integers(self) -> dict:
        return {k: v for k, v in self.nonzero().items() if not isinstance(v, int)}

    def row_sums(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for k, v in self.nonzero().items():
            out[k[0]] = out.get(k[0], 0) + v
        return {i: v for i, v in out.items() if v}

    def to_dict(self) -> dict:
        return {"n": self.n, "entries": [[*k, str(v)] for k, v in self.nonzero().items()]}


@lru_cache(maxsize=4096)
def basis_element(spec: BasisSpec, i: int, j: int | None = None) -> Polynomial:
    if not spec.contains(i, j):
        raise ValueError(f"index {(i, j)} outside the region of {spec}")
    k = spec.m - 2 * i - (j or 0)
    if spec.flavor == "four-variable":
        s, t, x, y = Polynomial.variables(STXY)
        return (s * t * x * y) ** i * (s * t + x * y) ** j * (t * x + s * y) ** k
    if spec.flavor == "bivariate":
        s, t = Polynomial.variables(ST)
        return (s * t) ** i * (s + t) ** j * (1 + s * t) ** k
    t, y = Polynomial.variables(TY)
    return (t * y) ** i * (t + y) ** k


def combine(spec: BasisSpec, coeffs: dict, scale: int = 1) -> Polynomial:
    """scale * (sum of coefficient * basis element); scale must clear every
    denominator among the coefficients."""
    vs = {"four-variable": STXY, "bivariate": ST, "univariate": TY}[spec.flavor]
    out = Polynomial.zero(vs)
    for key, c in coeffs.items():
        if c:
            c = Fraction(c) * scale
            if c.denominator != 1:
                raise ValueError(f"scale {scale} does not clear {c}")
            out = out + basis_element(spec, *key) * int(c)
    return out


def expand_gamma(P: Polynomial, spec: BasisSpec, n: int | None = None) -> GammaRow:
    """Exact coefficients of P in the basis described by spec.

    Every monomial occurring in P or in some basis element contributes one
    equation.  Raises NotInSpanError or BasisDependentError from the solver.
    """
    idx = spec.indices()
    elems = [basis_element(spec, *k) for k in idx]
    for e in elems:
        if e.varset != P.varset:
            raise ValueError(f"polynomial over {list(P.vars)} but basis over {list(e.vars)}")
    monos = sorted({e for b in elems for e, _ in b} | {e for e, _ in P})
    A = [[b.coeff(mono) for b in elems] for mono in monos]
    rhs = [P.coeff(mono) for mono in monos]
    sol = solve_exact_linear(A, rhs)
    # non-integral coefficients are kept as Fractions and reported, not raised
    entries = {k: int(v) if v.denominator == 1 else v for k, v in zip(idx, sol)}
    row = GammaRow(n if n is not None else spec.m - 1, entries)
    scale = lcm(*(Fraction(v).denominator for v in entries.values()))
    if combine(spec, row.entries, scale) != P * scale:
        raise InternalError("expansion does not reproduce the polynomial")
    return row


def expand_four_variable(P: Polynomial, n: int, i_min: int = 1) -> GammaRow:
    return expand_gamma(P, BasisSpec("four-variable", n + 1, i_min), n)


def flip_j(row: GammaRow, m: int) -> GammaRow:
    """Re-key between bivariate and four-variable j (an involution)."""
    return GammaRow(row.n, {(i, m - 2 * i - j): v for (i, j), v in row.entries.items()})


def gamma_univariate_rec(n_max: int) -> list[GammaRow]:
    """gamma_{n+1,i} = i gamma_{n,i} + 2(n+3-2i) gamma_{n,i-1}, from gamma_{1,1} = 1."""
    rows = [GammaRow(1, {(1,): 1})]
    for n in range(1, n_max):
        g = rows[-1].entries
        nxt = {}
        for i in range(1, (n + 2) // 2 + 1):
            v = i * g.get((i,), 0) + 2 * (n + 3 - 2 * i) * g.get((i - 1,), 0)
            if v:
                nxt[(i,)] = v
        rows.append(GammaRow(n + 1, nxt))
    return rows


def gamma_bivariate_rec(n_max: int) -> list[GammaRow]:
    """Six-term recurrence for the four-variable coefficients gamma_{n,i,j}."""
    rows = [GammaRow(1, {(1, 0): 1})]
    for n in range(1, n_max):
        g = rows[-1].entries

        def G(i, j):
            return g.get((i, j), 0) if i >= 1 and j >= 0 else 0

        nxt = {}
        m = n + 2
        for i in range(1, m // 2 + 1):
            for j in range(m - 2 * i + 1):
                v = ((n + i * (n + 2 - i - j)) * G(i, j - 1)
                     + (i * (i + j) - n) * G(i, j)
                     + (n + 4 - 2 * i - j) * (n + 3 - 2 * i - j) * G(i - 1, j - 1)
                     + (n + 2 * i + j) * (n + 3 - 2 * i - j) * G(i - 1, j)
                     + (j + 1) * (2 * n + 2 - j) * G(i - 1, j + 1)
                     + (j + 1) * (j + 2) * G(i - 1, j + 2))
                q, r = divmod(v, n + 1)
                if r:
                    raise InternalError(
                        f"(n+1) = {n + 1} does not divide {v} at (n,i,j) = {(n + 1, i, j)}")
                if q:
                    nxt[(i, j)] = q
        rows.append(GammaRow(n + 1, nxt))
    return rows


ORACLE_LIMIT = 8


def check_gessel(n: int, *, oracle_limit: int = ORACLE_LIMIT, workers: int = 1) -> VerificationReport:
    """Expand A_n(s,t;x,y) in the four-variable basis; pass iff every
    coefficient is a nonnegative integer."""
    t0 = time.perf_counter()
    params = {"n": n}
    a = genpoly.rec_four_variable(n)
    if n <= oracle_limit:
        b = genpoly.brute_four_variable(n, workers=workers)
        if a != b:
            raise InternalError(f"recurrence and enumeration disagree at n = {n}")
    try:
        row = expand_four_variable(a, n)
    except LinearSystemError as exc:
        return VerificationReport.make("check_gessel", params, False, str(exc), t0,
                                       kind="conjecture")
    bad = {**row.non_integers(), **row.negatives()}
    witness = None
    if bad:
        (i, j), v = min(bad.items())
        witness = f"gamma[{n},{i},{j}] = {v} is not a nonnegative integer"
    return VerificationReport.make("check_gessel", params, not bad, witness, t0,
                                   kind="conjecture", data=row.to_dict())


def _M(B: Polynomial, n: int) -> Polynomial:
    s, t, x, y = Polynomial.variables(STXY)
    return n * (s - x) * (t - y) * B


def _D(B: Polynomial, a: str, b: str, c: str, d: str) -> Polynomial:
    s, t, x, y = Polynomial.variables(STXY)
    return s * t * x * y * (B.partial(a).partial(b) + B.partial(c).partial(d))


def _closed(n: int, terms: list[tuple[int, int, int]]) -> Polynomial:
    """Sum of c * B^{(n+1)}_{i,j}; terms with c == 0 are skipped even if
    (i, j) falls outside the region."""
    spec = BasisSpec("four-variable", n + 2)
    out = Polynomial.zero(STXY)
    for c, i, j in terms:
        if c:
            out = out + basis_element(spec, i, j) * c
    return out


def verify_operator_identities(n: int, i: int, j: int) -> VerificationReport:
    """Check the closed-form actions of the multiplication part, the two
    second-order parts and the full operator on one basis element."""
    t0 = time.perf_counter()
    params = {"n": n, "i": i, "j": j}
    B = basis_element(BasisSpec("four-variable", n + 1), i, j)
    k = n + 1 - 2 * i - j
    M = _closed(n, [(n, i, j + 1), (-n, i, j)])
    D1 = _closed(n, [(i * (n + 1 - i - j), i, j + 1),
                     (j * (2 * n + 3 - j), i + 1, j - 1),
                     (k * (n - 2 * i - j), i + 1, j + 1)])
    D2 = _closed(n, [(i * (i + j), i, j),
                     (j * (j - 1), i + 1, j - 2),
                     (k * (n + 2 + 2 * i + j), i + 1, j)])
    T = _closed(n, [(n + i * (n + 1 - i - j), i, j + 1),
                    (i * (i + j) - n, i, j),
                    (k * (n - 2 * i - j), i + 1, j + 1),
                    ((n + 2 + 2 * i + j) * k, i + 1, j),
                    (j * (2 * n + 3 - j), i + 1, j - 1),
                    (j * (j - 1), i + 1, j - 2)])
    checks = {
        "M": (_M(B, n), M),
        "D1": (_D(B, "s", "t", "x", "y"), D1),
        "D2": (_D(B, "s", "y", "t", "x"), D2),
        "T": (genpoly.apply_Tn(B, n), T),
    }
    bad = [name for name, (lhs, rhs) in checks.items() if lhs != rhs]
    witness = f"closed form differs for {', '.join(bad)}" if bad else None
    return VerificationReport.make("verify_operator_identities", params, not bad, witness, t0)


def operator_region(n_max: int) -> list[tuple[int, int, int]]:
    return [(n, i, j) for n in range(1, n_max + 1)
            for (i, j) in BasisSpec("four-variable", n + 1).indices()]


def expand_gamma_typeB(n: int) -> GammaRow | str:
    """Experimental: expand B_n(s,t) in the bivariate basis with m = n and
    i_min = 0.  Returns the row, or a message when no expansion exists."""
    try:
        return expand_gamma(genpoly.rec_typeB(n), BasisSpec("bivariate", n, 0), n)
    except LinearSystemError as exc:
        return f"not in span: {exc}"


def rows_csv(rows: list[GammaRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "i", "j", "gamma"])
    for row in sorted(rows, key=lambda r: r.n):
        for key, v in row.nonzero().items():
            i = key[0]
            j = key[1] if len(key) > 1 else ""
            w.writerow([row.n, i, j, v])
    return buf.getvalue()

