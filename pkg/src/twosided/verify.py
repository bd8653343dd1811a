"""Executable checks of the identities and conjectures about two-sided
Eulerian polynomials.

Every check returns a VerificationReport.  Theorem-class failures mean a bug
somewhere in this package; conjecture-class failures are findings and carry
their full data.

Series normalization.  The generating series identities are compared with
the polynomials exactly as genpoly produces them: type A families carry the
+1 exponent shifts, type B families carry none.  No extra monomial factor is
needed; ``SERIES_SHIFT`` records that, and the k = 1 cases pin it in the
tests.  The series definition of A_n^(k) writes ``A_n^(k)(t)`` on its left
side; it is read as the bivariate polynomial.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from . import gammalab, genpoly, permstat
from .exactpoly import Polynomial, binomial
from .genpoly import ST
from .permstat import Permutation, SignedPermutation
from .report import VerificationReport

SERIES_SHIFT = {"A": (0, 0), "B": (0, 0)}
TAU_ORACLE_LIMIT = 9


def default_bound(n: int) -> int:
    return n + 4


def truncated_inverse_power(n: int, I: int, J: int) -> Polynomial:
    """(1-s)^-(n+1) (1-t)^-(n+1) truncated to s-degree I and t-degree J."""
    return Polynomial(ST, {(a, b): binomial(a + n, n) * binomial(b + n, n)
                           for a in range(I + 1) for b in range(J + 1)})


def _series_mismatch(P: Polynomial, n: int, target: Callable[[int, int], int],
                     I: int, J: int, shift=(0, 0)):
    """First (i, j, got, want) where P/(1-s)^(n+1)(1-t)^(n+1) disagrees with target."""
    if shift != (0, 0):
        P = P * Polynomial.monomial(ST, shift)
    series = P * truncated_inverse_power(n, I, J)
    for i in range(I + 1):
        for j in range(J + 1):
            got, want = series.coeff((i, j)), target(i, j)
            if got != want:
                return i, j, got, want
    return None


def check_crs(n: int, I: int | None = None, J: int | None = None, *,
              workers: int = 1) -> VerificationReport:
    """A_n(s,t) / (1-s)^(n+1)(1-t)^(n+1) = sum binom(ij+n-1, n) s^i t^j."""
    t0 = time.perf_counter()
    I = default_bound(n) if I is None else I
    J = default_bound(n) if J is None else J
    a = genpoly.brute_two_sided(n, workers=workers)
    bad = _series_mismatch(a, n, lambda i, j: binomial(i * j + n - 1, n), I, J, SERIES_SHIFT["A"])
    witness = bad and f"coefficient of s^{bad[0]} t^{bad[1]} is {bad[2]}, expected {bad[3]}"
    return VerificationReport.make("check_crs", {"n": n, "I": I, "J": J}, bad is None, witness, t0)


def check_crs_tau(n: int, tau=None, I: int | None = None, J: int | None = None, *,
                  workers: int = 1) -> VerificationReport:
    """Series identity for sum s^{des p+1} t^{des(p^-1 tau)+1} with k-1 = des(tau).

    With tau=None every tau in S_n is checked and the first failure is the witness.
    """
    t0 = time.perf_counter()
    I = default_bound(n) if I is None else I
    J = default_bound(n) if J is None else J
    taus = [Permutation(tau)] if tau is not None else permstat.iter_permutations(n)
    checked = 0
    bad = None
    for tt in taus:
        k = permstat.des(tt) + 1
        p = genpoly.brute_two_sided_tau(n, tt, workers=workers)
        mm = _series_mismatch(p, n, lambda i, j: binomial(i * j + n - k, n), I, J,
                              SERIES_SHIFT["A"])
        checked += 1
        if mm:
            bad = f"tau={tt} (k={k}): coefficient of s^{mm[0]} t^{mm[1]} is {mm[2]}, expected {mm[3]}"
            break
    params = {"n": n, "tau": str(Permutation(tau)) if tau is not None else "all", "I": I, "J": J}
    return VerificationReport.make("check_crs_tau", params, bad is None, bad, t0,
                                   data={"taus_checked": checked})


def check_typeB_series(n: int, tau=None, I: int | None = None, J: int | None = None, *,
                       workers: int = 1) -> VerificationReport:
    """B_n^(k)(s,t) / (1-s)^(n+1)(1-t)^(n+1) = sum binom(2ij+i+j+1+n-k, n) s^i t^j."""
    t0 = time.perf_counter()
    I = default_bound(n) if I is None else I
    J = default_bound(n) if J is None else J
    taus = [SignedPermutation(tau)] if tau is not None else permstat.iter_signed(n)
    checked = 0
    bad = None
    for tt in taus:
        k = permstat.des_B(tt) + 1
        p = genpoly.brute_typeB(n, tt, workers=workers)
        mm = _series_mismatch(
            p, n, lambda i, j: binomial(2 * i * j + i + j + 1 + n - k, n), I, J,
            SERIES_SHIFT["B"])
        checked += 1
        if mm:
            bad = f"tau={tt} (k={k}): coefficient of s^{mm[0]} t^{mm[1]} is {mm[2]}, expected {mm[3]}"
            break
    params = {"n": n, "tau": str(SignedPermutation(tau)) if tau is not None else "all",
              "I": I, "J": J}
    return VerificationReport.make("check_typeB_series", params, bad is None, bad, t0,
                                   data={"taus_checked": checked})


def _first_difference(p: Polynomial, q: Polynomial) -> str:
    diff = p - q
    e, c = diff.terms()[0]
    return f"monomial {e}: {p.coeff(e)} vs {q.coeff(e)}"


def check_cyclic(n: int, *, workers: int = 1) -> VerificationReport:
    """(n+1) A_n(s,t) equals the (cdes^-1, cdes) distribution over S_{n+1}."""
    t0 = time.perf_counter()
    lhs = genpoly.brute_two_sided(n, workers=workers) * (n + 1)
    rhs = genpoly.brute_cyclic(n + 1, workers=workers)
    ok = lhs == rhs
    return VerificationReport.make("check_cyclic", {"n": n}, ok,
                                   None if ok else _first_difference(lhs, rhs), t0)


def check_rotation_lemma(n: int) -> VerificationReport:
    """Rotating positions preserves both cdes and cdes of the inverse."""
    t0 = time.perf_counter()
    bad = None
    for p in permstat.iter_permutations(n):
        q = permstat.cyclic_rotate(p)
        before = (permstat.cdes(p), permstat.cdes(permstat.inverse(p)))
        after = (permstat.cdes(q), permstat.cdes(permstat.inverse(q)))
        if before != after:
            bad = f"{p} -> {q}: {before} != {after}"
            break
    orbit = [Permutation.identity(n)]
    for _ in range(n - 1):
        orbit.append(permstat.cyclic_rotate(orbit[-1]))
    data = {"identity_orbit": [str(p) for p in orbit],
            "identity_orbit_cdes": sorted({permstat.cdes(p) for p in orbit})}
    if bad is None and (len(set(orbit)) != n or data["identity_orbit_cdes"] != [1]):
        bad = f"identity orbit malformed: {data}"
    return VerificationReport.make("check_rotation_lemma", {"n": n}, bad is None, bad, t0,
                                   data=data)


def check_tau_independence(n: int, *, workers: int = 1) -> VerificationReport:
    """The tau-twisted distribution depends on tau only through des(tau)."""
    t0 = time.perf_counter()
    reps: dict[int, tuple[Permutation, Polynomial]] = {}
    sizes: dict[int, int] = {}
    bad = None
    for tau in permstat.iter_permutations(n):
        d = permstat.des(tau)
        p = genpoly.brute_two_sided_tau(n, tau, workers=workers)
        sizes[d] = sizes.get(d, 0) + 1
        if d not in reps:
            reps[d] = (tau, p)
        elif reps[d][1] != p:
            bad = f"des={d}: tau={reps[d][0]} and tau={tau} give different polynomials"
            break
    if bad is None and reps[0][1] != genpoly.brute_two_sided(n, workers=workers):
        bad = "des(tau)=0 group does not reproduce A_n(s,t)"
    data = {"group_sizes": {str(d): c for d, c in sorted(sizes.items())},
            "polynomials": {str(d): p.to_dict() for d, (_, p) in sorted(reps.items())}}
    return VerificationReport.make("check_tau_independence", {"n": n}, bad is None, bad, t0,
                                   kind="conjecture", data=data)


def check_invseq(n: int, *, workers: int = 1) -> VerificationReport:
    """A_n(s,t) equals the (dst, asc_I + 1) distribution over inversion sequences."""
    t0 = time.perf_counter()
    lhs = genpoly.brute_invseq(n, workers=workers)
    rhs = genpoly.brute_two_sided(n, workers=workers)
    ok = lhs == rhs
    data = {"invseq_symmetric": lhs.swap("s", "t") == lhs, "polynomial": lhs.to_dict()}
    return VerificationReport.make("check_invseq", {"n": n}, ok,
                                   None if ok else _first_difference(lhs, rhs), t0,
                                   kind="conjecture", data=data)


KLEIN = {
    "(12)(34)": {"s": "t", "t": "s", "x": "y", "y": "x"},
    "(13)(24)": {"s": "x", "x": "s", "t": "y", "y": "t"},
    "(14)(23)": {"s": "y", "y": "s", "t": "x", "x": "t"},
}


def check_klein(n: int) -> VerificationReport:
    """A_n(s,t;x,y) is homogeneous of degree 2n+2 and fixed by the Klein group.

    For n >= 4 it must also fail to be fixed by s<->t alone; the data records
    a monomial showing this (and the same for s<->x alone).
    """
    t0 = time.perf_counter()
    a = genpoly.rec_four_variable(n)
    bad = None
    if not a.is_homogeneous(2 * n + 2):
        bad = f"not homogeneous of degree {2 * n + 2}"
    for name, perm in KLEIN.items():
        if bad is None and a.permute_vars(perm) != a:
            bad = f"not invariant under {name}: {_first_difference(a.permute_vars(perm), a)}"
    data = {}
    for label, (u, v) in {"s<->t": ("s", "t"), "s<->x": ("s", "x")}.items():
        b = a.swap(u, v)
        data[label] = "invariant" if b == a else _first_difference(b, a)
    if bad is None and n >= 4 and data["s<->t"] == "invariant":
        bad = "expected a polynomial not fixed by s<->t alone for n >= 4"
    return VerificationReport.make("check_klein", {"n": n}, bad is None, bad, t0, data=data)


def check_reversal(n: int, *, workers: int = 1) -> VerificationReport:
    """The reversal-tau recurrence equals A_n(s,y;x,t); for small n its x=y=1
    specialization also equals the enumerated tau = n...1 distribution."""
    t0 = time.perf_counter()
    rev = genpoly.rec_reversal(n)
    swapped = genpoly.rec_four_variable(n).swap("t", "y")
    bad = None if rev == swapped else _first_difference(rev, swapped)
    if bad is None and n <= TAU_ORACLE_LIMIT:
        brute = genpoly.brute_two_sided_tau(n, Permutation.reversal(n), workers=workers)
        flat = rev.specialize({"x": 1, "y": 1})
        if flat != brute:
            bad = f"x=y=1 specialization vs enumeration: {_first_difference(flat, brute)}"
    return VerificationReport.make("check_reversal", {"n": n}, bad is None, bad, t0)


def check_operator_region(n: int) -> VerificationReport:
    """verify_operator_identities over every (i, j) of the region for n."""
    t0 = time.perf_counter()
    region = gammalab.BasisSpec("four-variable", n + 1).indices()
    bad = None
    for i, j in region:
        r = gammalab.verify_operator_identities(n, i, j)
        if not r.passed:
            bad = f"(i,j)=({i},{j}): {r.witness}"
            break
    return VerificationReport.make("verify_operator_identities", {"n": n, "region": "all"},
                                   bad is None, bad, t0, data={"points": len(region)})


@dataclass(frozen=True)
class Check:
    name: str
    kind: str
    run: Callable[..., VerificationReport]
    min_n: int
    default_max: int
    cap: int
    uses_workers: bool = True


CHECKS: dict[str, Check] = {c.name: c for c in [
    Check("check_crs", "theorem", check_crs, 1, 6, 10),
    Check("check_crs_tau", "theorem", check_crs_tau, 1, 5, 6),
    Check("check_typeB_series", "theorem", check_typeB_series, 1, 4, 5),
    Check("check_cyclic", "theorem", check_cyclic, 1, 6, 10),
    Check("check_rotation_lemma", "theorem", check_rotation_lemma, 2, 7, 8, False),
    Check("check_klein", "theorem", check_klein, 1, 9, 40, False),
    Check("check_reversal", "theorem", check_reversal, 1, 7, 40),
    Check("verify_operator_identities", "theorem", check_operator_region, 1, 8, 12, False),
    Check("check_tau_independence", "conjecture", check_tau_independence, 1, 6, 7),
    Check("check_invseq", "conjecture", check_invseq, 1, 9, 11),
    Check("check_gessel", "conjecture", gammalab.check_gessel, 1, 12, 20),
]}

SUITES = {
    "all": list(CHECKS),
    "theorems": [c for c in CHECKS if CHECKS[c].kind == "theorem"],
    "conjectures": [c for c in CHECKS if CHECKS[c].kind == "conjecture"],
}


def plan(suite: str, max_n: int | None = None) -> list[tuple[str, int]]:
    """(check name, n) tasks for a suite or a single check name."""
    if suite in SUITES:
        names = SUITES[suite]
    elif suite in CHECKS:
        names = [suite]
    else:
        raise KeyError(suite)
    tasks = []
    for name in names:
        c = CHECKS[name]
        top = c.default_max if max_n is None else min(max_n, c.cap)
        tasks.extend((name, n) for n in range(c.min_n, top + 1))
    return tasks


def _run_task(task, workers: int = 1) -> VerificationReport:
    name, n = task
    c = CHECKS[name]
    return c.run(n, workers=workers) if c.uses_workers else c.run(n)


def run_suite(suite: str = "all", max_n: int | None = None, *,
              workers: int = 1) -> list[VerificationReport]:
    """Run every task of a suite; reports come back ordered by (check, n)."""
    tasks = plan(suite, max_n)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            reports = list(ex.map(_run_task, tasks))
    else:
        reports = [_run_task(t) for t in tasks]
    return sorted(reports, key=lambda r: (r.check, r.params.get("n", 0), str(r.params)))


def theorem_failures(reports: list[VerificationReport]) -> list[VerificationReport]:
    return [r for r in reports if r.kind == "theorem" and r.outcome == "fail"]
