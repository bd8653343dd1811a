"""Generating polynomials of descent statistics, by enumeration and by recurrence.

Exponent conventions per family (frozen; they are part of the output format):

=================  ===========  ==================================================
family             variables    exponent of each variable for one object
=================  ===========  ==================================================
eulerian           t            des+1
eulerian-homog     t, y         des+1, asc+1
two-sided          s, t         ides+1, des+1
two-sided-homog    s, t, x, y   ides+1, des+1, iasc+1, asc+1
two-sided-tau      s, t         des(p)+1, des(p^-1 tau)+1
type-B / -tau      s, t         des_B(w), des_B(w^-1 tau)   (no shift)
reversal-homog     s, t, x, y   ides+1, asc+1, iasc+1, des+1
cyclic             s, t         cdes(p^-1), cdes(p)        (no shift)
invseq             s, t         dst(e), asc_I(e)+1
=================  ===========  ==================================================
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial
from typing import Callable

from . import batch, permstat
from .exactpoly import Polynomial, VarSet
from .permstat import Permutation, SignedPermutation

ST = VarSet(("s", "t"))
STXY = VarSet(("s", "t", "x", "y"))
T = VarSet(("t",))
TY = VarSet(("t", "y"))

FAMILIES = (
    "eulerian", "eulerian-homog", "two-sided", "two-sided-homog", "two-sided-tau",
    "type-B", "type-B-tau", "reversal-homog", "cyclic", "invseq",
)
TAU_FAMILIES = {"two-sided-tau": "S", "type-B-tau": "B"}


@dataclass(frozen=True)
class PolyFamily:
    kind: str
    n: int
    tau: tuple | None = None

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown family {self.kind!r}; choose from {', '.join(FAMILIES)}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        needs = self.kind in TAU_FAMILIES
        if needs != (self.tau is not None):
            raise ValueError(f"family {self.kind} {'requires' if needs else 'does not take'} tau")
        if self.tau is not None:
            t = (Permutation if TAU_FAMILIES[self.kind] == "S" else SignedPermutation)(self.tau)
            if len(t) != self.n:
                raise ValueError(f"tau has size {len(t)}, expected {self.n}")
            object.__setattr__(self, "tau", t)


# -- enumeration ---------------------------------------------------------------

_SCALAR: dict[str, Callable] = {
    "eulerian": lambda p, tau: (permstat.des(p) + 1,),
    "eulerian-homog": lambda p, tau: (permstat.des(p) + 1, permstat.asc(p) + 1),
    "two-sided": lambda p, tau: (permstat.ides(p) + 1, permstat.des(p) + 1),
    "two-sided-homog": lambda p, tau: (
        permstat.ides(p) + 1, permstat.des(p) + 1, permstat.iasc(p) + 1, permstat.asc(p) + 1),
    "two-sided-tau": lambda p, tau: (
        permstat.des(p) + 1, permstat.des(permstat.compose(permstat.inverse(p), tau)) + 1),
    "cyclic": lambda p, tau: (permstat.cdes(permstat.inverse(p)), permstat.cdes(p)),
    "type-B-tau": lambda w, tau: (
        permstat.des_B(w), permstat.des_B(permstat.compose_B(permstat.inverse_B(w), tau))),
    "invseq": lambda e, tau: (permstat.dst(e), permstat.asc_I(e) + 1),
}
_SCALAR_ITER = {
    "S": permstat.iter_permutations,
    "B": permstat.iter_signed,
    "I": permstat.iter_inversion_sequences,
}
_VARS = {"eulerian": T, "eulerian-homog": TY, "two-sided-homog": STXY}


def _count_scalar(kind, n, tau, start, stop):
    domain, _ = batch.KERNELS[kind]
    stat = _SCALAR[kind]
    out: dict = {}
    for obj in _SCALAR_ITER[domain](n, start, stop):
        e = stat(obj, tau)
        out[e] = out.get(e, 0) + 1
    return out


def _count(args):
    engine, kind, n, tau, start, stop = args
    if engine == "python":
        return _count_scalar(kind, n, tau, start, stop)
    return batch.count_range(kind, n, tau, start, stop)


def distribution(kind: str, n: int, tau=None, *, workers: int = 1,
                 engine: str = "numpy") -> Polynomial:
    """Enumerate the whole domain of `kind` and tally exponent vectors.

    The domain is split into contiguous rank ranges, one per worker; private
    tallies are summed at the end, so the result does not depend on `workers`.
    """
    if engine not in ("numpy", "python"):
        raise ValueError(f"unknown engine {engine!r}")
    domain, _ = batch.KERNELS[kind]
    permstat._check_n(n)
    total = batch.domain_size(domain, n)
    tau = tuple(tau) if tau is not None else None
    jobs = [(engine, kind, n, tau, lo, hi)
            for lo, hi in permstat.chunk_ranges(total, max(1, workers))]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_count, jobs))
    else:
        parts = [_count(j) for j in jobs]
    merged: dict = {}
    for part in parts:
        for e, c in part.items():
            merged[e] = merged.get(e, 0) + c
    return Polynomial(_VARS.get(kind, ST), merged)


def brute_eulerian(n: int, **kw) -> Polynomial:
    return distribution("eulerian", n, **kw)


def brute_eulerian_homog(n: int, **kw) -> Polynomial:
    return distribution("eulerian-homog", n, **kw)


def brute_two_sided(n: int, **kw) -> Polynomial:
    return distribution("two-sided", n, **kw)


def brute_four_variable(n: int, **kw) -> Polynomial:
    return distribution("two-sided-homog", n, **kw)


def brute_two_sided_tau(n: int, tau, **kw) -> Polynomial:
    tau = Permutation(tau)
    if len(tau) != n:
        raise ValueError(f"tau has size {len(tau)}, expected {n}")
    return distribution("two-sided-tau", n, tau, **kw)


def brute_typeB(n: int, tau=None, **kw) -> Polynomial:
    tau = SignedPermutation.identity(n) if tau is None else SignedPermutation(tau)
    if len(tau) != n:
        raise ValueError(f"tau has size {len(tau)}, expected {n}")
    return distribution("type-B-tau", n, tau, **kw)


def brute_cyclic(n: int, **kw) -> Polynomial:
    if n < 2:
        raise ValueError("cyclic descents need n >= 2")
    return distribution("cyclic", n, **kw)


def brute_invseq(n: int, **kw) -> Polynomial:
    return distribution("invseq", n, **kw)


def brute_reversal(n: int, **kw) -> Polynomial:
    """Homogenized distribution for tau = n...21, built from the tau enumeration."""
    p = brute_two_sided_tau(n, Permutation.reversal(n), **kw)
    return p.homogenize([("s", "x"), ("t", "y")], n + 1)


# -- recurrences ----------------------------------------------------------------

def rec_eulerian(n: int) -> Polynomial:
    """A_n(t) = n t A_{n-1} + t(1-t) A_{n-1}', from A_1 = t."""
    (t,) = Polynomial.variables(T)
    a = t
    for k in range(2, n + 1):
        a = k * t * a + t * (1 - t) * a.partial("t")
    return a


def rec_eulerian_homog(n: int) -> Polynomial:
    """A_n(t;y) = ty (d/dt + d/dy) A_{n-1}(t;y), from A_1 = ty."""
    t, y = Polynomial.variables(TY)
    a = t * y
    for _ in range(2, n + 1):
        a = t * y * (a.partial("t") + a.partial("y"))
    return a


def rec_two_sided(n: int) -> Polynomial:
    """Carlitz's bivariate recurrence for A_n(s,t), from A_1 = st."""
    s, t = Polynomial.variables(ST)
    a = s * t
    for k in range(2, n + 1):
        ds = a.partial("s")
        dt = a.partial("t")
        rhs = ((k * k) * s * t + (k - 1) * (1 - s) * (1 - t)) * a
        rhs = rhs + k * s * t * (1 - s) * ds + k * s * t * (1 - t) * dt
        rhs = rhs + s * t * (1 - s) * (1 - t) * ds.partial("t")
        a = rhs.exact_div(k)
    return a


def apply_Tn(P: Polynomial, n: int) -> Polynomial:
    """n(s-x)(t-y) P + stxy (d_s + d_x)(d_t + d_y) P."""
    s, t, x, y = Polynomial.variables(STXY)
    if P.varset != STXY:
        P = P.embed(STXY)
    inner = P.partial("t") + P.partial("y")
    outer = inner.partial("s") + inner.partial("x")
    return n * (s - x) * (t - y) * P + s * t * x * y * outer


def rec_four_variable(n: int) -> Polynomial:
    """n A_n(s,t;x,y) = T_{n-1} A_{n-1}(s,t;x,y), from A_1 = stxy."""
    s, t, x, y = Polynomial.variables(STXY)
    a = s * t * x * y
    for k in range(2, n + 1):
        a = apply_Tn(a, k - 1).exact_div(k)
    return a


def rec_reversal(n: int) -> Polynomial:
    """Reversal-tau recurrence: the multiplier (s-x) becomes (x-s)."""
    s, t, x, y = Polynomial.variables(STXY)
    a = s * t * x * y
    for k in range(2, n + 1):
        inner = a.partial("t") + a.partial("y")
        outer = inner.partial("s") + inner.partial("x")
        a = ((k - 1) * (x - s) * (t - y) * a + s * t * x * y * outer).exact_div(k)
    return a


def rec_typeB(n: int) -> Polynomial:
    """Type B two-sided recurrence, from B_1 = 1 + st."""
    s, t = Polynomial.variables(ST)
    b = 1 + s * t
    for k in range(2, n + 1):
        ds = b.partial("s")
        dt = b.partial("t")
        rhs = ((2 * k * k - k) * s * t + k) * b
        rhs = rhs + (2 * k * s * t * (1 - s) + s * (1 - s) * (1 - t)) * ds
        rhs = rhs + (2 * k * s * t * (1 - t) + t * (1 - s) * (1 - t)) * dt
        rhs = rhs + 2 * s * t * (1 - s) * (1 - t) * ds.partial("t")
        b = rhs.exact_div(k)
    return b


def rec_cyclic(n: int) -> Polynomial:
    """Cyclic family of size n as n * A_{n-1}(s,t)."""
    if n < 2:
        raise ValueError("cyclic descents need n >= 2")
    return rec_two_sided(n - 1) * n


# -- dispatch -------------------------------------------------------------------

BRUTE: dict[str, Callable] = {
    "eulerian": brute_eulerian,
    "eulerian-homog": brute_eulerian_homog,
    "two-sided": brute_two_sided,
    "two-sided-homog": brute_four_variable,
    "two-sided-tau": brute_two_sided_tau,
    "type-B": lambda n, **kw: brute_typeB(n, **kw),
    "type-B-tau": brute_typeB,
    "reversal-homog": brute_reversal,
    "cyclic": brute_cyclic,
    "invseq": brute_invseq,
}
REC: dict[str, Callable[[int], Polynomial]] = {
    "eulerian": rec_eulerian,
    "eulerian-homog": rec_eulerian_homog,
    "two-sided": rec_two_sided,
    "two-sided-homog": rec_four_variable,
    "type-B": rec_typeB,
    "reversal-homog": rec_reversal,
    "cyclic": rec_cyclic,
}


def cardinality(kind: str, n: int) -> int:
    return factorial(n) * (2 ** n if kind.startswith("type-B") else 1)


def generate(family: PolyFamily, method: str = "rec", *, workers: int = 1) -> Polynomial:
    if method == "rec":
        if family.kind not in REC:
            raise ValueError(f"family {family.kind} has no recurrence; use method 'brute'")
        return REC[family.kind](family.n)
    if method == "brute":
        fn = BRUTE[family.kind]
        if family.tau is not None:
            return fn(family.n, family.tau, workers=workers)
        return fn(family.n, workers=workers)
    raise ValueError(f"unknown method {method!r}")


def total_mass_ok(p: Polynomial, kind: str, n: int) -> bool:
    return p.total() == cardinality(kind, n)

