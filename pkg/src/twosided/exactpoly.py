"""Exact sparse multivariate polynomials over the integers, plus an exact
fraction-free linear solver.

Polynomials are immutable.  Terms live in a dict keyed by exponent tuples;
zero coefficients are never stored.  Iteration and serialization use
lexicographic exponent order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

CANONICAL_ORDER = ("s", "t", "x", "y")


class InternalError(ArithmeticError):
    """An exactness assertion failed (non-divisible coefficient, bad pivot).

    This always indicates a bug, never bad input.
    """


class LinearSystemError(ValueError):
    pass


class NotInSpanError(LinearSystemError):
    """The system is inconsistent: no expansion exists."""


class BasisDependentError(LinearSystemError):
    """The system has more than one solution: the basis is not independent."""


@dataclass(frozen=True)
class VarSet:
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names: {self.names}")

    @classmethod
    def of(cls, *names: str) -> "VarSet":
        """Build a VarSet, sorting names into the canonical s, t, x, y order
        (auxiliary names keep their given order after those)."""
        known = [v for v in CANONICAL_ORDER if v in names]
        rest = [v for v in names if v not in CANONICAL_ORDER]
        return cls(tuple(known + rest))

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self.names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}; have {list(self.names)}") from None


def _as_varset(v) -> VarSet:
    if isinstance(v, VarSet):
        return v
    if isinstance(v, str):
        return VarSet(tuple(v))
    return VarSet(tuple(v))


class Polynomial:
    """Sparse polynomial with arbitrary-precision integer coefficients.

    >>> s, t = Polynomial.variables("st")
    >>> (s * t + s**2 * t**2).coeff((2, 2))
    1
    """

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, varset, terms: Mapping[tuple[int, ...], int] | None = None):
        vs = _as_varset(varset)
        clean = {}
        nv = len(vs)
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nv:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {nv}")
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent in {e}")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._vars = vs
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vs: VarSet, terms: dict) -> "Polynomial":
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p._vars = vs
        p._terms = terms
        p._hash = None
        return p

    # construction helpers

    @classmethod
    def zero(cls, varset) -> "Polynomial":
        return cls._raw(_as_varset(varset), {})

    @classmethod
    def constant(cls, varset, c: int) -> "Polynomial":
        vs = _as_varset(varset)
        return cls._raw(vs, {(0,) * len(vs): int(c)} if c else {})

    @classmethod
    def monomial(cls, varset, exps: Sequence[int], c: int = 1) -> "Polynomial":
        return cls(varset, {tuple(exps): c})

    @classmethod
    def var(cls, varset, name: str) -> "Polynomial":
        vs = _as_varset(varset)
        e = [0] * len(vs)
        e[vs.index(name)] = 1
        return cls._raw(vs, {tuple(e): 1})

    @classmethod
    def variables(cls, varset) -> tuple["Polynomial", ...]:
        vs = _as_varset(varset)
        return tuple(cls.var(vs, v) for v in vs)

    # basic accessors

    @property
    def varset(self) -> VarSet:
        return self._vars

    @property
    def vars(self) -> tuple[str, ...]:
        return self._vars.names

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in lexicographic exponent order."""
        return sorted(self._terms.items())

    def __iter__(self):
        return iter(self.terms())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exps: Sequence[int]) -> int:
        e = tuple(exps)
        if len(e) != len(self._vars):
            raise ValueError(f"exponent {e} has length {len(e)}, expected {len(self._vars)}")
        return self._terms.get(e, 0)

    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in one variable.  The zero polynomial has degree -1."""
        if not self._terms:
            return -1
        if name is None:
            return max(sum(e) for e in self._terms)
        k = self._vars.index(name)
        return max(e[k] for e in self._terms)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self._terms}
        if degree is not None:
            return degs <= {degree}
        return len(degs) <= 1

    def total(self) -> int:
        """Value at all variables equal to 1."""
        return sum(self._terms.values())

    # equality / hashing

    def __eq__(self, other):
        if isinstance(other, int):
            return self == Polynomial.constant(self._vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._vars == other._vars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._vars != self._vars:
                raise ValueError(
                    f"variable sets differ: {list(self.vars)} vs {list(other.vars)}")
            return other
        if isinstance(other, int):
            return Polynomial.constant(self._vars, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        try:
            q = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in q._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self._vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            q = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Polynomial.zero(self._vars)
            return Polynomial._raw(self._vars, {e: c * other for e, c in self._terms.items()})
        try:
            q = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in q._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self._vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self._vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div(self, d: int) -> "Polynomial":
        """Divide every coefficient by d, raising InternalError unless exact."""
        out = {}
        for e, c in self._terms.items():
            q, r = divmod(c, d)
            if r:
                raise InternalError(f"coefficient {c} of {e} not divisible by {d}")
            out[e] = q
        return Polynomial._raw(self._vars, out)

    # calculus and variable manipulation

    def partial(self, name: str) -> "Polynomial":
        k = self._vars.index(name)
        out = {}
        for e, c in self._terms.items():
            if e[k]:
                ne = e[:k] + (e[k] - 1,) + e[k + 1:]
                out[ne] = c * e[k]
        return Polynomial._raw(self._vars, out)

    def permute_vars(self, mapping: Mapping[str, str]) -> "Polynomial":
        """Rename variables by a bijection; names absent from mapping stay fixed.

        The exponent of old variable v becomes the exponent of mapping[v].
        """
        names = self.vars
        full = {v: mapping.get(v, v) for v in names}
        if set(mapping) - set(names) or sorted(full.values()) != sorted(names):
            raise ValueError(f"{dict(mapping)} is not a bijection of {list(names)}")
        # new position of old index k
        dest = [names.index(full[v]) for v in names]
        out = {}
        for e, c in self._terms.items():
            ne = [0] * len(e)
            for k, p in enumerate(dest):
                ne[p] = e[k]
            out[tuple(ne)] = c
        return Polynomial._raw(self._vars, out)

    def swap(self, a: str, b: str) -> "Polynomial":
        return self.permute_vars({a: b, b: a})

    def homogenize(self, pairs: Iterable[tuple[str, str]], degree: int) -> "Polynomial":
        """Return prod(h**degree) * P(v/h, ...) for each (v, h) pair.

        Homogenizing variables missing from the variable set are appended in
        canonical order.
        """
        pairs = list(pairs)
        names = list(self.vars)
        extra = [h for _, h in pairs if h not in names]
        vs = VarSet.of(*names, *extra) if extra else self._vars
        idx_old = [vs.index(v) for v in names]
        idx_pair = [(self._vars.index(v), vs.index(h)) for v, h in pairs]
        for v, h in pairs:
            if h in self._vars and self.degree(h) > 0:
                raise ValueError(f"homogenizing variable {h!r} already occurs in polynomial")
        out = {}
        for e, c in self._terms.items():
            ne = [0] * len(vs)
            for k, p in enumerate(idx_old):
                ne[p] = e[k]
            for kv, ph in idx_pair:
                r = degree - e[kv]
                if r < 0:
                    raise ValueError(
                        f"degree {degree} too small: {names[kv]} has exponent {e[kv]}")
                ne[ph] = r
            out[tuple(ne)] = c
        return Polynomial._raw(vs, out)

    def specialize(self, values: Mapping[str, int]) -> "Polynomial":
        """Substitute integers for some variables and drop them from the variable set."""
        keep = [v for v in self.vars if v not in values]
        for v in values:
            self._vars.index(v)
        ik = [self._vars.index(v) for v in keep]
        iv = [(self._vars.index(v), int(x)) for v, x in values.items()]
        out: dict = {}
        for e, c in self._terms.items():
            for k, x in iv:
                c *= x ** e[k]
            if c:
                ne = tuple(e[k] for k in ik)
                out[ne] = out.get(ne, 0) + c
        return Polynomial._raw(VarSet(tuple(keep)), {e: c for e, c in out.items() if c})

    def evaluate(self, values: Mapping[str, int]) -> int:
        p = self.specialize(values)
        if p.vars:
            raise ValueError(f"unassigned variables {list(p.vars)}")
        return p.coeff(())

    def embed(self, varset) -> "Polynomial":
        """Reinterpret over a superset (or reordering) of the variables."""
        vs = _as_varset(varset)
        pos = [vs.index(v) for v in self.vars]
        out = {}
        for e, c in self._terms.items():
            ne = [0] * len(vs)
            for k, p in enumerate(pos):
                ne[p] = e[k]
            out[tuple(ne)] = c
        return Polynomial._raw(vs, out)

    # serialization

    def to_dict(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"e": list(e), "c": str(c)} for e, c in self.terms()],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: Mapping) -> "Polynomial":
        return cls(VarSet(tuple(d["vars"])), {tuple(t["e"]): int(t["c"]) for t in d["terms"]})

    @classmethod
    def from_json(cls, s: str) -> "Polynomial":
        return cls.from_dict(json.loads(s))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms():
            mono = "".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            parts.append(("-" if c < 0 else "+", body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {sgn} {b}" for sgn, b in parts[1:])

    def __repr__(self):
        return f"Polynomial({list(self.vars)}, {dict(self.terms())})"


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero when k < 0, k > n or n < 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


RationalVector = list  # list[Fraction]; Fraction keeps entries reduced


def _bareiss_echelon(M: list[list[int]]) -> list[tuple[int, int]]:
    """Fraction-free row echelon form in place; returns (row, col) pivots."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        pr = M[r]
        for i in range(r + 1, rows):
            row = M[i]
            a = row[c]
            for j in range(c + 1, cols):
                q, rem = divmod(piv * row[j] - a * pr[j], prev)
                if rem:
                    raise InternalError("Bareiss division was not exact")
                row[j] = q
            row[c] = 0
        prev = piv
        pivots.append((r, c))
        r += 1
    return pivots


def solve_exact_linear(A: Sequence[Sequence[int]], b: Sequence[int]) -> RationalVector:
    """Solve A x = b exactly for an overdetermined integer system.

    Raises NotInSpanError if the system is inconsistent and
    BasisDependentError if the columns of A are linearly dependent.
    """
    m = len(A)
    if len(b) != m:
        raise ValueError(f"A has {m} rows but b has {len(b)} entries")
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    M = [[int(v) for v in row] + [int(bi)] for row, bi in zip(A, b)]
    pivots = _bareiss_echelon(M)
    if any(c == n for _, c in pivots):
        raise NotInSpanError("no expansion exists: the system is inconsistent")
    if len(pivots) < n:
        raise BasisDependentError(
            f"basis not independent: rank {len(pivots)} < {n} columns")
    x = [Fraction(0)] * n
    for r, c in reversed(pivots):
        acc = Fraction(M[r][n])
        row = M[r]
        for j in range(c + 1, n):
            if row[j]:
                acc -= row[j] * x[j]
        x[c] = acc / row[c]
    for row, bi in zip(A, b):
        if sum(a * xi for a, xi in zip(row, x)) != bi:
            raise InternalError("nonzero residual after exact solve")
    return x
