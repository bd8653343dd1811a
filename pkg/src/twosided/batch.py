"""Vectorized enumeration over rank ranges.

Rank ranges are cut into blocks aligned on k! (see permstat.aligned_blocks),
so a block is a fixed prefix followed by every ordering of the remaining
letters.  Those orderings come from a cached lexicographic table, which makes
each block a single fancy-indexing operation.  Statistics are then computed
row-wise and tallied with bincount.  The per-row definitions mirror the
scalar ones in permstat; the test-suite checks they agree on every element
for small n.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import factorial
from typing import Callable, Iterator

import numpy as np

from . import permstat

TABLE_K = 8
INVSEQ_CHUNK = 1 << 17


@lru_cache(maxsize=None)
def _lex_table(k: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(k))), dtype=np.int8).reshape(-1, k)


def _blocks(n: int, start: int, stop: int) -> Iterator[tuple[int, int]]:
    for r, k in permstat.aligned_blocks(n, start, stop):
        if k <= TABLE_K:
            yield r, k
        else:
            step = factorial(TABLE_K)
            for sub in range(r, r + factorial(k), step):
                yield sub, TABLE_K


def permutation_batches(n: int, start: int, stop: int) -> Iterator[np.ndarray]:
    """Arrays of shape (rows, n) holding the permutations of rank start..stop-1."""
    for r, k in _blocks(n, start, stop):
        head = permstat.unrank_permutation(n, r)
        prefix = np.array(head[:n - k], dtype=np.int8)
        tail = np.array(sorted(head[n - k:]), dtype=np.int8)
        rows = tail[_lex_table(k)]
        if n - k:
            rows = np.hstack([np.broadcast_to(prefix, (rows.shape[0], n - k)), rows])
        yield rows


def signed_batches(n: int, start: int, stop: int) -> Iterator[np.ndarray]:
    f = factorial(n)
    r = start
    while r < stop:
        mask, lo = divmod(r, f)
        hi = min(f, stop - mask * f)
        signs = np.array([-1 if mask >> k & 1 else 1 for k in range(n)], dtype=np.int8)
        for P in permutation_batches(n, lo, hi):
            yield P * signs
        r = (mask + 1) * f


def invseq_batches(n: int, start: int, stop: int) -> Iterator[np.ndarray]:
    for lo in range(start, stop, INVSEQ_CHUNK):
        ranks = np.arange(lo, min(stop, lo + INVSEQ_CHUNK), dtype=np.int64)
        E = np.empty((ranks.size, n), dtype=np.int8)
        for i in range(n, 0, -1):
            E[:, i - 1] = ranks % i
            ranks //= i
        yield E


# -- row-wise statistics -------------------------------------------------------

def des(P: np.ndarray) -> np.ndarray:
    return (P[:, :-1] > P[:, 1:]).sum(axis=1)


def asc(P: np.ndarray) -> np.ndarray:
    return (P[:, :-1] < P[:, 1:]).sum(axis=1)


def inverse(P: np.ndarray) -> np.ndarray:
    rows, n = P.shape
    Q = np.empty_like(P)
    Q[np.arange(rows)[:, None], P.astype(np.intp) - 1] = np.arange(1, n + 1, dtype=P.dtype)
    return Q


def cdes(P: np.ndarray) -> np.ndarray:
    return des(P) + (P[:, -1] > P[:, 0])


def des_B(W: np.ndarray) -> np.ndarray:
    return (W[:, 0] < 0) + des(W)


def inverse_B(W: np.ndarray) -> np.ndarray:
    rows, n = W.shape
    Q = np.empty_like(W)
    pos = np.arange(1, n + 1, dtype=W.dtype)
    Q[np.arange(rows)[:, None], np.abs(W).astype(np.intp) - 1] = pos * np.sign(W)
    return Q


def asc_I(E: np.ndarray) -> np.ndarray:
    return (E[:, :-1] < E[:, 1:]).sum(axis=1)


def dst(E: np.ndarray) -> np.ndarray:
    S = np.sort(E, axis=1)
    return 1 + (S[:, 1:] != S[:, :-1]).sum(axis=1)


# -- family kernels ------------------------------------------------------------
# Each kernel maps a batch to a list of exponent columns.

def _two_sided(P, tau):
    Q = inverse(P)
    return [des(Q) + 1, des(P) + 1]


def _two_sided_homog(P, tau):
    Q = inverse(P)
    return [des(Q) + 1, des(P) + 1, asc(Q) + 1, asc(P) + 1]


def _eulerian(P, tau):
    return [des(P) + 1]


def _eulerian_homog(P, tau):
    return [des(P) + 1, asc(P) + 1]


def _two_sided_tau(P, tau):
    Q = inverse(P)[:, np.asarray(tau, dtype=np.intp) - 1]
    return [des(P) + 1, des(Q) + 1]


def _cyclic(P, tau):
    return [cdes(inverse(P)), cdes(P)]


def _type_b(W, tau):
    tau = np.asarray(tau, dtype=np.intp)
    Q = inverse_B(W)[:, np.abs(tau) - 1] * np.sign(tau).astype(W.dtype)
    return [des_B(W), des_B(Q)]


def _invseq(E, tau):
    return [dst(E), asc_I(E) + 1]


KERNELS: dict[str, tuple[str, Callable]] = {
    "eulerian": ("S", _eulerian),
    "eulerian-homog": ("S", _eulerian_homog),
    "two-sided": ("S", _two_sided),
    "two-sided-homog": ("S", _two_sided_homog),
    "two-sided-tau": ("S", _two_sided_tau),
    "cyclic": ("S", _cyclic),
    "type-B-tau": ("B", _type_b),
    "invseq": ("I", _invseq),
}

_BATCHES = {"S": permutation_batches, "B": signed_batches, "I": invseq_batches}


def domain_size(domain: str, n: int) -> int:
    return factorial(n) * (2 ** n if domain == "B" else 1)


def count_range(kind: str, n: int, tau, start: int, stop: int) -> dict[tuple[int, ...], int]:
    """Tally exponent vectors of `kind` over ranks start..stop-1."""
    domain, kernel = KERNELS[kind]
    base = n + 2
    counts: dict[int, int] = {}
    width = None
    for batch in _BATCHES[domain](n, start, stop):
        cols = kernel(batch, tau)
        width = len(cols)
        code = np.zeros(batch.shape[0], dtype=np.int64)
        for c in cols:
            code = code * base + c
        vals, cnt = np.unique(code, return_counts=True)
        for v, c in zip(vals.tolist(), cnt.tolist()):
            counts[v] = counts.get(v, 0) + c
    out = {}
    for code, c in counts.items():
        e = []
        for _ in range(width):
            code, d = divmod(code, base)
            e.append(d)
        out[tuple(reversed(e))] = c
    return out
