"""Permutations, signed permutations, inversion sequences and their statistics.

Everything is 1-based one-line notation.  Statistics are plain functions over
the word; nothing is cached on the objects.

Enumeration is by rank.  Permutations of size n are ranked lexicographically
through the factorial number system, signed permutations by
``mask * n! + perm_rank`` where bit p of ``mask`` negates the entry at
position p+1, and inversion sequences as mixed-radix numbers with e_1 most
significant.  Any contiguous rank range can be enumerated without touching
its predecessors, so ranges split cleanly across workers.
"""
from __future__ import annotations

import itertools
from math import factorial
from typing import Iterator, Sequence

MAX_ENUM_N = 12


class Permutation(tuple):
    """A permutation of 1..n in one-line notation."""

    def __new__(cls, word: Sequence[int]):
        w = tuple(int(v) for v in word)
        if not w or sorted(w) != list(range(1, len(w) + 1)):
            raise ValueError(f"{w} is not a permutation of 1..{len(w)}")
        return super().__new__(cls, w)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def reversal(cls, n: int) -> "Permutation":
        return cls(range(n, 0, -1))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return cls(_parse_word(text))

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Permutation({format_word(self)!r})"


class SignedPermutation(tuple):
    """An element of the hyperoctahedral group, stored as signed integers."""

    def __new__(cls, word: Sequence[int]):
        w = tuple(int(v) for v in word)
        if not w or sorted(abs(v) for v in w) != list(range(1, len(w) + 1)):
            raise ValueError(f"{w} is not a signed permutation of 1..{len(w)}")
        return super().__new__(cls, w)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(range(1, n + 1))

    @classmethod
    def parse(cls, text: str) -> "SignedPermutation":
        return cls(_parse_word(text))

    def __str__(self):
        return ",".join(str(v) for v in self)

    def __repr__(self):
        return f"SignedPermutation({str(self)!r})"


class InversionSequence(tuple):
    """A word e_1..e_n with 0 <= e_i <= i-1."""

    def __new__(cls, entries: Sequence[int]):
        e = tuple(int(v) for v in entries)
        for i, v in enumerate(e, 1):
            if not 0 <= v <= i - 1:
                raise ValueError(f"entry e_{i} = {v} outside 0..{i - 1}")
        return super().__new__(cls, e)


def _parse_word(text: str) -> list[int]:
    text = text.strip()
    if "," in text or "-" in text:
        return [int(v) for v in text.split(",")]
    return [int(ch) for ch in text]


def format_word(word: Sequence[int]) -> str:
    if len(word) <= 9 and all(0 < v <= 9 for v in word):
        return "".join(str(v) for v in word)
    return ",".join(str(v) for v in word)


# -- type A statistics --------------------------------------------------------

def des(p: Sequence[int]) -> int:
    return sum(1 for a, b in zip(p, p[1:]) if a > b)


def asc(p: Sequence[int]) -> int:
    return sum(1 for a, b in zip(p, p[1:]) if a < b)


def inverse(p: Sequence[int]) -> Permutation:
    q = [0] * len(p)
    for i, v in enumerate(p, 1):
        q[v - 1] = i
    return Permutation(q)


def ides(p: Sequence[int]) -> int:
    return des(inverse(p))


def iasc(p: Sequence[int]) -> int:
    return asc(inverse(p))


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """The product pq as functions, (pq)(i) = p(q(i))."""
    if len(p) != len(q):
        raise ValueError("size mismatch")
    return Permutation([p[v - 1] for v in q])


def cdes(p: Sequence[int]) -> int:
    return des(p) + (1 if p[-1] > p[0] else 0)


def cyclic_rotate(p: Sequence[int]) -> Permutation:
    """p composed with the rotation 23...n1, i.e. the word shifted left by one."""
    if len(p) < 2:
        raise ValueError("cyclic rotation needs n >= 2")
    return Permutation(tuple(p[1:]) + (p[0],))


# -- type B statistics --------------------------------------------------------

def des_B(w: Sequence[int]) -> int:
    """Number of i in 0..n-1 with w_i > w_{i+1}, reading w_0 = 0."""
    prev = 0
    count = 0
    for v in w:
        if prev > v:
            count += 1
        prev = v
    return count


def inverse_B(w: Sequence[int]) -> SignedPermutation:
    q = [0] * len(w)
    for i, v in enumerate(w, 1):
        q[abs(v) - 1] = i if v > 0 else -i
    return SignedPermutation(q)


def compose_B(p: Sequence[int], q: Sequence[int]) -> SignedPermutation:
    """(pq)(i) = p(q(i)) with p(-j) = -p(j)."""
    if len(p) != len(q):
        raise ValueError("size mismatch")
    return SignedPermutation([p[v - 1] if v > 0 else -p[-v - 1] for v in q])


# -- inversion sequences ------------------------------------------------------

def to_inversion_sequence(p: Sequence[int]) -> InversionSequence:
    return InversionSequence(
        [sum(1 for a in p[:j] if a > p[j]) for j in range(len(p))])


def asc_I(e: Sequence[int]) -> int:
    return sum(1 for a, b in zip(e, e[1:]) if a < b)


def dst(e: Sequence[int]) -> int:
    return len(set(e))


# -- ranking ------------------------------------------------------------------

def _check_n(n: int, limit: int = MAX_ENUM_N):
    if not 1 <= n <= limit:
        raise ValueError(f"n = {n} outside enumeration range 1..{limit}")


def unrank_permutation(n: int, rank: int) -> Permutation:
    """The rank-th permutation of 1..n in lexicographic order."""
    if not 0 <= rank < factorial(n):
        raise ValueError(f"rank {rank} outside 0..{factorial(n) - 1}")
    pool = list(range(1, n + 1))
    word = []
    for k in range(n - 1, -1, -1):
        d, rank = divmod(rank, factorial(k))
        word.append(pool.pop(d))
    return Permutation(word)


def rank_permutation(p: Sequence[int]) -> int:
    n = len(p)
    pool = list(range(1, n + 1))
    rank = 0
    for i, v in enumerate(p):
        d = pool.index(v)
        rank += d * factorial(n - 1 - i)
        pool.pop(d)
    return rank


def unrank_signed(n: int, rank: int) -> SignedPermutation:
    f = factorial(n)
    mask, r = divmod(rank, f)
    if not 0 <= mask < 2 ** n:
        raise ValueError(f"rank outside 0..{2 ** n * f - 1}")
    p = unrank_permutation(n, r)
    return SignedPermutation([-v if mask >> k & 1 else v for k, v in enumerate(p)])


def unrank_inversion_sequence(n: int, rank: int) -> InversionSequence:
    if not 0 <= rank < factorial(n):
        raise ValueError(f"rank {rank} outside 0..{factorial(n) - 1}")
    e = [0] * n
    for i in range(n, 0, -1):
        rank, e[i - 1] = divmod(rank, i)
    return InversionSequence(e)


def aligned_blocks(n: int, start: int, stop: int) -> Iterator[tuple[int, int]]:
    """Split [start, stop) into (rank, k) blocks where rank is a multiple of k!
    and the block covers ranks rank..rank+k!-1.  Inside such a block the
    first n-k letters are fixed and the last k run over all orders."""
    r = start
    while r < stop:
        k = n
        while k > 0 and (r % factorial(k) or r + factorial(k) > stop):
            k -= 1
        yield r, k
        r += factorial(k)


def iter_permutations(n: int, start: int = 0, stop: int | None = None) -> Iterator[Permutation]:
    """Permutations of rank start..stop-1, in lexicographic order."""
    _check_n(n)
    total = factorial(n)
    stop = total if stop is None else min(stop, total)
    for r, k in aligned_blocks(n, start, stop):
        head = unrank_permutation(n, r)
        prefix, tail = head[:n - k], sorted(head[n - k:])
        for rest in itertools.permutations(tail):
            yield Permutation(prefix + rest)


def enumerate_Sn(n: int) -> Iterator[Permutation]:
    return iter_permutations(n)


def iter_signed(n: int, start: int = 0, stop: int | None = None) -> Iterator[SignedPermutation]:
    _check_n(n)
    f = factorial(n)
    total = 2 ** n * f
    stop = total if stop is None else min(stop, total)
    r = start
    while r < stop:
        mask, lo = divmod(r, f)
        hi = min(f, stop - mask * f)
        for p in iter_permutations(n, lo, hi):
            yield SignedPermutation([-v if mask >> k & 1 else v for k, v in enumerate(p)])
        r = (mask + 1) * f


def enumerate_Bn(n: int) -> Iterator[SignedPermutation]:
    return iter_signed(n)


def iter_inversion_sequences(n: int, start: int = 0,
                             stop: int | None = None) -> Iterator[InversionSequence]:
    _check_n(n)
    total = factorial(n)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    e = list(unrank_inversion_sequence(n, start))
    for _ in range(start, stop):
        yield InversionSequence(e)
        i = n - 1
        while i >= 0:
            e[i] += 1
            if e[i] <= i:
                break
            e[i] = 0
            i -= 1


def chunk_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    """Split [0, total) into at most `parts` contiguous nonempty ranges."""
    parts = max(1, min(parts, total))
    q, r = divmod(total, parts)
    out = []
    lo = 0
    for k in range(parts):
        hi = lo + q + (1 if k < r else 0)
        out.append((lo, hi))
        lo = hi
    return out
