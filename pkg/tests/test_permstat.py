import itertools
from collections import Counter
from math import factorial

import numpy as np
import pytest

from twosided import batch, permstat as ps
from twosided.permstat import InversionSequence, Permutation, SignedPermutation


def test_des():
    assert ps.des(Permutation.identity(6)) == 0
    assert ps.des(Permutation.parse("3142")) == 2
    assert ps.des(Permutation.reversal(6)) == 5


def test_inverse_and_ides():
    p = Permutation.parse("3142")
    assert ps.inverse(p) == Permutation.parse("2413")
    assert ps.ides(p) == 1
    assert ps.inverse(Permutation.identity(5)) == Permutation.identity(5)
    for q in ps.iter_permutations(4):
        assert ps.inverse(ps.inverse(q)) == q


def test_asc_iasc():
    assert ps.asc(Permutation.identity(5)) == 4
    assert ps.asc(Permutation.parse("3142")) == 1
    assert ps.iasc(Permutation.parse("3142")) == 2


def test_cdes():
    for n in range(2, 6):
        assert ps.cdes(Permutation.identity(n)) == 1
    assert ps.cdes(Permutation.parse("231")) == 1
    assert ps.cdes(Permutation.parse("321")) == 2


def test_cyclic_rotate():
    assert ps.cyclic_rotate(Permutation.parse("312")) == Permutation.parse("123")
    p = Permutation.parse("41352")
    q = p
    for _ in range(5):
        q = ps.cyclic_rotate(q)
    assert q == p
    for p in ps.iter_permutations(5):
        q = ps.cyclic_rotate(p)
        assert (ps.cdes(p), ps.cdes(ps.inverse(p))) == (ps.cdes(q), ps.cdes(ps.inverse(q)))
    with pytest.raises(ValueError):
        ps.cyclic_rotate(Permutation.parse("1"))


def test_rotation_is_right_multiplication():
    sigma = Permutation([2, 3, 4, 5, 1])
    for p in ps.iter_permutations(5):
        assert ps.cyclic_rotate(p) == ps.compose(p, sigma)


def test_des_B():
    assert ps.des_B(SignedPermutation.identity(4)) == 0
    assert ps.des_B(SignedPermutation([-1])) == 1
    assert ps.des_B(SignedPermutation([-1, -2])) == 2
    for n in range(1, 5):
        assert ps.des_B(SignedPermutation([-k for k in range(1, n + 1)])) == n
        for w in ps.iter_signed(n):
            assert 0 <= ps.des_B(w) <= n


def test_inverse_B():
    assert ps.inverse_B(SignedPermutation([-2, 1])) == SignedPermutation([2, -1])
    assert ps.inverse_B(SignedPermutation([-1, -2])) == SignedPermutation([-1, -2])
    ident = SignedPermutation.identity(3)
    for w in ps.iter_signed(3):
        assert ps.inverse_B(ps.inverse_B(w)) == w
        assert ps.compose_B(w, ps.inverse_B(w)) == ident


def test_inversion_sequence():
    assert ps.to_inversion_sequence(Permutation.identity(4)) == (0, 0, 0, 0)
    assert ps.to_inversion_sequence(Permutation.parse("321")) == (0, 1, 2)
    images = {ps.to_inversion_sequence(p) for p in ps.iter_permutations(4)}
    assert len(images) == 24
    with pytest.raises(ValueError):
        InversionSequence([0, 2])


def test_asc_I_dst():
    assert (ps.asc_I((0, 0, 0)), ps.dst((0, 0, 0))) == (0, 1)
    assert (ps.asc_I((0, 1, 2)), ps.dst((0, 1, 2))) == (2, 3)
    # Dumont: sum over I_3 of x^dst is x + 4x^2 + x^3
    seqs = list(itertools.product(range(1), range(2), range(3)))
    assert Counter(ps.dst(e) for e in seqs) == {1: 1, 2: 4, 3: 1}


@pytest.mark.parametrize("n", range(1, 7))
def test_invariants_exhaustive(n):
    perms = list(ps.iter_permutations(n))
    assert len(perms) == factorial(n) == len(set(perms))
    assert all(ps.des(p) + ps.asc(p) == n - 1 for p in perms)
    assert Counter(map(ps.des, perms)) == Counter(map(ps.ides, perms))
    assert len({ps.to_inversion_sequence(p) for p in perms}) == factorial(n)
    if n >= 2:
        for p in perms:
            q = ps.cyclic_rotate(p)
            assert ps.cdes(q) == ps.cdes(p)
            assert ps.cdes(ps.inverse(q)) == ps.cdes(ps.inverse(p))


def test_enumeration_counts():
    assert len(list(ps.enumerate_Sn(3))) == 6
    assert len(set(ps.enumerate_Bn(2))) == 8
    with pytest.raises(ValueError):
        list(ps.enumerate_Sn(0))
    with pytest.raises(ValueError):
        list(ps.enumerate_Sn(ps.MAX_ENUM_N + 1))


def test_lexicographic_and_ranks():
    n = 5
    perms = list(ps.iter_permutations(n))
    assert perms == [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    for r, p in enumerate(perms):
        assert ps.unrank_permutation(n, r) == p
        assert ps.rank_permutation(p) == r


@pytest.mark.parametrize("cuts", [(0, 7, 120), (0, 24, 25, 119, 120), (0, 1, 60, 120)])
def test_chunks_partition(cuts):
    full = list(ps.iter_permutations(5))
    pieces = [p for lo, hi in zip(cuts, cuts[1:]) for p in ps.iter_permutations(5, lo, hi)]
    assert pieces == full


def test_chunk_ranges():
    assert ps.chunk_ranges(10, 3) == [(0, 4), (4, 7), (7, 10)]
    assert ps.chunk_ranges(2, 8) == [(0, 1), (1, 2)]


def test_signed_and_invseq_chunks():
    full = list(ps.iter_signed(3))
    assert len(full) == 48 and len(set(full)) == 48
    assert list(ps.iter_signed(3, 0, 17)) + list(ps.iter_signed(3, 17, 48)) == full
    for r, w in enumerate(full):
        assert ps.unrank_signed(3, r) == w
    seqs = list(ps.iter_inversion_sequences(4))
    assert len(set(seqs)) == 24
    assert seqs == [ps.unrank_inversion_sequence(4, r) for r in range(24)]
    assert list(ps.iter_inversion_sequences(4, 5, 11)) == seqs[5:11]


def test_parse_format():
    assert str(Permutation.parse("3142")) == "3142"
    big = Permutation([10] + list(range(1, 10)))
    assert str(big) == "10,1,2,3,4,5,6,7,8,9"
    assert Permutation.parse(str(big)) == big
    w = SignedPermutation.parse("-2,1")
    assert str(w) == "-2,1"
    with pytest.raises(ValueError):
        Permutation.parse("122")


# -- vectorized kernels agree with the scalar definitions ---------------------

@pytest.mark.parametrize("n", [1, 2, 5, 6])
def test_batch_permutations_match_scalar(n):
    rows = np.vstack(list(batch.permutation_batches(n, 0, factorial(n))))
    perms = list(ps.iter_permutations(n))
    assert [tuple(r) for r in rows.tolist()] == [tuple(p) for p in perms]
    assert batch.des(rows).tolist() == [ps.des(p) for p in perms]
    assert batch.asc(rows).tolist() == [ps.asc(p) for p in perms]
    assert [tuple(r) for r in batch.inverse(rows).tolist()] == [ps.inverse(p) for p in perms]
    assert batch.cdes(rows).tolist() == [ps.cdes(p) for p in perms]


def test_batch_large_blocks_split():
    n = 10
    lo, hi = 3 * factorial(9) - 5, 3 * factorial(9) + 2 * factorial(8) + 3
    rows = np.vstack(list(batch.permutation_batches(n, lo, hi)))
    assert rows.shape[0] == hi - lo
    assert tuple(rows[0]) == ps.unrank_permutation(n, lo)
    assert tuple(rows[-1]) == ps.unrank_permutation(n, hi - 1)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_batch_signed_match_scalar(n):
    total = 2**n * factorial(n)
    rows = np.vstack(list(batch.signed_batches(n, 0, total)))
    ws = list(ps.iter_signed(n))
    assert [tuple(r) for r in rows.tolist()] == [tuple(w) for w in ws]
    assert batch.des_B(rows).tolist() == [ps.des_B(w) for w in ws]
    assert [tuple(r) for r in batch.inverse_B(rows).tolist()] == [ps.inverse_B(w) for w in ws]


@pytest.mark.parametrize("n", [1, 3, 6])
def test_batch_invseq_match_scalar(n):
    rows = np.vstack(list(batch.invseq_batches(n, 0, factorial(n))))
    seqs = list(ps.iter_inversion_sequences(n))
    assert [tuple(r) for r in rows.tolist()] == [tuple(e) for e in seqs]
    assert batch.asc_I(rows).tolist() == [ps.asc_I(e) for e in seqs]
    assert batch.dst(rows).tolist() == [ps.dst(e) for e in seqs]
