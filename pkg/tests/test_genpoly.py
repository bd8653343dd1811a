import pytest

from twosided import genpoly as g
from twosided.exactpoly import Polynomial
from twosided.permstat import Permutation, SignedPermutation

s, t = Polynomial.variables(g.ST)
S, T, X, Y = Polynomial.variables(g.STXY)
KLEIN_SWAPS = [
    {"s": "t", "t": "s", "x": "y", "y": "x"},
    {"s": "x", "x": "s", "t": "y", "y": "t"},
    {"s": "y", "y": "s", "t": "x", "x": "t"},
]


def test_small_two_sided():
    assert g.rec_two_sided(1) == s * t
    assert g.rec_two_sided(2) == s * t + s**2 * t**2
    assert g.rec_two_sided(3) == s * t + 4 * s**2 * t**2 + s**3 * t**3
    assert g.brute_two_sided(3) == g.rec_two_sided(3)


def test_small_four_variable():
    stxy = S * T * X * Y
    assert g.rec_four_variable(1) == stxy
    assert g.rec_four_variable(2) == stxy * (S * T + X * Y)
    assert g.rec_four_variable(3) == stxy * (S * T + X * Y) ** 2 + 2 * stxy**2
    a4 = stxy * (S * T + X * Y) ** 3 + 7 * stxy**2 * (S * T + X * Y) + stxy**2 * (T * X + S * Y)
    assert g.rec_four_variable(4) == a4


def test_eulerian_numbers():
    (t1,) = Polynomial.variables(g.T)
    assert g.rec_eulerian(4) == t1 + 11 * t1**2 + 11 * t1**3 + t1**4
    assert g.brute_eulerian(4) == g.rec_eulerian(4)
    tt, y = Polynomial.variables(g.TY)
    assert g.rec_eulerian_homog(3) == tt * y**3 + 4 * tt**2 * y**2 + tt**3 * y
    assert g.brute_eulerian_homog(5) == g.rec_eulerian_homog(5)


def test_typeB_small():
    assert g.rec_typeB(1) == 1 + s * t
    assert g.brute_typeB(1) == 1 + s * t
    b2 = g.rec_typeB(2)
    assert b2.total() == 8
    assert b2.coeff((0, 0)) == 1 and b2.coeff((2, 2)) == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_type_A_oracles(n):
    brute = g.brute_two_sided(n)
    assert g.rec_two_sided(n) == brute
    assert g.rec_four_variable(n).specialize({"x": 1, "y": 1}) == brute
    if n <= 7:
        assert g.brute_four_variable(n) == g.rec_four_variable(n)
        assert g.brute_reversal(n) == g.rec_reversal(n)
        assert g.brute_eulerian(n) == g.rec_eulerian(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_python_engine_agrees(n):
    for kind in ("two-sided", "two-sided-homog", "cyclic", "invseq"):
        if kind == "cyclic" and n < 2:
            continue
        assert g.distribution(kind, n, engine="python") == g.distribution(kind, n)
    tau = SignedPermutation([-2, 1] + list(range(3, n + 1))) if n >= 2 else SignedPermutation([-1])
    assert g.distribution("type-B-tau", n, tau, engine="python") == g.distribution("type-B-tau", n, tau)


@pytest.mark.parametrize("n", range(1, 7))
def test_type_B_oracle(n):
    assert g.rec_typeB(n) == g.brute_typeB(n)


@pytest.mark.parametrize("n", range(2, 8))
def test_cyclic_oracle(n):
    assert g.rec_cyclic(n) == g.brute_cyclic(n)


def test_reversal_is_t_y_swap():
    for n in range(1, 9):
        assert g.rec_reversal(n) == g.rec_four_variable(n).swap("t", "y")


@pytest.mark.parametrize("n", range(1, 11))
def test_homogeneous_and_klein(n):
    a = g.rec_four_variable(n)
    assert a.is_homogeneous(2 * n + 2)
    for e, _ in a.terms():
        assert e[0] + e[2] == n + 1 and e[1] + e[3] == n + 1
    for sw in KLEIN_SWAPS:
        assert a.permute_vars(sw) == a


@pytest.mark.parametrize("n", range(1, 11))
def test_palindromic(n):
    a = g.rec_two_sided(n)
    for (i, j), c in a.terms():
        assert a.coeff((n + 1 - i, n + 1 - j)) == c
        assert a.coeff((j, i)) == c
    b = g.rec_typeB(n)
    for (i, j), c in b.terms():
        assert b.coeff((n - i, n - j)) == c


@pytest.mark.parametrize("kind", sorted(g.REC))
def test_normalization_rec(kind):
    lo = 2 if kind == "cyclic" else 1
    for n in range(lo, 41):
        assert g.REC[kind](n).total() == g.cardinality(kind, n)


@pytest.mark.parametrize("kind", g.FAMILIES)
def test_normalization_brute_small(kind):
    for n in range(2, 7):
        tau = None
        if kind == "two-sided-tau":
            tau = Permutation.reversal(n)
        elif kind == "type-B-tau":
            tau = SignedPermutation([-k for k in range(n, 0, -1)])
        p = g.generate(g.PolyFamily(kind, n, tau), "brute")
        assert g.total_mass_ok(p, kind, n)


def test_tau_examples():
    # tau = identity gives back A_n(s,t)
    for n in range(1, 7):
        assert g.brute_two_sided_tau(n, Permutation.identity(n)) == g.rec_two_sided(n)
    # the polynomial depends on tau only through des(tau) at n = 4
    one_descent = [g.brute_two_sided_tau(4, Permutation.parse(w)) for w in ("2134", "1243", "1324")]
    assert one_descent[0] == one_descent[1] == one_descent[2]
    assert one_descent[0] != g.rec_two_sided(4)
    with pytest.raises(ValueError):
        g.brute_two_sided_tau(4, Permutation.identity(3))


def test_family_validation():
    with pytest.raises(ValueError):
        g.PolyFamily("nope", 3)
    with pytest.raises(ValueError):
        g.PolyFamily("two-sided", 0)
    with pytest.raises(ValueError):
        g.PolyFamily("two-sided-tau", 3)
    with pytest.raises(ValueError):
        g.PolyFamily("two-sided", 3, (1, 2, 3))
    with pytest.raises(ValueError):
        g.generate(g.PolyFamily("invseq", 3), "rec")
    with pytest.raises(ValueError):
        g.brute_cyclic(1)


@pytest.mark.parametrize("kind", ["two-sided", "two-sided-homog", "invseq", "type-B-tau"])
def test_workers_deterministic(kind):
    n = 5 if kind == "type-B-tau" else 7
    tau = SignedPermutation.identity(n) if kind == "type-B-tau" else None
    one = g.distribution(kind, n, tau, workers=1)
    assert g.distribution(kind, n, tau, workers=3) == one
    assert g.distribution(kind, n, tau, workers=3).to_json() == one.to_json()
