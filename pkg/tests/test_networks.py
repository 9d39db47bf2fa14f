import random
from fractions import Fraction
from itertools import combinations

import pytest

from clustercones.exactalg import LaurentPoly, det, evaluate, t, tau
from clustercones.networks import (InvalidIndices, SizeMismatch, minor_via_paths, network_from_word,
                                   network_svg, solve_tau, tau_relabel, whitney_check,
                                   whitney_factorization)
from clustercones.words import DoubleWord, NotReduced, lex_min_word


def elementary_product(n, levels):
    """E_{i_1}(t_1) ... E_{i_N}(t_N) with E_i(s) = 1 + s e_{i,i+1}, computed symbolically."""
    M = [[LaurentPoly.const(int(a == b)) for b in range(n)] for a in range(n)]
    for l, i in enumerate(levels, start=1):
        s = LaurentPoly.var(t(l))
        # right-multiplying by E_i(s) adds s * column i to column i + 1
        for a in range(n):
            M[a][i] = M[a][i] + s * M[a][i - 1]
    return M


def test_network_shapes():
    net = network_from_word(lex_min_word(4))
    assert [s.level for s in net.slants] == [1, 2, 1, 3, 2, 1]
    assert [s.weight for s in net.slants] == [t(k) for k in range(1, 7)]
    assert [s.weight for s in network_from_word(lex_min_word(2)).slants] == [t(1)]
    assert [s.level for s in network_from_word(lex_min_word(3)).slants] == [1, 2, 1]
    with pytest.raises(NotReduced):
        network_from_word(DoubleWord.blue(3, [1, 1, 2]))


def test_n4_entries():
    net = network_from_word(lex_min_word(4))
    t1, t2, t3, t5 = (LaurentPoly.var(t(k)) for k in (1, 2, 3, 5))
    assert minor_via_paths(net, [1], [3]) == t1 * t2 + t1 * t5 + t3 * t5
    assert minor_via_paths(net, [3], [3]) == LaurentPoly.const(1)
    assert minor_via_paths(net, [4], [3]).is_zero()
    with pytest.raises(SizeMismatch):
        minor_via_paths(net, [1, 2], [3])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_path_matrix_is_elementary_product(n):
    w = lex_min_word(n)
    net = network_from_word(w)
    M = elementary_product(n, w.levels())
    assert net.path_matrix() == M
    for i in range(1, n + 1):
        for J in combinations(range(1, n + 1), i):
            rows = list(range(1, i + 1))
            assert minor_via_paths(net, rows, J) == det([[M[r - 1][c - 1] for c in J] for r in rows])


def test_path_matrix_product_numeric_n5():
    w = lex_min_word(5)
    net = network_from_word(w)
    M = elementary_product(5, w.levels())
    rng = random.Random(7)
    for _ in range(5):
        pt = {t(k): Fraction(rng.randint(1, 9), rng.randint(1, 4)) for k in range(1, 11)}
        for rows in ((1, 2), (2, 4), (1, 3)):
            for cols in ((3, 5), (1, 4), (4, 5)):
                a = evaluate(minor_via_paths(net, rows, cols), pt)
                b = evaluate(det([[M[r - 1][c - 1] for c in cols] for r in rows]), pt)
                assert a == b


def test_tau_relabel():
    want4 = {1: (1, 4), 2: (1, 3), 3: (2, 4), 4: (1, 2), 5: (2, 3), 6: (3, 4)}
    assert tau_relabel(lex_min_word(4)) == {t(l): tau(*jk) for l, jk in want4.items()}
    assert tau_relabel(lex_min_word(2)) == {t(1): tau(1, 2)}
    assert tau_relabel(lex_min_word(3)) == {t(1): tau(1, 3), t(2): tau(1, 2), t(3): tau(2, 3)}


def test_whitney():
    want = LaurentPoly.monomial({tau(1, 2): 1, tau(1, 3): 1, tau(2, 3): 1, tau(2, 4): 1})
    assert whitney_factorization(4, 2, 4) == want
    assert whitney_factorization(4, 1, 2) == LaurentPoly.var(tau(1, 2))
    with pytest.raises(InvalidIndices):
        whitney_factorization(4, 2, 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_whitney_all(n):
    assert all(whitney_check(n, i, j) for i in range(1, n) for j in range(i + 1, n + 1))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_solve_tau_triangular(n):
    rng = random.Random(n)
    truth = {tau(j, k): Fraction(rng.randint(1, 9), rng.randint(1, 5))
             for j in range(1, n) for k in range(j + 1, n + 1)}
    values = {(i, j): evaluate(whitney_factorization(n, i, j), truth)
              for i in range(1, n) for j in range(i + 1, n + 1)}
    assert solve_tau(n, values) == truth


def test_svg():
    assert network_svg(network_from_word(lex_min_word(3)), highlight=(0,)).startswith("<svg")
