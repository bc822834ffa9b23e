import random

import pytest
from hypothesis import given, strategies as st

from f2double.autos import (AbelianMatrix, FreeAutomorphism, NielsenMove, apply_automorphism,
                            decompose_to_nielsen, extended_gcd, specialize, specializing_matrix)
from f2double.words import (Word, exponent_sums, free_reduce, is_special,
                            is_weakly_cyclically_reduced)
from oracles import egcd, mat_mul, reduce_str, substitute, sums_str

W = Word.parse
M = NielsenMove


def _oracle_matrix(move):
    """Columns are the exponent sums of the images of a and b."""
    ia, ib = move.value
    (p, t), (q, r) = sums_str(ia), sums_str(ib)
    return ((p, q), (t, r))


def test_extended_gcd_examples():
    assert extended_gcd(4, 6) == (2, -1, 1)
    assert extended_gcd(1, 0) == (1, 1, 0)
    assert extended_gcd(0, 5) == (5, 0, 1)
    with pytest.raises(ValueError):
        extended_gcd(0, 0)


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_extended_gcd_bezout(s, t):
    if s == 0 and t == 0:
        return
    d, p, q = extended_gcd(s, t)
    assert d == egcd(abs(s), abs(t))[0]
    assert p * s + q * t == d
    assert egcd(abs(p), abs(q))[0] == 1


def test_specializing_matrix_examples():
    assert specializing_matrix((0, 0)) == AbelianMatrix.identity()
    assert specializing_matrix((0, 7)) == AbelianMatrix(0, 1, 1, 0)
    m = specializing_matrix((4, 6))
    assert m == AbelianMatrix(-1, 1, 0, -1)
    assert m @ (4, 6) == (2, -6) and m.det == 1


@given(st.integers(-60, 60), st.integers(-60, 60))
def test_specializing_matrix_makes_first_sum_divide_second(sa, sb):
    m = specializing_matrix((sa, sb))
    assert m.is_unimodular()
    d, e = m @ (sa, sb)
    assert (d == 0 and e == 0) if (sa, sb) == (0, 0) else (d != 0 and e % d == 0)


def test_move_matrices_match_substitution_oracle():
    for move in M:
        assert move.matrix.rows() == _oracle_matrix(move)
        assert move.matrix.is_unimodular()
        assert free_reduce(move.inverse.apply(move.apply(W("abAAB")))) == W("abAAB")


def test_apply_automorphism_examples():
    assert apply_automorphism(FreeAutomorphism(), W("abAB")) == W("abAB")
    assert apply_automorphism(FreeAutomorphism((M.INVERT_A,)), W("a")) == W("A")
    assert apply_automorphism(FreeAutomorphism((M.MUL_AB,)), W("ab")) == W("abb")


@given(st.lists(st.sampled_from(list(M)), max_size=6), st.text(alphabet="aAbB", max_size=12))
def test_apply_automorphism_matches_oracle(moves, s):
    a = FreeAutomorphism(tuple(moves))
    expected = reduce_str(s)
    for move in moves:
        expected = substitute(expected, *move.value)
    got = a(W(s))
    assert str(got) == expected
    assert exponent_sums(got) == a.matrix @ exponent_sums(W(s))
    assert a.inverse()(got) == free_reduce(W(s))


def test_decompose_identity_and_swap():
    assert decompose_to_nielsen(AbelianMatrix.identity()).moves == ()
    swap = decompose_to_nielsen(AbelianMatrix(0, 1, 1, 0))
    prod = ((1, 0), (0, 1))
    for move in swap.moves:
        prod = mat_mul(_oracle_matrix(move), prod)
    assert prod == ((0, 1), (1, 0))


def test_decompose_upper_shear_is_one_move():
    # (1 1; 0 1) sends (x, y) to (x + y, y): that is b -> ba on exponent sums
    a = decompose_to_nielsen(AbelianMatrix(1, 1, 0, 1))
    assert a.moves == (M.MUL_BA,)
    assert M.MUL_AB.matrix == AbelianMatrix(1, 0, 1, 1)


def test_decompose_rejects_singular():
    with pytest.raises(ValueError):
        decompose_to_nielsen(AbelianMatrix(2, 0, 0, 1))


def test_decompose_random_products():
    rng = random.Random(7)
    for _ in range(200):
        moves = [rng.choice(list(M)) for _ in range(rng.randint(0, 10))]
        target = ((1, 0), (0, 1))
        for move in moves:
            target = mat_mul(_oracle_matrix(move), target)
        m = AbelianMatrix(target[0][0], target[0][1], target[1][0], target[1][1])
        got = decompose_to_nielsen(m)
        prod = ((1, 0), (0, 1))
        for move in got.moves:
            prod = mat_mul(_oracle_matrix(move), prod)
        assert prod == target


def test_specialize_examples():
    a, c = specialize(W("abAB"))
    assert a.moves == () and c == W("abAB")
    a, c = specialize(W("bbb"))
    assert exponent_sums(c) == (3, 0) and is_special(c)
    a, c = specialize(W("aabbbb"))
    sa, sb = exponent_sums(c)
    assert sa == 2 and sb % sa == 0
    with pytest.raises(ValueError):
        specialize(W("abBA"))


def test_specialize_random():
    rng = random.Random(11)
    done = 0
    while done < 200:
        s = "".join(rng.choice("aAbB") for _ in range(rng.randint(1, 10)))
        w = W(s)
        if not free_reduce(w):
            continue
        a, c = specialize(w)
        assert c and is_special(c) and is_weakly_cyclically_reduced(c)
        assert exponent_sums(a(w)) == a.matrix @ exponent_sums(w)
        assert sums_str(str(c)) == tuple(a.matrix @ sums_str(s))
        done += 1
