"""Exact rank/kernel kernels: compiled vs pure backends, Q vs Z/p routes."""

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bcl import BadParameters
from bcl import linalg
from bcl._purerank import bareiss_rank as pure_bareiss, rank_mod_p as pure_mod_p

import _oracles as oracle


def random_matrix(rng, nr, nc, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(nc)] for _ in range(nr)]


def test_backend_is_recorded():
    assert linalg.BACKEND in ("compiled", "python")


def test_rank_exact_known():
    assert linalg.rank_exact([[1, 2], [2, 4]]) == 1
    assert linalg.rank_exact([[1, 0], [0, 1]]) == 2
    assert linalg.rank_exact([[0, 0], [0, 0]]) == 0
    assert linalg.rank_exact([]) == 0
    assert linalg.rank_exact([[2, 4, 6]]) == 1


def test_rank_mod_p_differs_from_q():
    # rank 2 over Q, rank 1 over Z/2
    m = [[1, 1], [1, -1]]
    assert linalg.rank_exact(m) == 2
    assert linalg.rank_mod_p_dense(m, 2) == 1
    assert linalg.rank_mod_p_dense(m, 3) == 2


def test_sparse_and_dense_mod_p_agree():
    rng = random.Random(11)
    for _ in range(30):
        nr = rng.randint(1, 8)
        nc = rng.randint(1, 8)
        m = random_matrix(rng, nr, nc)
        for p in (2, 3, 5):
            dense = linalg.rank_mod_p_dense(m, p)
            cols = [
                [(i, m[i][j]) for i in range(nr) if m[i][j] % p]
                for j in range(nc)
            ]
            assert linalg.rank_mod_p_sparse(cols, p) == dense


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**31 - 1))
def test_rank_exact_matches_fraction_gauss(nr, nc, seed):
    rng = random.Random(seed)
    m = random_matrix(rng, nr, nc)
    assert linalg.rank_exact(m) == oracle._rank_fraction(m)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**31 - 1))
def test_rank_mod_p_matches_oracle(nr, nc, seed):
    rng = random.Random(seed)
    m = random_matrix(rng, nr, nc)
    for p in (2, 5):
        assert linalg.rank_mod_p_dense(m, p) == oracle._rank_mod_p(m, p)


def test_compiled_and_pure_bareiss_agree():
    rng = random.Random(23)
    for _ in range(40):
        nr = rng.randint(1, 7)
        nc = rng.randint(1, 7)
        m = random_matrix(rng, nr, nc, -9, 9)
        assert linalg.rank_exact(m) == pure_bareiss([list(r) for r in m])


def test_compiled_and_pure_mod_p_agree():
    rng = random.Random(29)
    for _ in range(20):
        m = np.array(random_matrix(rng, 6, 6, -9, 9), dtype=np.int64)
        for p in (2, 7):
            assert linalg.rank_mod_p_dense(m.tolist(), p) == pure_mod_p(m, p)


def test_big_entry_escalation():
    # entries beyond the int64 guard must take the arbitrary-precision path
    big = 1 << 40
    m = [[big, 0], [0, big]]
    assert linalg.rank_exact(m) == 2
    huge = 1 << 70  # does not even fit int64
    assert linalg.rank_exact([[huge, huge], [huge, huge]]) == 1


def test_bareiss_growth_case():
    # dense +-1 matrices make Bareiss intermediates grow; exact rank must hold
    rng = random.Random(7)
    n = 12
    m = [[rng.choice((-1, 1)) for _ in range(n)] for _ in range(n)]
    assert linalg.rank_exact(m) == oracle._rank_fraction(m)


def test_kernel_mod_p():
    # x + y + z = 0 over Z/3: kernel has dimension 2
    rows = [[1, 1, 1]]
    basis = linalg.kernel_mod_p(rows, 3, 3)
    assert len(basis) == 2
    for vec in basis:
        assert sum(vec) % 3 == 0


def test_kernel_exact_integral_and_valid():
    rows = [[2, -4, 0], [1, -2, 0]]
    basis = linalg.kernel_exact(rows, 3)
    assert len(basis) == 2
    for vec in basis:
        assert all(isinstance(v, int) for v in vec)
        for row in rows:
            assert sum(a * b for a, b in zip(row, vec)) == 0


def test_check_prime():
    assert linalg.check_prime(2) == 2
    assert linalg.check_prime(7919) == 7919
    for bad in (0, 1, 4, 9, 1 << 31):
        with pytest.raises(BadParameters):
            linalg.check_prime(bad)


def test_rank_over_dispatch():
    m = [[1, 1], [1, -1]]
    assert linalg.rank_over(m, None) == 2
    assert linalg.rank_over(m, 2) == 1
