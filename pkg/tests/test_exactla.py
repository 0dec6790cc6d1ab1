import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thickcentre import _kernels
from thickcentre import exactla as la

from oracles import rank_by_counting, rank_mod_p

PRIMES = [2, 3, 101]


def matrices(max_rows=6, max_cols=6, primes=PRIMES):
    @st.composite
    def build(draw):
        p = draw(st.sampled_from(primes))
        r = draw(st.integers(0, max_rows))
        c = draw(st.integers(0, max_cols))
        vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
        return np.array(vals, dtype=np.int64).reshape(r, c), p
    return build()


def test_field_spec_rejects_non_primes():
    for bad in (0, 1, 4, 100, -7):
        with pytest.raises(ValueError):
            la.FieldSpec(bad)
    with pytest.raises(ValueError):
        la.FieldSpec(32771)  # prime, but above the overflow-safe bound
    assert la.FieldSpec(2).p == 2


def test_rank_small_examples():
    assert la.rank(np.array([[1, 1], [1, 1]]), 2) == 1
    assert la.rank(np.array([[1, 2], [3, 4]]), 2) == 1  # det = -2
    assert la.rank(np.array([[1, 2], [3, 4]]), 101) == 2
    assert la.rank(la.zeros(3, 0), 5) == 0


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_plain_elimination(mp):
    m, p = mp
    assert la.rank(m, p) == (rank_mod_p(m, p) if m.size else 0)


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=3, max_cols=4, primes=[2, 3]))
def test_rank_matches_image_count(mp):
    m, p = mp
    if m.size == 0:
        return
    assert la.rank(m, p) == rank_by_counting(m, p)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_basis_is_a_basis_of_the_null_space(mp):
    m, p = mp
    k = la.kernel_basis(m, p)
    assert k.shape == (m.shape[1], m.shape[1] - la.rank(m, p))
    if k.size and m.size:
        assert not la.matmul(m, k, p).any()
    assert la.rank(k, p) == k.shape[1]


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rref_is_idempotent_and_rank_preserving(mp):
    m, p = mp
    r, rk = la.rref(m, p)
    r2, rk2 = la.rref(r, p)
    assert rk == rk2
    assert np.array_equal(r, r2)


@settings(max_examples=80, deadline=None)
@given(matrices(max_rows=5, max_cols=5), st.data())
def test_solver_finds_solutions_exactly_when_consistent(mp, data):
    a, p = mp
    if a.shape[0] == 0:
        return
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[1], max_size=a.shape[1])),
                 dtype=np.int64)
    b = np.mod(a @ x, p) if a.shape[1] else la.zeros(a.shape[0], 1)[:, 0]
    sol = la.solve(a, b, p)
    assert sol is not None
    assert np.array_equal(np.mod(a @ sol, p), np.mod(b, p))


def test_solver_reports_inconsistent_systems():
    a = np.array([[1, 0], [0, 0]])
    assert la.solve(a, np.array([0, 1]), 7) is None
    assert not la.Solver(a, 7).consistent(np.array([0, 1]))


@pytest.mark.parametrize("p", PRIMES)
def test_inverse_round_trip(p):
    rng = np.random.default_rng(p)
    found = 0
    while found < 5:
        a = rng.integers(0, p, size=(4, 4))
        if la.rank(a, p) < 4:
            with pytest.raises(ZeroDivisionError):
                la.inverse(a, p)
            continue
        inv = la.inverse(a, p)
        assert np.array_equal(la.matmul(a, inv, p), la.identity(4))
        found += 1


def test_subspace_sum_and_equality():
    p = 5
    e1 = np.array([[1], [0], [0]])
    e2 = np.array([[0], [1], [0]])
    both = la.subspace_sum(e1, e2, p=p)
    assert both.shape[1] == 2
    assert la.subspace_equal(both, np.array([[1, 1], [1, 4], [0, 0]]), p)
    assert not la.subspace_equal(e1, e2, p)


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=8, max_cols=8))
def test_numba_and_numpy_kernels_agree(mp):
    m, p = mp
    if m.size == 0:
        return
    a, b = m.copy(), m.copy()
    r1, piv1 = _kernels.rref_inplace_numba(a, p)
    r2, piv2 = _kernels.rref_inplace_numpy(b, p)
    assert r1 == r2
    assert np.array_equal(piv1, piv2)
    assert np.array_equal(a, b)


def test_disable_flag_selects_numpy_path(monkeypatch):
    import importlib
    monkeypatch.setenv("THICKCENTRE_DISABLE_NUMBA", "1")
    mod = importlib.reload(_kernels)
    try:
        assert not mod.USE_NUMBA
        a = np.array([[2, 4], [1, 3]], dtype=np.int64)
        assert mod.rref_inplace(a, 5)[0] == 2
    finally:
        monkeypatch.delenv("THICKCENTRE_DISABLE_NUMBA")
        importlib.reload(_kernels)
