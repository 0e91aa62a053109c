import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strange_msd import gf3
from strange_msd.errors import InvalidInputError


def matrices(max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 2), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def test_rref_small_example():
    m = [[2, 1, 0], [1, 2, 0], [0, 1, 1]]
    red, rk = gf3.rref(m)
    assert rk == 2
    assert red.tolist() == [[1, 0, 1], [0, 1, 1], [0, 0, 0]]


def test_rank_of_zero_matrix():
    assert gf3.rank(np.zeros((3, 4), dtype=np.uint8)) == 0


def test_kernel_of_repetition_row():
    ker = gf3.kernel([[1, 1, 1]])
    assert ker.shape == (2, 3)
    assert not ((ker.astype(int) @ np.ones(3, dtype=int)) % 3).any()


def test_kernel_trivial_is_empty():
    assert gf3.kernel(np.eye(3, dtype=np.uint8)).shape == (0, 3)


def test_entries_are_reduced_mod_3():
    assert gf3.asmatrix([[0, 3, -1]]).tolist() == [[0, 0, 2]]


def test_odd_flat_vector_rejected():
    with pytest.raises(InvalidInputError):
        gf3.SymplecticVector.from_flat([1, 2, 0])


def test_symplectic_product_single_qutrit():
    assert gf3.symplectic_product([1, 0], [0, 1]) == 1
    assert gf3.symplectic_product([0, 1], [1, 0]) == 2


def test_symplectic_dual_of_css_rep3():
    h = [[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1]]
    dual = gf3.symplectic_dual(h)
    assert dual.shape[0] == 4
    assert not gf3.symplectic_gram(np.vstack([np.array(h, dtype=np.uint8), dual]))[:2].any()


def test_span_of_two_generators():
    elems = gf3.span([[1, 0, 1], [0, 1, 1]])
    assert len({tuple(e) for e in elems}) == 9


def test_span_blocks_cover_span():
    rng = np.random.default_rng(3)
    gens = rng.integers(0, 3, size=(12, 14)).astype(np.uint8)
    blocks = list(gf3.span_blocks(gens, block_rank=10))
    assert sum(len(b) for b in blocks) == 3 ** 12


def test_support_weight_counts_symplectic_pairs():
    vecs = np.array([[1, 0, 0, 0, 2, 0], [0, 0, 0, 0, 0, 0]], dtype=np.uint8)
    assert gf3.support_weight(vecs, 3).tolist() == [2, 0]


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_kernel_is_annihilated_and_sized(rows):
    m = np.array(rows, dtype=np.uint8)
    ker = gf3.kernel(m)
    assert ker.shape[0] == m.shape[1] - gf3.rank(m)
    if ker.shape[0]:
        assert not ((m.astype(int) @ ker.T.astype(int)) % 3).any()
        assert gf3.rank(ker) == ker.shape[0]


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rref_preserves_row_space(rows):
    m = np.array(rows, dtype=np.uint8)
    red, rk = gf3.rref(m)
    assert red.shape == m.shape
    assert not red[rk:].any()
    for row in m:
        assert gf3.in_row_span(row, red[:rk]) if rk else not row.any()


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, 2), min_size=2 * n, max_size=2 * n),
    st.lists(st.integers(0, 2), min_size=2 * n, max_size=2 * n))))
def test_symplectic_product_is_antisymmetric(pair):
    a, b = pair
    assert (gf3.symplectic_product(a, b) + gf3.symplectic_product(b, a)) % 3 == 0
    assert gf3.symplectic_product(a, a) == 0


@given(st.lists(st.integers(0, 2), min_size=1, max_size=40))
def test_pack_round_trip(trits):
    assert gf3.unpack_trits(gf3.pack_trits(trits), len(trits)).tolist() == trits


def test_symplectic_vector_flat_round_trip():
    sv = gf3.SymplecticVector.from_flat([1, 2, 0, 0, 1, 1])
    assert sv.n == 3
    assert sv.flat.tolist() == [1, 2, 0, 0, 1, 1]
