import random

from hypothesis import given, settings, strategies as st

import properties as props

SEEDS = st.integers(min_value=0, max_value=2 ** 32 - 1)
letters = st.lists(st.tuples(st.integers(0, 3), st.sampled_from([1, -1])), max_size=14)


@settings(max_examples=500, deadline=None, derandomize=True)
@given(letters)
def test_fox_fundamental_identity(word):
    assert props.fox_identity_holds(word, 4)


@settings(max_examples=50, deadline=None, derandomize=True)
@given(SEEDS)
def test_deleted_column_independence(seed):
    assert props.columns_agree(random.Random(seed))


@settings(max_examples=50, deadline=None, derandomize=True)
@given(SEEDS)
def test_block_triangular_factorization(seed):
    assert props.block_triangular_factorizes(random.Random(seed))


@settings(max_examples=100, deadline=None, derandomize=True)
@given(SEEDS)
def test_determinant_engines_agree(seed):
    assert props.determinant_engines_agree(random.Random(seed))


@settings(max_examples=200, deadline=None, derandomize=True)
@given(SEEDS)
def test_frobenius_identity(seed):
    assert props.frobenius_identity(random.Random(seed))
