import numpy as np
import pytest

from specgap.algebra import AlgebraSpec
from specgap.norms import BaseNorm, NormSpec
from specgap.sampling import random_block_operator, rng_from_seed


@pytest.fixture
def rng():
    return rng_from_seed(20260814)


@pytest.fixture
def small_alg():
    return AlgebraSpec(dims=(2, 3, 4), tail="none")


@pytest.fixture
def small_op(small_alg, rng):
    return random_block_operator(small_alg, rng)


def make_spec(weights, kinds=None, agg="sup", q=None, **tail):
    """Shorthand for NormSpec construction in tests."""
    kinds = kinds or [("operator", None, None)] * len(weights)
    base = tuple(BaseNorm(kind=k, p=p, k=kk) for k, p, kk in kinds)
    return NormSpec(base=base, weights=tuple(weights), agg=agg, q=q, **tail)


@pytest.fixture
def haar_pair(rng):
    from specgap.sampling import haar_unitary
    return haar_unitary(5, rng), haar_unitary(5, rng)
