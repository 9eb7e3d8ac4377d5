import numpy as np
import pytest

from specgap.algebra import AlgebraSpec
from specgap.sampling import (haar_unitary, random_block_operator, random_hermitian,
                              random_projection, random_psd, random_subprojection,
                              rng_from_seed, spawn_rngs)


def test_haar_unitary_is_unitary(rng):
    U = haar_unitary(6, rng)
    np.testing.assert_allclose(U @ U.conj().T, np.eye(6), atol=1e-12)


def test_seeding_is_reproducible():
    a = haar_unitary(4, rng_from_seed(7))
    b = haar_unitary(4, rng_from_seed(7))
    np.testing.assert_array_equal(a, b)
    # tuple seeds address distinct streams, and nest
    c = haar_unitary(4, rng_from_seed((7, 0)))
    assert not np.allclose(a, c)
    haar_unitary(4, rng_from_seed(((7, 1), 2)))     # must not raise


def test_spawn_rngs_differ():
    r1, r2 = spawn_rngs(3, 2)
    assert r1.standard_normal() != r2.standard_normal()


def test_random_block_operator_shape(rng):
    alg = AlgebraSpec(dims=(2, 5), tail="none")
    T = random_block_operator(alg, rng)
    assert T.dims == (2, 5) and T.ids == (0, 1)
    assert np.iscomplexobj(T.block(0))


def test_random_hermitian_and_psd(rng):
    H = random_hermitian(5, rng)
    np.testing.assert_allclose(H, H.conj().T, atol=1e-14)
    S = random_psd(5, rng)
    assert np.linalg.eigvalsh(S).min() >= -1e-12


def test_random_projection_and_subprojection(rng):
    alg = AlgebraSpec(dims=(4, 3), tail="none")
    P = random_projection(alg, ranks=(2, 3), rng=rng)
    assert P.ranks == (2, 3)
    Q = random_subprojection(P, (1, 2), rng)
    assert Q.ranks == (1, 2)
    # Q sits under P
    assert (P.base @ Q.base - Q.base).is_zero(tol=1e-9)
    # requested ranks are capped by P's
    assert random_subprojection(P, (4, 0), rng).ranks == (2, 0)
