"""Seeded random generators for operators, projections and norm specs.

Everything routes through :func:`rng_from_seed` / :func:`spawn_rngs` so that
runs are reproducible from a single integer seed and per-trial streams do not
depend on evaluation order.
"""

from __future__ import annotations

import numpy as np

from .algebra import AlgebraSpec, BlockOperator, Projection, validate_projection

__all__ = [
    "rng_from_seed",
    "spawn_rngs",
    "haar_unitary",
    "random_block_operator",
    "random_hermitian",
    "random_psd",
    "random_projection",
    "random_subprojection",
]


def _entropy(seed):
    if isinstance(seed, (tuple, list)):
        flat = []
        for s in seed:
            e = _entropy(s)
            flat.extend(e if isinstance(e, list) else [e])
        # SeedSequence zero-pads its entropy, so (s, 0) would otherwise
        # collide with s; a trailing length marker keeps streams distinct.
        flat.append(len(flat))
        return flat
    return int(seed)


def rng_from_seed(seed) -> np.random.Generator:
    """Generator from an int seed or a tuple of ints (hierarchical seeds)."""
    return np.random.default_rng(np.random.SeedSequence(_entropy(seed)))


def spawn_rngs(seed, n: int):
    """n independent generators derived from one seed (order-stable)."""
    return [np.random.default_rng(s)
            for s in np.random.SeedSequence(_entropy(seed)).spawn(n)]


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    # fix the phase ambiguity so the distribution is exactly Haar
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _ginibre(n, rng, scale=1.0):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * z / np.sqrt(2.0 * n)


def random_block_operator(alg: AlgebraSpec, rng, scale: float = 1.0) -> BlockOperator:
    """Independent normalized Ginibre blocks on the realized summands."""
    return BlockOperator(tuple(
        (i, _ginibre(d, rng, scale)) for i, d in enumerate(alg.dims)
    ))


def random_hermitian(n: int, rng, scale: float = 1.0) -> np.ndarray:
    g = _ginibre(n, rng, scale)
    return (g + g.conj().T) / 2.0


def random_psd(n: int, rng, scale: float = 1.0) -> np.ndarray:
    g = _ginibre(n, rng, scale)
    return g @ g.conj().T


def random_projection(alg: AlgebraSpec, ranks, rng, tol: float = 1e-9) -> Projection:
    """Random orthogonal projection with the given rank in each realized summand."""
    blocks = []
    for i, (d, r) in enumerate(zip(alg.dims, ranks)):
        if not 0 <= r <= d:
            raise ValueError(f"rank {r} out of range for dim {d}")
        if r == 0:
            blocks.append((i, np.zeros((d, d))))
        else:
            u = haar_unitary(d, rng)[:, :r]
            blocks.append((i, u @ u.conj().T))
    return validate_projection(BlockOperator(tuple(blocks)), tol=tol)


def random_subprojection(P: Projection, ranks, rng, tol: float = 1e-9) -> Projection:
    """Random projection E <= P with prescribed block ranks (capped by P's)."""
    blocks = []
    for (sid, b), pr, r in zip(P.base.summands, P.ranks, ranks):
        d = b.shape[0]
        r = min(int(r), pr)
        if r == 0:
            blocks.append((sid, np.zeros((d, d))))
            continue
        evals, vecs = np.linalg.eigh((b + b.conj().T) / 2.0)
        basis = vecs[:, evals > 0.5]                  # range of the block
        mix = haar_unitary(basis.shape[1], rng)[:, :r]
        w = basis @ mix
        blocks.append((sid, w @ w.conj().T))
    return validate_projection(BlockOperator(tuple(blocks)), tol=tol)
