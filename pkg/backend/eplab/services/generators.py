#!/usr/bin/env python3
"""
Seeded random matrix generators
Haar unitaries, well-conditioned invertible blocks, annulus eigenvalues and
block-structured EP instances. Every generator takes an explicit seed or
numpy Generator and never touches global random state.
"""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..core.error_handling import RankOutOfRangeError

SeedLike = Union[int, Sequence[int], np.random.SeedSequence, np.random.Generator]

SIGMA_LOW, SIGMA_HIGH = 0.5, 2.0


def as_rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def trial_rng(suite_seed: int, check_index: int, trial: int) -> np.random.Generator:
    """Per-trial stream derived from (suite seed, check, trial) only"""
    return np.random.default_rng(np.random.SeedSequence([suite_seed, check_index, trial]))


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """QR of a complex Gaussian with the diagonal phase of R folded back into Q"""
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    q, r = np.linalg.qr(complex_gaussian(rng, n, n))
    d = np.diag(r)
    mag = np.abs(d)
    phases = np.ones_like(d)
    nonzero = mag > 0
    phases[nonzero] = d[nonzero] / mag[nonzero]
    return q * phases


def annulus_values(rng: np.random.Generator, k: int,
                   low: float = SIGMA_LOW, high: float = SIGMA_HIGH) -> np.ndarray:
    """k complex numbers with modulus in [low, high] and uniform argument"""
    radius = rng.uniform(low, high, size=k)
    angle = rng.uniform(0.0, 2.0 * np.pi, size=k)
    return radius * np.exp(1j * angle)


def random_invertible(r: int, rng: np.random.Generator, normal: bool = False) -> np.ndarray:
    """
    r×r invertible block with singular values in [0.5, 2]; diagonal when
    ``normal``, otherwise U1·Σ·U2* with independent unitaries
    """
    if r == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    if normal:
        return np.diag(annulus_values(rng, r))
    u1 = haar_unitary(r, rng)
    u2 = haar_unitary(r, rng)
    sigma = rng.uniform(SIGMA_LOW, SIGMA_HIGH, size=r)
    return (u1 * sigma) @ u2.conj().T


def random_polynomial(block: np.ndarray, rng: np.random.Generator, degree: int = 2) -> np.ndarray:
    """c0·I + c1·B + ... + c_deg·B^deg with coefficients from the unit disk"""
    r = block.shape[0]
    result = np.zeros((r, r), dtype=np.complex128)
    power = np.eye(r, dtype=np.complex128)
    for _ in range(degree + 1):
        coeff = annulus_values(rng, 1, 0.0, 1.0)[0]
        result = result + coeff * power
        power = power @ block
    return result


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    n = int(np.sum([b.shape[0] for b in blocks]))
    out = np.zeros((n, n), dtype=np.complex128)
    offset = 0
    for b in blocks:
        k = b.shape[0]
        out[offset:offset + k, offset:offset + k] = b
        offset += k
    return out


def conjugate_by(q: np.ndarray, block: np.ndarray) -> np.ndarray:
    """Q·block·Q*"""
    return q @ block @ q.conj().T


@dataclass(frozen=True, eq=False)
class EPBlockInstance:
    """T = Q·diag(B, 0)·Q* together with its factors"""
    q: np.ndarray
    block: np.ndarray
    rank: int

    @property
    def n(self) -> int:
        return self.q.shape[0]

    def matrix(self) -> np.ndarray:
        r = self.rank
        qr = self.q[:, :r]
        return qr @ self.block @ qr.conj().T

    def lift(self, top: np.ndarray, bottom: np.ndarray) -> np.ndarray:
        """Q·diag(top, bottom)·Q*"""
        return conjugate_by(self.q, block_diag(top, bottom))


def ep_block_instance(n: int, r: int, rng: np.random.Generator,
                      make_normal: bool = False) -> EPBlockInstance:
    if not 0 <= r <= n:
        raise RankOutOfRangeError(n, r)
    q = haar_unitary(n, rng)
    block = random_invertible(r, rng, normal=make_normal)
    return EPBlockInstance(q=q, block=block, rank=r)


def random_low_rank(rng: np.random.Generator, rows: int, cols: int, r: int) -> np.ndarray:
    """rows×cols matrix of rank r with singular values in [0.5, 2] and unrelated range/corange"""
    if r == 0:
        return np.zeros((rows, cols), dtype=np.complex128)
    left = haar_unitary(rows, rng)[:, :r]
    right = haar_unitary(cols, rng)[:, :r]
    sigma = rng.uniform(SIGMA_LOW, SIGMA_HIGH, size=r)
    return (left * sigma) @ right.conj().T


