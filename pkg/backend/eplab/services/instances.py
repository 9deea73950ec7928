#!/usr/bin/env python3
"""
Random instance builders for the property suite
Hypothesis-satisfying operand sets for every checker (built from shared
unitary frames and invertible blocks) and unstructured operand sets for
the consistency sweeps
"""

from typing import Dict, Tuple

import numpy as np

from ..models.matrix import ComplexMatrix
from ..models.subspace import ConstraintSpec, Subspace
from .generators import (
    SIGMA_HIGH,
    SIGMA_LOW,
    annulus_values,
    block_diag,
    complex_gaussian,
    conjugate_by,
    ep_block_instance,
    haar_unitary,
    random_invertible,
    random_low_rank,
    random_polynomial,
)

Operands = Dict[str, ComplexMatrix]


def _cm(array: np.ndarray) -> ComplexMatrix:
    return ComplexMatrix(array)


def _rank(rng: np.random.Generator, n: int, low: int = 1) -> int:
    return int(rng.integers(low, n + 1))


def _composition(rng: np.random.Generator, n: int) -> Tuple[int, ...]:
    """Random split of n into positive group sizes"""
    cuts = sorted(rng.choice(np.arange(1, n), size=int(rng.integers(0, n)), replace=False)) if n > 1 else []
    edges = [0, *cuts, n]
    return tuple(int(b - a) for a, b in zip(edges, edges[1:]))


def fuglede_classic(rng: np.random.Generator, n: int) -> Operands:
    """N = Q·diag(λ)·Q* with repeated eigenvalues, A block diagonal on the eigenspaces"""
    q = haar_unitary(n, rng)
    groups = _composition(rng, n)
    values = annulus_values(rng, len(groups))
    if rng.random() < 0.3:
        values[0] = 0.0
    lam = np.concatenate([np.full(size, v) for size, v in zip(groups, values)])
    a = block_diag(*(complex_gaussian(rng, size, size) for size in groups))
    return {"T": _cm(conjugate_by(q, np.diag(lam))), "A": _cm(conjugate_by(q, a))}


def putnam_classic(rng: np.random.Generator, n: int) -> Operands:
    """N, M normal with permuted spectra and A = Q2·Π·diag(d)·Q1* intertwining them"""
    q1, q2 = haar_unitary(n, rng), haar_unitary(n, rng)
    lam = annulus_values(rng, n)
    perm = rng.permutation(n)
    mu = lam[perm]
    x = np.zeros((n, n), dtype=np.complex128)
    d = complex_gaussian(rng, 1, n)[0]
    d[rng.random(n) < 0.25] = 0.0
    x[np.arange(n), perm] = d
    return {
        "T": _cm(conjugate_by(q1, np.diag(lam))),
        "S": _cm(conjugate_by(q2, np.diag(mu))),
        "A": _cm(q2 @ x @ q1.conj().T),
    }


def fuglede_mp(rng: np.random.Generator, n: int) -> Operands:
    """T = Q·diag(B, 0)·Q* EP, A = Q·diag(p(B), D)·Q*"""
    inst = ep_block_instance(n, _rank(rng, n), rng)
    a = inst.lift(random_polynomial(inst.block, rng), complex_gaussian(rng, n - inst.rank, n - inst.rank))
    return {"T": _cm(inst.matrix()), "A": _cm(a)}


def _scaled_unitary(rng: np.random.Generator, r: int) -> np.ndarray:
    """c·U with U Haar unitary, so B*B is a multiple of the identity"""
    return annulus_values(rng, 1)[0] * haar_unitary(r, rng)


def fuglede_adjoint(rng: np.random.Generator, n: int) -> Operands:
    """T = Q·diag(c·U, 0)·Q*, A = Q·diag(p(U), D)·Q*; both adjoint variants hold"""
    r = _rank(rng, n)
    q = haar_unitary(n, rng)
    block = _scaled_unitary(rng, r)
    top = random_polynomial(block, rng)
    t = conjugate_by(q, block_diag(block, np.zeros((n - r, n - r))))
    a = conjugate_by(q, block_diag(top, complex_gaussian(rng, n - r, n - r)))
    return {"T": _cm(t), "A": _cm(a)}


def _intertwined(rng: np.random.Generator, n: int, r: int, block: np.ndarray, x: np.ndarray):
    """T = Q1·diag(B,0)·Q1*, S = Q2·diag(XBX⁻¹,0)·Q2* and the frames Q1, Q2"""
    q1, q2 = haar_unitary(n, rng), haar_unitary(n, rng)
    zeros = np.zeros((n - r, n - r))
    t = conjugate_by(q1, block_diag(block, zeros))
    s = conjugate_by(q2, block_diag(x @ block @ np.linalg.inv(x), zeros))
    return t, s, q1, q2


def _between(q2: np.ndarray, top: np.ndarray, bottom: np.ndarray, q1: np.ndarray) -> np.ndarray:
    """Q2·diag(top, bottom)·Q1*"""
    return q2 @ block_diag(top, bottom) @ q1.conj().T


def putnam_mp(rng: np.random.Generator, n: int) -> Operands:
    """A = Q2·diag(X, Y)·Q1* carries T onto S: AT = SA"""
    r = _rank(rng, n)
    block = random_invertible(r, rng)
    x = random_invertible(r, rng)
    t, s, q1, q2 = _intertwined(rng, n, r, block, x)
    a = _between(q2, x, complex_gaussian(rng, n - r, n - r), q1)
    return {"T": _cm(t), "S": _cm(s), "A": _cm(a)}


def putnam_adjoint(rng: np.random.Generator, n: int) -> Operands:
    """putnam_mp with B = c·U and unitary X, so both adjoint variants hold"""
    r = _rank(rng, n)
    block = _scaled_unitary(rng, r)
    x = haar_unitary(r, rng)
    t, s, q1, q2 = _intertwined(rng, n, r, block, x)
    a = _between(q2, x, complex_gaussian(rng, n - r, n - r), q1)
    return {"T": _cm(t), "S": _cm(s), "A": _cm(a)}


def squares(rng: np.random.Generator, n: int) -> Operands:
    """A, B share the X block and differ on the kernel block"""
    r = _rank(rng, n)
    block = random_invertible(r, rng)
    x = random_invertible(r, rng)
    t, s, q1, q2 = _intertwined(rng, n, r, block, x)
    a = _between(q2, x, complex_gaussian(rng, n - r, n - r), q1)
    b = _between(q2, x, complex_gaussian(rng, n - r, n - r), q1)
    return {"T": _cm(t), "S": _cm(s), "A": _cm(a), "B": _cm(b)}


def two_sided(rng: np.random.Generator, n: int) -> Operands:
    """T EP, A = Q·diag(C, D1)·Q*, B = Q·diag(C, D2)·Q* with C a polynomial in the block"""
    inst = ep_block_instance(n, _rank(rng, n), rng)
    k = n - inst.rank
    c = random_polynomial(inst.block, rng)
    a = inst.lift(c, complex_gaussian(rng, k, k))
    b = inst.lift(c, complex_gaussian(rng, k, k))
    return {"T": _cm(inst.matrix()), "A": _cm(a), "B": _cm(b)}


def two_sided_pair(rng: np.random.Generator, n: int) -> Operands:
    """S = Q2·diag(XBX⁻¹,0)·Q2*, A and B = Q2·diag(X·p(B), ·)·Q1*"""
    r = _rank(rng, n)
    block = random_invertible(r, rng)
    x = random_invertible(r, rng)
    t, s, q1, q2 = _intertwined(rng, n, r, block, x)
    top = x @ random_polynomial(block, rng)
    a = _between(q2, top, complex_gaussian(rng, n - r, n - r), q1)
    b = _between(q2, top, complex_gaussian(rng, n - r, n - r), q1)
    return {"T": _cm(t), "S": _cm(s), "A": _cm(a), "B": _cm(b)}


def product_range_preserving(rng: np.random.Generator, n: int) -> Operands:
    """
    T EP and S = Q·diag(V1, V2)·Q* unitary with V1 acting on R(T):
    reverse-order law and both commutation conditions hold
    """
    inst = ep_block_instance(n, _rank(rng, n), rng)
    k = n - inst.rank
    s = inst.lift(haar_unitary(inst.rank, rng), haar_unitary(k, rng))
    return {"S": _cm(s), "T": _cm(inst.matrix())}


def product_unitary(rng: np.random.Generator, n: int) -> Operands:
    """S Haar unitary, T EP in an unrelated frame"""
    inst = ep_block_instance(n, _rank(rng, n), rng)
    return {"S": _cm(haar_unitary(n, rng)), "T": _cm(inst.matrix())}


def _spectrum_with_zeros(rng: np.random.Generator, n: int, zero_rate: float) -> np.ndarray:
    values = annulus_values(rng, n)
    values[rng.random(n) < zero_rate] = 0.0
    return values


def product_commuting(rng: np.random.Generator, n: int) -> Operands:
    """S, T normal and diagonal in one frame, with zeros"""
    q = haar_unitary(n, rng)
    s = conjugate_by(q, np.diag(_spectrum_with_zeros(rng, n, 0.3)))
    t = conjugate_by(q, np.diag(_spectrum_with_zeros(rng, n, 0.3)))
    return {"S": _cm(s), "T": _cm(t)}


def polar_commuting(rng: np.random.Generator, n: int) -> Operands:
    """S invertible normal and T normal, diagonal in one frame"""
    q = haar_unitary(n, rng)
    s = conjugate_by(q, np.diag(annulus_values(rng, n)))
    t = conjugate_by(q, np.diag(_spectrum_with_zeros(rng, n, 0.3)))
    return {"S": _cm(s), "T": _cm(t)}


def normal_or_invertible(rng: np.random.Generator, n: int) -> Operands:
    """Random normal T (possibly singular) or random invertible T"""
    if rng.random() < 0.5:
        q = haar_unitary(n, rng)
        return {"T": _cm(conjugate_by(q, np.diag(_spectrum_with_zeros(rng, n, 0.3))))}
    return {"T": _cm(random_invertible(n, rng))}


def random_constraint_spec(rng: np.random.Generator, n: int) -> Tuple[ConstraintSpec, ComplexMatrix]:
    """Random coordinate presentation of a d-dimensional subspace plus invertible free coordinates"""
    d = _rank(rng, n)
    free = tuple(sorted(int(i) for i in rng.choice(n, size=d, replace=False)))
    constrained = [c for c in range(n) if c not in free]
    coefficients = {c: tuple(complex_gaussian(rng, 1, d)[0]) for c in constrained}
    return ConstraintSpec.build(n, free, coefficients), _cm(random_invertible(d, rng))


def random_subspace(rng: np.random.Generator, n: int, d: int) -> Subspace:
    return Subspace(n, _cm(haar_unitary(n, rng)[:, :d]))


def random_operand(rng: np.random.Generator, n: int) -> np.ndarray:
    """One unstructured operand: Gaussian, EP, low-rank, normal or nilpotent"""
    kind = int(rng.integers(0, 5))
    if kind == 0:
        return complex_gaussian(rng, n, n)
    if kind == 1:
        return ep_block_instance(n, _rank(rng, n), rng).matrix()
    if kind == 2:
        return random_low_rank(rng, n, n, _rank(rng, n - 1 if n > 1 else 1, 0))
    if kind == 3:
        return conjugate_by(haar_unitary(n, rng), np.diag(_spectrum_with_zeros(rng, n, 0.3)))
    # nilpotent shift with well-conditioned weights
    weights = rng.uniform(SIGMA_LOW, SIGMA_HIGH, size=n - 1)
    return conjugate_by(haar_unitary(n, rng), np.diag(weights, k=1).astype(np.complex128))


def unstructured(rng: np.random.Generator, n: int) -> Operands:
    """
    Operands for the consistency sweeps; A and B are sometimes polynomials
    in T so that commutation hypotheses hold without EP-ness
    """
    t = random_operand(rng, n)
    ops = {"T": t, "S": t if rng.random() < 0.2 else random_operand(rng, n)}
    for name in ("A", "B"):
        ops[name] = random_polynomial(t, rng) if rng.random() < 0.35 else random_operand(rng, n)
    return {name: _cm(value) for name, value in ops.items()}
