"""Numeric oracle built on Satake parameters.

A model is a tuple ``alpha`` of ``n`` complex numbers with product one.  The
prime-power coefficient with exponents ``K`` is modelled by the Schur
polynomial ``s_lambda(alpha)`` where ``lambda_i = K_i + ... + K_{n-1}`` and
``lambda_n = 0``, evaluated as a ratio of alternants.  None of this shares
code with the symbolic side, which is the point.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .core import FormalSum, HeckePolynomial, PrimeIndex, RankMismatchError
from .reducer import MultiPrimeReduction

__all__ = [
    "IllConditionedModel",
    "SatakeModel",
    "random_model",
    "partition_of",
    "eval_index",
    "eval_index_branching",
    "eval_sum",
    "eval_poly",
    "eval_general",
    "relative_error",
    "models_for_primes",
]

DET_TOL = 1e-12
MIN_SEPARATION = 1e-6


class IllConditionedModel(ValueError):
    """Satake parameters too close together for the alternant ratio."""


@dataclass(frozen=True)
class SatakeModel:
    n: int
    alpha: tuple[complex, ...]
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.n < 2 or len(self.alpha) != self.n:
            raise ValueError(f"need n >= 2 parameters, got n={self.n}, {len(self.alpha)} values")
        object.__setattr__(self, "alpha", tuple(complex(a) for a in self.alpha))
        if abs(np.prod(self.alpha) - 1) > DET_TOL:
            raise ValueError("Satake parameters must have product 1")

    @property
    def separation(self) -> float:
        return min(abs(a - b) for a, b in combinations(self.alpha, 2))


def random_model(n: int, seed: int, max_tries: int = 100, min_separation: float = MIN_SEPARATION) -> SatakeModel:
    """Draw ``n - 1`` parameters uniformly (by area) on ``0.5 <= |z| <= 2``; the last closes the product."""
    if n < 2:
        raise ValueError(f"rank must be >= 2, got {n}")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        radius = np.sqrt(rng.uniform(0.25, 4.0, size=n - 1))
        angle = rng.uniform(0.0, 2 * math.pi, size=n - 1)
        head = radius * np.exp(1j * angle)
        alpha = tuple(head) + (1 / np.prod(head),)
        model = SatakeModel(n, alpha, seed)
        if model.separation >= min_separation:
            return model
    raise RuntimeError(f"no well-separated model for n={n}, seed={seed} after {max_tries} tries")


def partition_of(index: PrimeIndex) -> tuple[int, ...]:
    """``lambda_i = K_i + ... + K_{n-1}`` for ``i < n`` and ``lambda_n = 0``."""
    lam = []
    total = 0
    for k in reversed(index.exps):
        total += k
        lam.append(total)
    return tuple(reversed(lam)) + (0,)


def eval_index(model: SatakeModel, index: PrimeIndex) -> complex:
    if index.n != model.n:
        raise RankMismatchError(f"model has n={model.n}, index has n={index.n}")
    if model.separation < MIN_SEPARATION:
        raise IllConditionedModel(f"separation {model.separation:.3g} below {MIN_SEPARATION}")
    return _bialternant(model.alpha, partition_of(index))


@lru_cache(maxsize=65536)
def _bialternant(alpha: tuple[complex, ...], lam: tuple[int, ...]) -> complex:
    n = len(alpha)
    x = np.asarray(alpha, dtype=complex)[:, None]
    delta = np.arange(n - 1, -1, -1)
    num = np.linalg.det(x ** (np.asarray(lam) + delta))
    den = np.linalg.det(x**delta)
    return complex(num / den)


def eval_index_branching(model: SatakeModel, index: PrimeIndex) -> complex:
    """Schur value by the interlacing branching rule; slow, for cross-checks only."""
    return _branch(model.alpha, partition_of(index))


def _branch(alpha: tuple[complex, ...], lam: tuple[int, ...]) -> complex:
    if len(alpha) == 1:
        return alpha[0] ** lam[0]
    head, last = alpha[:-1], alpha[-1]
    size = sum(lam)
    total = 0j
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(len(lam) - 1)]
    for mu in _product(ranges):
        total += _branch(head, mu) * last ** (size - sum(mu))
    return total


def _product(ranges):
    if not ranges:
        yield ()
        return
    for first in ranges[0]:
        for rest in _product(ranges[1:]):
            yield (first,) + rest


def eval_sum(model: SatakeModel, terms: FormalSum) -> complex:
    if terms.n != model.n:
        raise RankMismatchError(f"model has n={model.n}, sum has n={terms.n}")
    return sum((c * eval_index(model, idx) for idx, c in terms.items()), 0j)


def eval_poly(model: SatakeModel, poly: HeckePolynomial, parity_value: int = 1) -> complex:
    """Substitute ``T_{p^k} -> s_(k)(alpha)`` and ``eps -> parity_value``."""
    if poly.n != model.n:
        raise RankMismatchError(f"model has n={model.n}, polynomial has n={poly.n}")
    if parity_value not in (1, -1):
        raise ValueError("parity_value must be +1 or -1")
    gens: dict[int, complex] = {}
    total = 0j
    for mono, coeff in poly.terms.items():
        term = complex(coeff)
        for level, mult in mono.factors:
            if level not in gens:
                gens[level] = eval_index(model, PrimeIndex.row(model.n, level))
            term *= gens[level] ** mult
        total += term
    return total * parity_value**poly.parity


def eval_general(
    models: Mapping[int, SatakeModel],
    reduction: MultiPrimeReduction,
    parity_value: int = 1,
) -> complex:
    value = complex(parity_value**reduction.parity)
    for p, poly in reduction.factors:
        if p not in models:
            raise KeyError(f"no Satake model for p={p}")
        value *= eval_poly(models[p], poly)
    return value


def models_for_primes(n: int, primes, seed: int) -> dict[int, SatakeModel]:
    """One independent model per prime, derived deterministically from ``seed``."""
    return {p: random_model(n, seed * 1_000_003 + p) for p in primes}


def relative_error(got: complex, want: complex) -> float:
    return abs(got - want) / (1 + abs(want))
