"""Reduction of Fourier coefficients to polynomials in ``T_{p^k}``.

A prime-power coefficient ``A(p^J_1, ..., p^J_s, 1, ..., 1)`` with ``J_s > 0``
and ``s >= 2`` is the corner term of the nested-sum expansion of
``T_{p^K0} * A(p^J_2, ..., p^J_s, 1, ..., 1)`` with ``K0 = J_1 + ... + J_s``.
Every other term of that expansion is strictly smaller in the order

    (last nonzero slot, then slots s, s-1, ..., 2 compared lexicographically)

so solving for the corner and recursing terminates.  The order check runs on
every recursive edge.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Any

from .core import GeneralIndex, HeckePolynomial, PrimeIndex, _same_rank
from .identities import lemma_expansion

__all__ = [
    "OrderViolation",
    "order_key",
    "Reducer",
    "reduce",
    "compositions",
    "compose_slot",
    "recurrence_slot",
    "second_slot",
    "factor_integer",
    "MultiPrimeReduction",
    "factorize",
]


class OrderViolation(RuntimeError):
    """A recursive call did not strictly decrease the termination order."""


def order_key(index: PrimeIndex) -> tuple[int, tuple[int, ...]]:
    s = index.last_nonzero
    return s, tuple(index.exps[i] for i in range(s - 1, 0, -1))


class Reducer:
    """Memoised reducer; instances are safe to share between threads.

    ``edges_checked`` counts parent/child pairs whose order was verified and
    ``violations`` lists any that failed (an :class:`OrderViolation` is raised
    as well).
    """

    def __init__(self, memoize: bool = True):
        self.memoize = memoize
        self._cache: dict[tuple[int, tuple[int, ...]], HeckePolynomial] = {}
        self._lock = threading.RLock()
        self.edges_checked = 0
        self.violations: list[tuple[PrimeIndex, PrimeIndex]] = []

    def clear(self) -> None:
        with self._lock:
            self._cache.clear()

    def _edge(self, parent: PrimeIndex, child: PrimeIndex) -> None:
        self.edges_checked += 1
        if not order_key(child) < order_key(parent):
            self.violations.append((parent, child))
            raise OrderViolation(f"{child} is not below {parent} in the reduction order")

    def reduce(self, index: PrimeIndex) -> HeckePolynomial:
        with self._lock:
            return self._reduce(index)

    def _reduce(self, index: PrimeIndex) -> HeckePolynomial:
        key = (index.n, index.exps)
        if self.memoize and key in self._cache:
            return self._cache[key]

        n, J = index.n, index.exps
        s = index.last_nonzero
        if s <= 1:
            result = HeckePolynomial.generator(n, J[0])
        else:
            k0 = sum(J[:s])
            shifted = PrimeIndex(n, J[1:s] + (0,) * (n - s))
            expansion = lemma_expansion(n, k0, J[1:s])
            if expansion.coefficient(J) != 1:
                raise AssertionError(f"corner term {index} missing from its expansion")

            self._edge(index, shifted)
            result = HeckePolynomial.generator(n, k0) * self._reduce(shifted)
            for term, coeff in expansion.items():
                if term.exps == J:
                    continue
                self._edge(index, term)
                result = result - coeff * self._reduce(term)

        if self.memoize:
            self._cache[key] = result
        return result


_default = Reducer()


def reduce(index: PrimeIndex, reducer: Reducer | None = None) -> HeckePolynomial:
    """Hecke polynomial whose eigenvalue is ``A(p^K_1, ..., p^K_{n-1})``."""
    return (reducer or _default).reduce(index)


def compositions(total: int):
    """Ordered tuples of positive integers summing to ``total``."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def _check_slot(n: int, slot: int, low: int = 1) -> None:
    if not low <= slot <= n - 1:
        raise ValueError(f"slot must lie in [{low}, {n - 1}] for n={n}, got {slot}")


def compose_slot(n: int, slot: int) -> HeckePolynomial:
    """Sum over compositions ``(i_1, ..., i_r)`` of ``slot`` of ``prod (-1)^(i_j+1) T_{p^i_j}``."""
    _check_slot(n, slot)
    result = HeckePolynomial.zero(n)
    for comp in compositions(slot):
        term = HeckePolynomial.one(n)
        for part in comp:
            sign = 1 if part % 2 else -1
            term = term * (sign * HeckePolynomial.generator(n, part))
        result = result + term
    return result


def recurrence_slot(n: int, slot: int) -> HeckePolynomial:
    """``A(1, ..., p, ..., 1)`` from ``sum_m (-1)^(m+1) T_{p^m} A_{0, slot-m}`` with ``A_{0,0} = 1``."""
    _check_slot(n, slot, low=2)
    memo: dict[int, HeckePolynomial] = {0: HeckePolynomial.one(n)}

    def unit(ell: int) -> HeckePolynomial:
        if ell not in memo:
            total = HeckePolynomial.zero(n)
            for m in range(1, ell + 1):
                sign = 1 if m % 2 else -1
                total = total + sign * HeckePolynomial.generator(n, m) * unit(ell - m)
            memo[ell] = total
        return memo[ell]

    return unit(slot)


def second_slot(n: int, j: int) -> HeckePolynomial:
    """Closed form ``T_{p^j}^2 - T_{p^(j-1)} T_{p^(j+1)}`` for ``A(1, p^j, 1, ..., 1)``."""
    if n < 3:
        raise ValueError(f"the second slot needs n >= 3, got n={n}")
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    T = lambda k: HeckePolynomial.generator(n, k)  # noqa: E731
    return T(j) ** 2 - T(j - 1) * T(j + 1)


def factor_integer(m: int) -> dict[int, int]:
    """Prime factorisation by trial division."""
    if m < 1:
        raise ValueError(f"can only factor positive integers, got {m}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@dataclass(frozen=True)
class MultiPrimeReduction:
    """``eps^parity * prod_p P_p`` with each ``P_p`` a polynomial in that prime's ``T_{p^k}``."""

    n: int
    factors: tuple[tuple[int, HeckePolynomial], ...] = ()
    parity: int = 0

    def __post_init__(self) -> None:
        primes = [p for p, _ in self.factors]
        if len(set(primes)) != len(primes):
            raise ValueError(f"duplicate primes in {primes}")
        for _, poly in self.factors:
            _same_rank(self.n, poly.n)
        object.__setattr__(self, "factors", tuple(sorted(self.factors, key=lambda f: f[0])))
        object.__setattr__(self, "parity", self.parity % 2)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def factor(self, p: int) -> HeckePolynomial:
        for q, poly in self.factors:
            if q == p:
                return poly
        return HeckePolynomial.one(self.n)

    def __mul__(self, other: MultiPrimeReduction) -> MultiPrimeReduction:
        if not isinstance(other, MultiPrimeReduction):
            return NotImplemented
        _same_rank(self.n, other.n)
        merged = dict(self.factors)
        for p, poly in other.factors:
            merged[p] = merged[p] * poly if p in merged else poly
        return MultiPrimeReduction(self.n, tuple(merged.items()), self.parity + other.parity)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "parity": self.parity,
            "factors": [{"p": p, "poly": poly.to_json()} for p, poly in self.factors],
        }


def factorize(M: GeneralIndex, reducer: Reducer | None = None) -> MultiPrimeReduction:
    """Split ``A(m_1, ..., m_{n-1})`` into per-prime reductions."""
    per_entry = [factor_integer(m) for m in M.entries]
    primes = sorted(set().union(*per_entry))
    factors = []
    for p in primes:
        exps = tuple(f.get(p, 0) for f in per_entry)
        factors.append((p, reduce(PrimeIndex(M.n, exps), reducer)))
    return MultiPrimeReduction(M.n, tuple(factors), 1 if M.last_sign < 0 else 0)
