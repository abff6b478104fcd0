"""Hecke multiplication identity and its specialisations as formal sums.

The basic relation expresses ``A(m, 1, ..., 1) * A(m_1, ..., m_{n-1})`` as a
sum over divisor tuples ``(c_1, ..., c_n)`` with ``c_1 ... c_n = m`` and
``c_i | m_i`` of ``A(m_1 c_n / c_1, m_2 c_1 / c_2, ..., m_{n-1} c_{n-2} / c_{n-1})``.

:func:`hecke_product` is the one generic implementation of that relation at a
single prime.  :func:`lemma_expansion` and :func:`second_lemma_expansion` are
written directly from the nested ``k_1, ..., k_r`` sums and are kept
independent so they can be used as cross-checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod

from .core import FormalSum, GeneralIndex, PrimeIndex

__all__ = [
    "DivisorTuple",
    "divisors",
    "divisor_tuples",
    "general_hecke_product",
    "hecke_product",
    "lemma_expansion",
    "SplitIndex",
    "second_lemma_expansion",
    "a_jk",
    "step_identity",
]


def divisors(m: int) -> list[int]:
    if m < 1:
        raise ValueError(f"divisors() needs a positive integer, got {m}")
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class DivisorTuple:
    """``(c_1, ..., c_n)`` with ``prod c_i = m`` and ``c_i | m_i`` for ``i < n``."""

    c: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(ci < 1 for ci in self.c):
            raise ValueError(f"divisor tuple entries must be positive, got {self.c}")


def divisor_tuples(m: int, M: GeneralIndex) -> list[DivisorTuple]:
    """All divisor tuples for the multiplier ``m`` against ``M``, in lexicographic order."""
    if m < 1:
        raise ValueError(f"multiplier must be >= 1, got {m}")
    out: list[DivisorTuple] = []

    def walk(i: int, remaining: int, acc: list[int]) -> None:
        if i == M.n - 1:
            out.append(DivisorTuple(tuple(acc) + (remaining,)))
            return
        for d in divisors(gcd(M.entries[i], remaining)):
            acc.append(d)
            walk(i + 1, remaining // d, acc)
            acc.pop()

    walk(0, m, [])
    return out


def general_hecke_product(m: int, M: GeneralIndex) -> list[GeneralIndex]:
    """Right-hand side of ``T_m A(M)`` for numeric entries, one index per divisor tuple.

    The sign of the last entry is carried through unchanged.
    """
    n = M.n
    out = []
    for t in divisor_tuples(m, M):
        c = t.c
        entries = [M.entries[0] * c[n - 1] // c[0]]
        entries += [M.entries[i] * c[i - 1] // c[i] for i in range(1, n - 1)]
        out.append(GeneralIndex(n, tuple(entries), M.last_sign))
    return out


def hecke_product(k0: int, M: PrimeIndex) -> FormalSum:
    """Expand ``T_{p^k0} * A(M)`` at a single symbolic prime.

    Each divisor tuple is ``c_i = p^{k_i}`` with ``0 <= k_i <= K_i`` for
    ``i < n`` and ``c_n = p^{k0 - sum k_i}``; repeated indices accumulate.
    """
    if k0 < 0:
        raise ValueError(f"k0 must be >= 0, got {k0}")
    n, K = M.n, M.exps
    acc: dict[tuple[int, ...], int] = {}
    for ks in itertools.product(*(range(Ki + 1) for Ki in K)):
        kn = k0 - sum(ks)
        if kn < 0:
            continue
        exps = (K[0] + kn - ks[0],) + tuple(K[i] + ks[i - 1] - ks[i] for i in range(1, n - 1))
        acc[exps] = acc.get(exps, 0) + 1
    return FormalSum(n, acc)


def _check_lemma_args(n: int, k0: int, ks: tuple[int, ...]) -> None:
    r = len(ks)
    if not 1 <= r <= n - 1:
        raise ValueError(f"need 1 <= r <= n-1 (n={n}), got r={r}")
    if any(k < 0 for k in ks) or k0 < 0:
        raise ValueError("exponents must be >= 0")
    if k0 < sum(ks):
        raise ValueError(f"need K0 >= K1 + ... + Kr, got K0={k0} < {sum(ks)}")


def _lemma_slots(k0: int, ks: tuple[int, ...], small: tuple[int, ...]) -> list[int]:
    """Exponents ``(L, K_2 + k_1 - k_2, ..., K_r + k_{r-1} - k_r, k_r)`` for one summand."""
    r = len(ks)
    L = k0 + ks[0] - 2 * small[0] - sum(small[1:])
    slots = [L]
    slots += [ks[i] + small[i - 1] - small[i] for i in range(1, r)]
    slots.append(small[r - 1])
    return slots


def lemma_expansion(n: int, k0: int, ks: tuple[int, ...] | list[int]) -> FormalSum:
    """Nested-sum form of ``A(p^K0, 1, ..., 1) * A(p^K1, ..., p^Kr, 1, ..., 1)``.

    Requires ``K0 >= K1 + ... + Kr``.  When ``r = n - 1`` the trailing
    ``p^{k_r}`` has no slot to land in and is dropped (it is the determinant
    direction, on which every coefficient is trivial).
    """
    ks = tuple(int(k) for k in ks)
    _check_lemma_args(n, k0, ks)
    acc: dict[tuple[int, ...], int] = {}
    for small in itertools.product(*(range(K + 1) for K in ks)):
        slots = _lemma_slots(k0, ks, small)[: n - 1]
        exps = tuple(slots) + (0,) * (n - 1 - len(slots))
        acc[exps] = acc.get(exps, 0) + 1
    return FormalSum(n, acc)


@dataclass(frozen=True)
class SplitIndex:
    """``A(p^{e_1} m_1, ..., p^{e_{n-1}} m_{n-1})`` with the cofactor kept opaque.

    ``cofactor`` is never factored; it only has to be prime to ``p``.
    """

    p_exps: tuple[int, ...]
    cofactor: GeneralIndex

    @property
    def n(self) -> int:
        return self.cofactor.n

    def materialize(self, p: int) -> GeneralIndex:
        """Numeric index for a concrete prime ``p``."""
        return GeneralIndex(
            self.n,
            tuple(p**e * m for e, m in zip(self.p_exps, self.cofactor.entries)),
            self.cofactor.last_sign,
        )

    def __str__(self) -> str:
        parts = []
        for i, (e, m) in enumerate(zip(self.p_exps, self.cofactor.entries), start=1):
            pe = "" if e == 0 else ("p" if e == 1 else f"p^{e}")
            mi = f"m{i}" if m != 1 else ""
            parts.append("*".join(x for x in (pe, mi) if x) or "1")
        if self.cofactor.last_sign < 0:
            parts[-1] = f"-{parts[-1]}"
        return f"A({', '.join(parts)})"


def second_lemma_expansion(
    k0: int,
    ks: tuple[int, ...] | list[int],
    M: GeneralIndex,
    *,
    coprime: bool = False,
) -> list[tuple[int, SplitIndex]]:
    """``T_{p^K0} * A(p^K1 m_1, ..., p^Kr m_r, m_{r+1}, ..., m_{n-1})`` for ``p`` prime to every ``m_i``.

    The caller asserts coprimality by passing ``coprime=True``; the entries of
    ``M`` are treated as opaque tokens.
    """
    if not coprime:
        raise ValueError("second_lemma_expansion requires p to be declared coprime to every m_i")
    ks = tuple(int(k) for k in ks)
    n = M.n
    _check_lemma_args(n, k0, ks)
    acc: dict[SplitIndex, int] = {}
    for small in itertools.product(*(range(K + 1) for K in ks)):
        slots = _lemma_slots(k0, ks, small)[: n - 1]
        exps = tuple(slots) + (0,) * (n - 1 - len(slots))
        key = SplitIndex(exps, M)
        acc[key] = acc.get(key, 0) + 1
    return sorted(((c, idx) for idx, c in acc.items()), key=lambda t: t[1].p_exps, reverse=True)


def check_coprime(p: int, M: GeneralIndex) -> bool:
    return prod(M.entries) % p != 0


def a_jk(n: int, j: int, k: int) -> PrimeIndex:
    """``A(p^j, 1, ..., 1)`` with its ``k``-th coordinate multiplied by ``p``.

    ``k = 0`` and ``k = n`` add nothing; ``k = 1`` merges into the first slot.
    """
    if j < 0:
        raise ValueError(f"j must be >= 0, got {j}")
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}], got {k}")
    exps = [j] + [0] * (n - 2)
    if 1 <= k <= n - 1:
        exps[k - 1] += 1
    return PrimeIndex(n, tuple(exps))


def step_identity(n: int, j: int, k: int) -> tuple[tuple[PrimeIndex, PrimeIndex], FormalSum]:
    """``A_{j,0} A_{0,k} = A_{j,k} + A_{j-1,k+1}`` as ``((A_{j,0}, A_{0,k}), rhs)``."""
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in [1, {n - 1}], got {k}")
    left = (a_jk(n, j, 0), a_jk(n, 0, k))
    right = FormalSum.single(a_jk(n, j, k)) + FormalSum.single(a_jk(n, j - 1, k + 1))
    return left, right
