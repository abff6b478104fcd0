"""Local Euler factor, its series inverse and Dirichlet coefficients.

The local factor at ``p`` is

    1 - A(p,1,...,1) X + A(1,p,1,...,1) X^2 - ... + (-1)^(n-1) A(1,...,1,p) X^(n-1) + (-1)^n X^n

with ``X = p^-s``; its inverse generates ``A(p^k, 1, ..., 1) = T_{p^k}``.
Because the top coefficient is the constant 1, the inverse only reproduces
``T_{p^k}`` for ``k >= n`` after rewriting the higher generators in terms of
``T_p, ..., T_{p^(n-1)}``; :func:`normal_form` does that rewriting.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import GeneralIndex, HeckePolynomial
from .reducer import MultiPrimeReduction, Reducer, compose_slot, factorize

__all__ = [
    "EulerFactorSeries",
    "euler_factor",
    "invert_factor",
    "higher_generator_images",
    "normal_form",
    "dirichlet_coefficients",
]


@dataclass(frozen=True)
class EulerFactorSeries:
    n: int
    coeffs: tuple[HeckePolynomial, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.n + 1:
            raise ValueError(f"an Euler factor of rank {self.n} has {self.n + 1} coefficients")

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.coeffs]


def euler_factor(n: int) -> EulerFactorSeries:
    if n < 2:
        raise ValueError(f"rank must be >= 2, got {n}")
    coeffs = [HeckePolynomial.one(n)]
    for j in range(1, n):
        coeffs.append((-1) ** j * compose_slot(n, j))
    coeffs.append(HeckePolynomial.constant(n, (-1) ** n))
    return EulerFactorSeries(n, tuple(coeffs))


def invert_factor(factor: EulerFactorSeries, upto: int) -> list[HeckePolynomial]:
    """Coefficients ``b_0, ..., b_upto`` of ``1 / sum_j coeffs[j] X^j``."""
    if upto < 0:
        raise ValueError(f"upto must be >= 0, got {upto}")
    if factor.coeffs[0] != HeckePolynomial.one(factor.n):
        raise ValueError("constant term of the Euler factor must be 1")
    out = [HeckePolynomial.one(factor.n)]
    for k in range(1, upto + 1):
        acc = HeckePolynomial.zero(factor.n)
        for j in range(1, min(k, factor.n) + 1):
            acc = acc - factor.coeffs[j] * out[k - j]
        out.append(acc)
    return out


def higher_generator_images(n: int, top: int) -> dict[int, HeckePolynomial]:
    """``T_{p^k}`` for ``n <= k <= top`` written in ``T_p, ..., T_{p^(n-1)}``.

    Uses ``T_{p^k} = sum_{j=1}^{n} (-1)^(j+1) e_j T_{p^(k-j)}`` with ``e_j`` the
    slot-``j`` polynomial for ``j < n`` and ``e_n = 1``.
    """
    e = {j: compose_slot(n, j) for j in range(1, n)}
    e[n] = HeckePolynomial.one(n)
    images = {k: HeckePolynomial.generator(n, k) for k in range(n)}
    for k in range(n, top + 1):
        acc = HeckePolynomial.zero(n)
        for j in range(1, n + 1):
            sign = 1 if j % 2 else -1
            acc = acc + sign * e[j] * images[k - j]
        images[k] = acc
    return {k: v for k, v in images.items() if k >= n}


def normal_form(poly: HeckePolynomial) -> HeckePolynomial:
    """Rewrite every ``T_{p^k}`` with ``k >= n`` through the Euler-factor relation.

    The result only involves ``T_p, ..., T_{p^(n-1)}``, which are algebraically
    independent, so two polynomials define the same eigenvalue for every form
    exactly when their normal forms agree.
    """
    top = max(poly.levels(), default=0)
    if top < poly.n:
        return poly
    return poly.substitute(higher_generator_images(poly.n, top))


def dirichlet_coefficients(upto: int, n: int, reducer: Reducer | None = None) -> dict[int, MultiPrimeReduction]:
    """Reductions of ``A(m, 1, ..., 1)`` for ``1 <= m <= upto``."""
    if upto < 1:
        raise ValueError(f"upto must be >= 1, got {upto}")
    return {m: factorize(GeneralIndex(n, (m,) + (1,) * (n - 2)), reducer) for m in range(1, upto + 1)}
