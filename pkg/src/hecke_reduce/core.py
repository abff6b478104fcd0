"""Index, formal-sum and Hecke polynomial types.

Everything here is symbolic in the prime ``p``: a :class:`PrimeIndex` stores
exponents ``(K_1, ..., K_{n-1})`` standing for ``A(p^K_1, ..., p^K_{n-1})`` and
a :class:`HeckePolynomial` is an integer polynomial in the generators
``T_{p^k}``.  Numeric primes only show up in :class:`GeneralIndex`.

All values are immutable; arithmetic returns new canonical objects.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any

__all__ = [
    "RankMismatchError",
    "PrimeIndex",
    "GeneralIndex",
    "FormalSum",
    "HeckeMonomial",
    "HeckePolynomial",
]


class RankMismatchError(ValueError):
    """Raised when objects attached to different ranks ``n`` are combined."""


def _check_rank(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ValueError(f"rank n must be an integer >= 2, got {n!r}")


def _same_rank(a: int, b: int) -> None:
    if a != b:
        raise RankMismatchError(f"rank mismatch: n={a} vs n={b}")


@dataclass(frozen=True, order=True)
class PrimeIndex:
    """Exponent vector of a prime-power coefficient ``A(p^K_1, ..., p^K_{n-1})``."""

    n: int
    exps: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_rank(self.n)
        exps = tuple(int(e) for e in self.exps)
        object.__setattr__(self, "exps", exps)
        if len(exps) != self.n - 1:
            raise ValueError(f"index for n={self.n} needs {self.n - 1} exponents, got {len(exps)}")
        if any(e < 0 for e in exps):
            raise ValueError(f"exponents must be >= 0, got {exps}")

    @classmethod
    def zero(cls, n: int) -> PrimeIndex:
        return cls(n, (0,) * (n - 1))

    @classmethod
    def row(cls, n: int, k: int) -> PrimeIndex:
        """The index ``(k, 0, ..., 0)`` whose coefficient is the eigenvalue of ``T_{p^k}``."""
        return cls(n, (k,) + (0,) * (n - 2))

    @classmethod
    def unit(cls, n: int, slot: int) -> PrimeIndex:
        """``p`` in position ``slot`` (1-based), ``1`` elsewhere."""
        if not 1 <= slot <= n - 1:
            raise ValueError(f"slot must lie in [1, {n - 1}], got {slot}")
        exps = [0] * (n - 1)
        exps[slot - 1] = 1
        return cls(n, tuple(exps))

    @property
    def weight(self) -> int:
        return sum(self.exps)

    @property
    def last_nonzero(self) -> int:
        """1-based position of the last nonzero slot, 0 for the trivial index."""
        for i in range(len(self.exps), 0, -1):
            if self.exps[i - 1]:
                return i
        return 0

    def is_zero(self) -> bool:
        return not any(self.exps)

    def __str__(self) -> str:
        parts = ["1" if e == 0 else ("p" if e == 1 else f"p^{e}") for e in self.exps]
        return f"A({', '.join(parts)})"


@dataclass(frozen=True)
class GeneralIndex:
    """``(m_1, ..., m_{n-1})`` with positive entries; the sign of ``m_{n-1}`` is kept apart."""

    n: int
    entries: tuple[int, ...]
    last_sign: int = 1

    def __post_init__(self) -> None:
        _check_rank(self.n)
        entries = tuple(int(m) for m in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.n - 1:
            raise ValueError(f"index for n={self.n} needs {self.n - 1} entries, got {len(entries)}")
        if any(m < 1 for m in entries):
            raise ValueError(f"entries must be positive, got {entries}")
        if self.last_sign not in (1, -1):
            raise ValueError(f"last_sign must be +1 or -1, got {self.last_sign!r}")

    @classmethod
    def from_signed(cls, n: int, values: Iterable[int]) -> GeneralIndex:
        """Build from integers where only the last one may be negative."""
        values = [int(v) for v in values]
        if any(v == 0 for v in values):
            raise ValueError("Fourier coefficient indices must be nonzero")
        if any(v < 0 for v in values[:-1]):
            raise ValueError("only the last entry may be negative")
        sign = -1 if values and values[-1] < 0 else 1
        return cls(n, tuple(abs(v) for v in values), sign)

    def signed(self) -> tuple[int, ...]:
        return self.entries[:-1] + (self.last_sign * self.entries[-1],)

    def compose(self, other: GeneralIndex) -> GeneralIndex:
        """Entrywise product ``(m_i m_i')``; signs multiply."""
        _same_rank(self.n, other.n)
        return GeneralIndex(
            self.n,
            tuple(a * b for a, b in zip(self.entries, other.entries)),
            self.last_sign * other.last_sign,
        )


class FormalSum:
    """Integer combination of :class:`PrimeIndex` terms of a single rank.

    Terms are keyed by exponent tuples internally; zero coefficients are never
    stored, so two sums are equal iff their term maps are equal.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], int] | Iterable[tuple[Any, int]] = ()):
        _check_rank(n)
        acc: dict[tuple[int, ...], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            if isinstance(key, PrimeIndex):
                _same_rank(n, key.n)
                key = key.exps
            else:
                key = PrimeIndex(n, key).exps
            acc[key] = acc.get(key, 0) + int(coeff)
        self.n = n
        self._terms = MappingProxyType({k: c for k, c in sorted(acc.items()) if c})
        self._hash: int | None = None

    @classmethod
    def single(cls, index: PrimeIndex, coeff: int = 1) -> FormalSum:
        return cls(index.n, {index.exps: coeff})

    @property
    def terms(self) -> Mapping[tuple[int, ...], int]:
        return self._terms

    def items(self) -> Iterator[tuple[PrimeIndex, int]]:
        for exps, c in self._terms.items():
            yield PrimeIndex(self.n, exps), c

    def coefficient(self, index: PrimeIndex | Iterable[int]) -> int:
        key = index.exps if isinstance(index, PrimeIndex) else tuple(index)
        return self._terms.get(key, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: FormalSum) -> FormalSum:
        if not isinstance(other, FormalSum):
            return NotImplemented
        _same_rank(self.n, other.n)
        return FormalSum(self.n, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> FormalSum:
        return FormalSum(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: FormalSum) -> FormalSum:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: int) -> FormalSum:
        return FormalSum(self.n, {k: factor * c for k, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.n == other.n and dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"FormalSum(n={self.n}, {dict(self._terms)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for idx, c in self.items():
            out.append(_signed_term(c, str(idx), first=not out))
        return " ".join(out)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "terms": [{"coeff": str(c), "index": list(k)} for k, c in self._terms.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> FormalSum:
        return cls(int(data["n"]), [(tuple(t["index"]), int(t["coeff"])) for t in data["terms"]])


@dataclass(frozen=True)
class HeckeMonomial:
    """Product ``prod_k T_{p^k}^{mult}`` stored as sorted ``(k, mult)`` pairs."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[int, int] = {}
        for level, mult in self.factors:
            level, mult = int(level), int(mult)
            if level < 0 or mult < 0:
                raise ValueError(f"invalid generator power T_(p^{level})^{mult}")
            if level == 0 or mult == 0:
                continue  # T_1 is the identity
            merged[level] = merged.get(level, 0) + mult
        object.__setattr__(self, "factors", tuple(sorted(merged.items())))

    @classmethod
    def generator(cls, level: int, mult: int = 1) -> HeckeMonomial:
        return cls(((level, mult),))

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.factors)

    @property
    def weight(self) -> int:
        """Sum of ``k * mult``: the total power of ``p`` carried by the monomial."""
        return sum(k * m for k, m in self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __mul__(self, other: HeckeMonomial) -> HeckeMonomial:
        return HeckeMonomial(self.factors + other.factors)

    def sort_key(self) -> tuple:
        return (self.degree, self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for k, m in self.factors:
            gen = "T_p" if k == 1 else f"T_{{p^{k}}}"
            parts.append(gen if m == 1 else f"{gen}^{m}")
        return "*".join(parts)


class HeckePolynomial:
    """Element ``eps^parity * sum c_mono * mono`` of the local Hecke algebra.

    ``eps`` is the formal parity sign (``eps^2 = 1``) distinguishing even and
    odd forms.  The zero polynomial always has parity 0.
    """

    __slots__ = ("n", "_terms", "parity", "_hash")

    def __init__(
        self,
        n: int,
        terms: Mapping[HeckeMonomial, int] | Iterable[tuple[HeckeMonomial, int]] = (),
        parity: int = 0,
    ):
        _check_rank(n)
        if parity < 0:
            raise ValueError("parity power must be >= 0")
        acc: dict[HeckeMonomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            if not isinstance(mono, HeckeMonomial):
                mono = HeckeMonomial(tuple(mono))
            acc[mono] = acc.get(mono, 0) + int(coeff)
        ordered = sorted(((m, c) for m, c in acc.items() if c), key=lambda mc: mc[0].sort_key())
        self.n = n
        self._terms = MappingProxyType(dict(ordered))
        self.parity = parity % 2 if ordered else 0
        self._hash: int | None = None

    # constructors

    @classmethod
    def zero(cls, n: int) -> HeckePolynomial:
        return cls(n)

    @classmethod
    def constant(cls, n: int, value: int) -> HeckePolynomial:
        return cls(n, {HeckeMonomial(): value})

    @classmethod
    def one(cls, n: int) -> HeckePolynomial:
        return cls.constant(n, 1)

    @classmethod
    def generator(cls, n: int, level: int) -> HeckePolynomial:
        """``T_{p^level}``; level 0 is the identity and negative levels give 0."""
        if level < 0:
            return cls.zero(n)
        return cls(n, {HeckeMonomial.generator(level): 1})

    @classmethod
    def epsilon(cls, n: int) -> HeckePolynomial:
        return cls(n, {HeckeMonomial(): 1}, parity=1)

    # access

    @property
    def terms(self) -> Mapping[HeckeMonomial, int]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def levels(self) -> set[int]:
        return {k for mono in self._terms for k, _ in mono.factors}

    def constant_term(self) -> int:
        return self._terms.get(HeckeMonomial(), 0)

    def is_constant(self) -> bool:
        return all(not m.factors for m in self._terms)

    # arithmetic

    def _coerce(self, other: object) -> HeckePolynomial | None:
        if isinstance(other, HeckePolynomial):
            _same_rank(self.n, other.n)
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return HeckePolynomial.constant(self.n, other)
        return None

    def __add__(self, other: object) -> HeckePolynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.parity != other.parity:
            raise ValueError("cannot add polynomials with different parity powers")
        return HeckePolynomial(self.n, list(self._terms.items()) + list(other._terms.items()), self.parity)

    __radd__ = __add__

    def __neg__(self) -> HeckePolynomial:
        return HeckePolynomial(self.n, {m: -c for m, c in self._terms.items()}, self.parity)

    def __sub__(self, other: object) -> HeckePolynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> HeckePolynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: object) -> HeckePolynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc: dict[HeckeMonomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                acc[m] = acc.get(m, 0) + c1 * c2
        return HeckePolynomial(self.n, acc, self.parity + other.parity)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> HeckePolynomial:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = HeckePolynomial.one(self.n)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def substitute(self, images: Mapping[int, HeckePolynomial]) -> HeckePolynomial:
        """Replace ``T_{p^k}`` by ``images[k]`` for every level present in ``images``."""
        result = HeckePolynomial.zero(self.n)
        for mono, coeff in self._terms.items():
            term = HeckePolynomial.constant(self.n, coeff)
            for level, mult in mono.factors:
                factor = images.get(level)
                if factor is None:
                    factor = HeckePolynomial.generator(self.n, level)
                term = term * factor**mult
            result = result + term
        if self.parity:
            result = result * HeckePolynomial.epsilon(self.n)
        return result

    # comparison and output

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = HeckePolynomial.constant(self.n, other)
        if not isinstance(other, HeckePolynomial):
            return NotImplemented
        return self.n == other.n and self.parity == other.parity and dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.parity, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"HeckePolynomial(n={self.n}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for mono, c in self._terms.items():
            out.append(_signed_term(c, "" if not mono.factors else str(mono), first=not out))
        body = " ".join(out)
        if self.parity:
            return f"eps*({body})" if len(out) > 1 else f"eps*{body}"
        return body

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "parity": self.parity,
            "terms": [
                {"coeff": str(c), "monomial": [[k, m] for k, m in mono.factors]}
                for mono, c in self._terms.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> HeckePolynomial:
        terms = [
            (HeckeMonomial(tuple((int(k), int(m)) for k, m in t["monomial"])), int(t["coeff"]))
            for t in data["terms"]
        ]
        return cls(int(data["n"]), terms, int(data.get("parity", 0)))


def _signed_term(coeff: int, body: str, first: bool) -> str:
    mag = abs(coeff)
    if not body:
        text = str(mag)
    elif mag == 1:
        text = body
    else:
        text = f"{mag}*{body}"
    if first:
        return f"-{text}" if coeff < 0 else text
    return f"- {text}" if coeff < 0 else f"+ {text}"
