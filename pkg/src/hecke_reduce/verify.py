"""Oracle verification suite behind the ``verify`` command."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .core import HeckePolynomial, PrimeIndex
from .identities import hecke_product, step_identity
from .lfunction import euler_factor, invert_factor
from .reducer import Reducer
from .satake import SatakeModel, eval_index, eval_poly, eval_sum, random_model, relative_error

SCHEMA = "hecke-reduce/1"


def indices_up_to(n: int, max_weight: int) -> list[PrimeIndex]:
    """All rank-``n`` indices with ``K_1 + ... + K_{n-1} <= max_weight``, sorted by weight."""
    out = [
        PrimeIndex(n, e)
        for e in itertools.product(range(max_weight + 1), repeat=n - 1)
        if sum(e) <= max_weight
    ]
    return sorted(out, key=lambda i: (i.weight, i.exps))


@dataclass
class Check:
    kind: str
    label: str
    errors: list[float] = field(default_factory=list)

    def to_json(self, tol: float) -> dict[str, Any]:
        worst = max(self.errors, default=0.0)
        return {"kind": self.kind, "label": self.label, "max_rel_err": worst, "pass": worst <= tol}


def run_verification(
    n: int,
    max_weight: int,
    trials: int,
    seed: int,
    tol: float = 1e-8,
    reducer: Reducer | None = None,
) -> dict[str, Any]:
    """Evaluate every symbolic identity in ``trials`` random Satake models.

    Returns a JSON-ready report; ``report["pass"]`` is the overall verdict.
    """
    if n < 2 or max_weight < 0 or trials < 1 or tol <= 0:
        raise ValueError("need n >= 2, max_weight >= 0, trials >= 1, tol > 0")
    reducer = reducer or Reducer()
    indices = indices_up_to(n, max_weight)
    checks: dict[tuple[str, str], Check] = {}

    def record(kind: str, label: str, got: complex, want: complex) -> None:
        key = (kind, label)
        if key not in checks:
            checks[key] = Check(kind, label)
        checks[key].errors.append(relative_error(got, want))

    reductions = {idx: reducer.reduce(idx) for idx in indices}
    expansions = {
        (k0, idx): hecke_product(k0, idx) for k0 in range(max_weight + 1) for idx in indices
    }
    steps = [(j, k, step_identity(n, j, k)) for j in range(1, max_weight + 1) for k in range(1, n)]
    factor = euler_factor(n)
    inverse = invert_factor(factor, max(max_weight, n + 2))

    for t in range(trials):
        model = random_model(n, seed * 7919 + t)
        value = {idx: eval_index(model, idx) for idx in indices}

        def ev(idx: PrimeIndex) -> complex:
            return value[idx] if idx in value else eval_index(model, idx)

        for idx, poly in reductions.items():
            record("reduce", str(idx.exps), eval_poly(model, poly), value[idx])
        for (k0, idx), terms in expansions.items():
            lhs = ev(PrimeIndex.row(n, k0)) * value[idx]
            record("hecke_product", f"k0={k0} {idx.exps}", eval_sum(model, terms), lhs)
        for j, k, ((left_a, left_b), right) in steps:
            record("step_identity", f"j={j} k={k}", eval_sum(model, right), ev(left_a) * ev(left_b))
        _euler_checks(model, factor.coeffs, inverse, record)

    rows = [c.to_json(tol) for c in checks.values()]
    worst = max((r["max_rel_err"] for r in rows), default=0.0)
    return {
        "schema": SCHEMA,
        "n": n,
        "max_weight": max_weight,
        "trials": trials,
        "seed": seed,
        "tol": tol,
        "checks": rows,
        "max_rel_err": worst,
        "pass": all(r["pass"] for r in rows),
    }


def _euler_checks(model: SatakeModel, coeffs, inverse: list[HeckePolynomial], record) -> None:
    n = model.n
    # coefficients of prod_i (1 - alpha_i X) in increasing powers of X
    elementary = np.poly(np.asarray(model.alpha))
    for j, c in enumerate(coeffs):
        record("euler_factor", f"X^{j}", eval_poly(model, c), complex(elementary[j]))
    for k, b in enumerate(inverse):
        record("euler_inverse", f"X^{k}", eval_poly(model, b), eval_index(model, PrimeIndex.row(n, k)))
