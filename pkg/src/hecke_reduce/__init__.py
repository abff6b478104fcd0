"""Symbolic reduction of SL(n,Z) Maass form Fourier coefficients to Hecke polynomials."""

from .core import FormalSum, GeneralIndex, HeckeMonomial, HeckePolynomial, PrimeIndex, RankMismatchError
from .identities import (
    divisor_tuples,
    hecke_product,
    lemma_expansion,
    second_lemma_expansion,
    step_identity,
)
from .lfunction import dirichlet_coefficients, euler_factor, invert_factor, normal_form
from .reducer import (
    MultiPrimeReduction,
    Reducer,
    compose_slot,
    factorize,
    recurrence_slot,
    reduce,
    second_slot,
)
from .satake import SatakeModel, eval_general, eval_index, eval_poly, eval_sum, random_model

__version__ = "0.1.0"
