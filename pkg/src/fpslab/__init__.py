"""Exact formal power series toolkit for changes of variable, Bernoulli-type
numbers and residue identities."""
from .bernoulli import (
    BernoulliTable,
    NPolynomial,
    QTable,
    bernoulli_numbers,
    bernoulli_polynomial_value,
    convolution_check,
    divisibility_check,
    expansion_polynomial,
    q_recursive,
    q_series,
    weighted_convolution_check,
)
from .changevar import (
    Decomposition,
    DerivationTerm,
    SumForm,
    apply_decomposition,
    apply_derivation,
    cbh_check,
    decompose,
    exp_derivation,
    odd_vanishing_report,
    sum_form,
)
from .jacobi import (
    CoefficientQuery,
    coefficient_table,
    commutator_coefficient,
    generalized_binomial,
    residue_formula,
    residue_oracle,
)
from .reports import CheckReport
from .series import (
    LaurentSeries,
    PowerSeries,
    SeriesError,
    TruncationError,
    add,
    compose,
    exp_series,
    laurent_coefficient,
    laurent_mul,
    log_series,
    mul,
    reciprocal,
    reversion,
)

__version__ = "0.1.0"
