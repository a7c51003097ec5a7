"""Force-gradient and Trotter-type product formulas for small spin models.

Build a model, pick a schedule, and measure its error against exact evolution::

    >>> from forcegrad import build_model, make_scheme, find_n_min
    >>> model = build_model("tim1d", 1.5)
    >>> find_n_min(model, make_scheme("FGD", model)).n_min
    31
"""

from .bench import (
    ErrorPoint,
    NMinResult,
    OrderFit,
    epsilon,
    epsilon_at_n,
    exact_evolution,
    find_n_min,
    fit_order,
    fourth_order_operator,
    nmin_grid,
    predicted_evolution,
    sweep_error,
)
from .linalg import (
    NonHermitianError,
    Spectrum,
    commutator,
    eigh,
    expm_i_hermitian,
    frobenius_sq,
    matmul,
)
from .models import (
    ModelSpec,
    SplitHamiltonian,
    build_gauge_stripe,
    build_model,
    build_tim_2x3,
    build_tim_chain,
    verify_commutator_identity,
)
from .pauli import OperatorSum, PauliString, nested_commutator_dense, string_commutator, to_dense
from .schemes import (
    SCHEME_NAMES,
    Scheme,
    Stage,
    StageCoeff,
    apply_scheme,
    count_exponentials,
    force_gradient_reference,
    make_scheme,
    step_operator,
)

__version__ = "0.1.0"
