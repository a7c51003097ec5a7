"""Error measurement against the exact evolution ``exp(i t H)``.

``epsilon`` is the relative Frobenius distance between the exact propagator and
a decomposed one.  Everything here is deterministic; the grid helper may run
cells on a thread pool but always returns them in a fixed order.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .linalg import expm_i_hermitian, frobenius_sq
from .models import SplitHamiltonian, build_model
from .pauli import nested_commutator_dense
from .schemes import SCHEME_NAMES, Scheme, apply_scheme, count_exponentials, make_scheme

__all__ = [
    "DEFAULT_M_MAX",
    "ErrorPoint",
    "NMinResult",
    "OrderFit",
    "exact_evolution",
    "epsilon",
    "find_n_min",
    "sweep_error",
    "fourth_order_operator",
    "predicted_evolution",
    "fit_order",
    "epsilon_at_n",
    "nmin_grid",
]

DEFAULT_M_MAX = 10_000

# (weight, nesting) for the tau^4 term of the force-gradient effective Hamiltonian;
# a nesting (a, b, ..., z) means [a, [b, [..., z]]] and "C" is [S, T]
_FOURTH_ORDER_TERMS = (
    (41, ("S", "S", "S", "S", "T")),
    (36, ("C", "S", "C")),
    (72, ("C", "T", "C")),
    (84, ("T", "S", "S", "S", "T")),
    (126, ("T", "T", "S", "S", "T")),
    (54, ("T", "T", "T", "S", "T")),
)
_FOURTH_ORDER_PREFACTOR = -1.0 / 155520.0


@dataclass(frozen=True)
class ErrorPoint:
    m: int
    n: int
    epsilon: float


@dataclass(frozen=True)
class NMinResult:
    """Outcome of an ``n_min`` search.

    When ``found`` is false, ``m_min``/``n_min``/``epsilon_at_min`` are ``None``
    and ``best_m``/``best_epsilon`` describe the smallest error seen.
    """

    scheme: str
    model: str
    coupling: float
    t: float
    threshold: float
    m_min: int | None
    n_min: int | None
    epsilon_at_min: float | None
    best_m: int
    best_epsilon: float

    @property
    def found(self) -> bool:
        return self.m_min is not None


def exact_evolution(model: SplitHamiltonian, t: float) -> np.ndarray:
    """``exp(i t H)`` from the (memoized) spectrum of H."""
    return model.spectrum("H").expi(t)


def epsilon(model: SplitHamiltonian, scheme: Scheme, t: float, m: int) -> float:
    """``sqrt(||exp(itH) - M||) / sqrt(||exp(itH)||)`` with ``||.||`` the sum of
    squared moduli and ``M`` the scheme applied for ``m`` steps."""
    exact = exact_evolution(model, t)
    approx = apply_scheme(scheme, model, t, m)
    return math.sqrt(frobenius_sq(exact - approx)) / math.sqrt(frobenius_sq(exact))


def find_n_min(
    model: SplitHamiltonian,
    scheme: Scheme,
    t: float = 1.0,
    threshold: float = 1e-3,
    m_max: int = DEFAULT_M_MAX,
) -> NMinResult:
    """Scan ``m = 1, 2, ...`` and stop at the first ``epsilon < threshold``."""
    if not threshold > 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    best_m, best_eps = 1, math.inf
    for m in range(1, m_max + 1):
        e = epsilon(model, scheme, t, m)
        if e < best_eps:
            best_m, best_eps = m, e
        if e < threshold:
            return NMinResult(
                scheme.name, model.kind, model.coupling, t, threshold,
                m, count_exponentials(scheme, m), e, best_m, best_eps,
            )
    return NMinResult(
        scheme.name, model.kind, model.coupling, t, threshold,
        None, None, None, best_m, best_eps,
    )


def sweep_error(
    model: SplitHamiltonian, scheme: Scheme, t: float, m_list: Sequence[int]
) -> list[ErrorPoint]:
    m_list = list(m_list)
    if not m_list:
        raise ValueError("m_list is empty")
    if any(b <= a for a, b in zip(m_list, m_list[1:])):
        raise ValueError("m_list must be strictly ascending")
    return [
        ErrorPoint(m, count_exponentials(scheme, m), epsilon(model, scheme, t, m))
        for m in m_list
    ]


def fourth_order_operator(model: SplitHamiltonian) -> np.ndarray:
    """Coefficient of ``tau^4`` in the effective Hamiltonian of the force-gradient step.

    One step of ``force_gradient_reference`` equals
    ``exp(i tau (S + T + tau^4 F + O(tau^6)))`` with ``F`` the returned matrix.
    """
    s, t = model.dense("S"), model.dense("T")
    c = nested_commutator_dense([s, t])
    mats = {"S": s, "T": t, "C": c}
    out = np.zeros_like(s)
    for weight, nesting in _FOURTH_ORDER_TERMS:
        out = out + weight * nested_commutator_dense([mats[k] for k in nesting])
    return _FOURTH_ORDER_PREFACTOR * out


def predicted_evolution(model: SplitHamiltonian, t: float, m: int) -> np.ndarray:
    """``exp(i t (H + tau^4 F))`` with ``tau = t/m``: the force-gradient propagator
    to leading order in its defect."""
    tau = t / m
    return expm_i_hermitian(model.dense("H") + tau**4 * fourth_order_operator(model), t)


@dataclass(frozen=True)
class OrderFit:
    slope: float
    points: tuple[ErrorPoint, ...]


def fit_order(
    model: SplitHamiltonian,
    scheme: Scheme,
    t: float,
    m_values: Iterable[int],
    window: tuple[float, float] = (1e-8, 1e-2),
) -> OrderFit:
    """Least-squares ``-d log(eps) / d log(m)`` over the points with eps inside ``window``."""
    lo, hi = window
    pts = tuple(p for p in sweep_error(model, scheme, t, sorted(set(m_values))) if lo < p.epsilon < hi)
    if len(pts) < 2:
        raise ValueError(f"only {len(pts)} points fall inside the window {window}")
    x = np.log([p.m for p in pts])
    y = np.log([p.epsilon for p in pts])
    slope = -np.polyfit(x, y, 1)[0]
    return OrderFit(float(slope), pts)


def epsilon_at_n(points: Sequence[ErrorPoint], n: float) -> float:
    """Log-log linear interpolation of an error curve at exponential count ``n``."""
    ns = np.array([p.n for p in points], dtype=float)
    es = np.array([p.epsilon for p in points], dtype=float)
    if not ns[0] <= n <= ns[-1]:
        raise ValueError(f"n={n} outside the sampled range [{ns[0]:g}, {ns[-1]:g}]")
    return float(np.exp(np.interp(np.log(n), np.log(ns), np.log(es))))


def nmin_grid(
    kind: str,
    couplings: Iterable[float],
    schemes: Iterable[str] = SCHEME_NAMES,
    t: float = 1.0,
    threshold: float = 1e-3,
    m_max: int = DEFAULT_M_MAX,
    workers: int | None = None,
) -> list[NMinResult]:
    """``find_n_min`` over every (coupling, scheme) cell, ordered by coupling then
    by the order of ``schemes``."""
    schemes = [s.upper() for s in schemes]
    cells = [(c, s) for c in couplings for s in schemes]
    models = {c: build_model(kind, c) for c, _ in cells}
    # fill each model's memo (dense operators, spectra) before threads share it
    for c, s in cells:
        epsilon(models[c], make_scheme(s, models[c]), t, 1)

    def run(cell):
        c, s = cell
        model = models[c]
        return find_n_min(model, make_scheme(s, model), t, threshold, m_max)

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, cells))
    else:
        results = [run(cell) for cell in cells]
    return results
