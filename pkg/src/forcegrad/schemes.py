"""Product-formula schedules and their application to a split Hamiltonian.

A scheme is one step of the form ``prod_k exp(i * sum_j c_kj(tau) * Op_kj)``,
repeated ``m`` times with ``tau = t / m``.  Stage coefficients are polynomials
``c1 * tau + c3 * tau**3``; the cubic part carries the force-gradient terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import commutator, expm_i_hermitian
from .models import SplitHamiltonian

__all__ = [
    "SCHEME_NAMES",
    "OMELYAN_ALPHA",
    "SEVEN_STAGE_BETA",
    "StageCoeff",
    "Stage",
    "Scheme",
    "make_scheme",
    "validate_scheme",
    "force_gradient_reference",
    "stage_exponential",
    "step_operator",
    "apply_scheme",
    "count_exponentials",
]

SCHEME_NAMES = ("TD", "STD", "OD", "7TD", "FGD")
OMELYAN_ALPHA = 0.1931833275037836
SEVEN_STAGE_BETA = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0))
COMMUTE_TOL = 1e-10


@dataclass(frozen=True)
class StageCoeff:
    """Coefficient ``c1 * tau + c3 * tau**3`` of one operator inside a stage."""

    c1: float
    c3: float = 0.0

    def __post_init__(self):
        if self.c1 == 0 and self.c3 == 0:
            raise ValueError("stage coefficient is identically zero")

    def __call__(self, tau: float) -> float:
        return self.c1 * tau + self.c3 * tau**3


@dataclass(frozen=True)
class Stage:
    """One exponential factor ``exp(i * sum coeff(tau) * Op)``.

    ``single_exponential`` marks stages meant to be one hardware exponential;
    their operators must commute pairwise.
    """

    operands: tuple[tuple[str, StageCoeff], ...]
    single_exponential: bool = True

    @classmethod
    def of(cls, *operands, single_exponential: bool = True) -> "Stage":
        """``Stage.of(("S", 1/6), ("T", 1/2, lam**2 / 18))``."""
        return cls(
            tuple((key, StageCoeff(*c)) for key, *c in operands),
            single_exponential=single_exponential,
        )

    @property
    def keys(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.operands)

    def first_order(self, key: str) -> float:
        return sum(c.c1 for k, c in self.operands if k == key)

    def __str__(self):
        parts = []
        for k, c in self.operands:
            terms = []
            if c.c1:
                terms.append(f"{c.c1:.6g}*tau")
            if c.c3:
                terms.append(f"{c.c3:.6g}*tau^3")
            parts.append(f"{k}*({' + '.join(terms)})")
        return "[" + " + ".join(parts) + "]"


@dataclass(frozen=True)
class Scheme:
    name: str
    stages: tuple[Stage, ...]
    mergeable: bool

    def __post_init__(self):
        if not self.stages:
            raise ValueError("a scheme needs at least one stage")
        for key in ("S", "T"):
            total = sum(st.first_order(key) for st in self.stages)
            if abs(total - 1.0) > 1e-12:
                raise ValueError(f"{self.name}: first-order weights of {key} sum to {total}, not 1")
        if self.mergeable and self.stages[0] != self.stages[-1]:
            raise ValueError(f"{self.name}: mergeable scheme must start and end with the same stage")

    @property
    def n_stages(self) -> int:
        return len(self.stages)

    def __str__(self):
        return f"{self.name}: " + " ".join(str(s) for s in self.stages)


def _palindrome(*stages: Stage) -> tuple[Stage, ...]:
    return stages + stages[-2::-1]


def _fgd_stages(model: SplitHamiltonian) -> tuple[Stage, ...]:
    if "Y" in model.aux:
        # middle exponential exp(2i tau S/3 - i tau^3 lam^2 (Y - T)/9) split STD-style,
        # its T part merged into the neighbouring T stages
        lam2 = model.coupling**2
        return _palindrome(
            Stage.of(("S", 1 / 6)),
            Stage.of(("T", 1 / 2, lam2 / 18)),
            Stage.of(("S", 1 / 3)),
            Stage.of(("Y", 0.0, -lam2 / 9)),
        )
    if "A" in model.aux and "B" in model.aux:
        # A commutes with T and is split over the two T stages; B sits in the middle
        return _palindrome(
            Stage.of(("S", 1 / 6)),
            Stage.of(("T", 1 / 2), ("A", 0.0, 1 / 144)),
            Stage.of(("S", 1 / 3)),
            Stage.of(("B", 0.0, 1 / 72)),
        )
    raise ValueError(
        f"FGD needs auxiliary operators Y or (A, B); model {model.kind} has {sorted(model.aux)}"
    )


def validate_scheme(scheme: Scheme, model: SplitHamiltonian) -> None:
    """Check that every stage key exists in ``model`` and that operators sharing
    a single-exponential stage commute to ``COMMUTE_TOL``."""
    for stage in scheme.stages:
        for key in stage.keys:
            if not model.has_operator(key):
                raise ValueError(f"{scheme.name}: model {model.kind} has no operator {key!r}")
        if not stage.single_exponential:
            continue
        keys = stage.keys
        for i in range(len(keys)):
            for j in range(i + 1, len(keys)):
                dev = np.max(np.abs(commutator(model.dense(keys[i]), model.dense(keys[j]))))
                if dev > COMMUTE_TOL:
                    raise ValueError(
                        f"{scheme.name}: operators {keys[i]} and {keys[j]} in one stage "
                        f"do not commute (max |[.,.]| = {dev:.3e})"
                    )


def make_scheme(name: str, model: SplitHamiltonian) -> Scheme:
    """Schedule for ``TD``, ``STD``, ``OD``, ``7TD`` or ``FGD`` (case-insensitive).

    FGD is instantiated per model family, using the model's auxiliary
    operators for the force-gradient term ``tau^3 [S,[S,T]] / 72``.
    """
    key = name.upper()
    a, b = OMELYAN_ALPHA, SEVEN_STAGE_BETA
    if key == "TD":
        scheme = Scheme("TD", (Stage.of(("S", 1.0)), Stage.of(("T", 1.0))), mergeable=False)
    elif key == "STD":
        scheme = Scheme("STD", _palindrome(Stage.of(("S", 0.5)), Stage.of(("T", 1.0))), True)
    elif key == "OD":
        scheme = Scheme(
            "OD",
            _palindrome(Stage.of(("S", a)), Stage.of(("T", 0.5)), Stage.of(("S", 1 - 2 * a))),
            True,
        )
    elif key == "7TD":
        scheme = Scheme(
            "7TD",
            _palindrome(
                Stage.of(("S", b / 2)),
                Stage.of(("T", b)),
                Stage.of(("S", (1 - b) / 2)),
                Stage.of(("T", 1 - 2 * b)),
            ),
            True,
        )
    elif key == "FGD":
        scheme = Scheme("FGD", _fgd_stages(model), True)
    else:
        raise ValueError(f"unknown scheme {name!r}; choose from {', '.join(SCHEME_NAMES)}")
    validate_scheme(scheme, model)
    return scheme


def force_gradient_reference(model: SplitHamiltonian) -> Scheme:
    """Force-gradient step with the middle exponential kept whole.

    ``exp(i tau S/6) exp(i tau T/2) exp(i(2 tau S/3 + tau^3 [S,[S,T]]/72))
    exp(i tau T/2) exp(i tau S/6)``, with ``[S,[S,T]]`` taken densely (key
    ``SST``).  Its local defect is the one described by
    :func:`forcegrad.bench.fourth_order_operator`; the per-model FGD schedules
    add a further splitting of the middle stage.
    """
    scheme = Scheme(
        "FGD",
        _palindrome(
            Stage.of(("S", 1 / 6)),
            Stage.of(("T", 1 / 2)),
            Stage.of(("S", 2 / 3), ("SST", 0.0, 1 / 72), single_exponential=False),
        ),
        True,
    )
    validate_scheme(scheme, model)
    return scheme


def stage_exponential(stage: Stage, model: SplitHamiltonian, tau: float) -> np.ndarray:
    if len(stage.operands) == 1:
        key, coeff = stage.operands[0]
        return model.spectrum(key).expi(coeff(tau))
    h = sum(coeff(tau) * model.dense(key) for key, coeff in stage.operands)
    return expm_i_hermitian(h, 1.0)


def step_operator(scheme: Scheme, model: SplitHamiltonian, tau: float) -> np.ndarray:
    """One step: stage exponentials multiplied left to right as written."""
    u = stage_exponential(scheme.stages[0], model, tau)
    for stage in scheme.stages[1:]:
        u = u @ stage_exponential(stage, model, tau)
    return u


def apply_scheme(scheme: Scheme, model: SplitHamiltonian, t: float, m: int) -> np.ndarray:
    """Decomposed evolution ``M = step(t/m)**m``."""
    if int(m) != m or m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t}")
    return np.linalg.matrix_power(step_operator(scheme, model, t / m), int(m))


def count_exponentials(scheme: Scheme, m: int) -> int:
    """Exponentials needed for ``m`` steps.

    Mergeable schemes share their boundary stage between consecutive steps,
    giving ``(l - 1) m + 1``; otherwise ``l m``.
    """
    if int(m) != m or m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    m = int(m)
    if scheme.mergeable:
        return (scheme.n_stages - 1) * m + 1
    return scheme.n_stages * m
