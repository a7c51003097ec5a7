"""Self-checks run by ``forcegrad verify``.

Each check returns a list of :class:`CheckResult`; a check passes when its
measured value lies within its bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bench import fit_order
from .linalg import unitarity_defect
from .models import MODEL_ALIASES, build_model, verify_commutator_identity
from .schemes import SCHEME_NAMES, apply_scheme, make_scheme, step_operator

# couplings of the three n_min tables, keyed by CLI model name
TABLE_COUPLINGS = {
    "tim1d": (0.5, 1.0, 1.5),
    "tim2d": (1.5, 3.0, 5.0),
    "gauge": (0.1, 0.3, 1.0),
}

# expected global order and allowed deviation of the fitted log-log slope
ORDER_BANDS = {"TD": (1.0, 0.15), "STD": (2.0, 0.15), "OD": (2.0, 0.15), "7TD": (4.0, 0.3), "FGD": (4.0, 0.3)}
ORDER_M_VALUES = tuple(int(m) for m in np.unique(np.geomspace(1, 2**15, 64).astype(int)))

UNITARITY_TOL = 1e-11
REVERSIBILITY_TOL = 1e-11

CHECKS = ("identities", "unitarity", "consistency", "reversibility", "orders")


@dataclass(frozen=True)
class CheckResult:
    check: str
    label: str
    value: float
    bound: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.check:<13} {self.label:<32} {self.value:.3e} (bound {self.bound:.3e})"


def _models():
    for name, couplings in TABLE_COUPLINGS.items():
        for c in couplings:
            yield name, build_model(name, c)


def check_identities(extra_couplings=(0.25, 2.0, 4.5)) -> list[CheckResult]:
    out = []
    for name in MODEL_ALIASES:
        for c in sorted(set(TABLE_COUPLINGS[name]) | set(extra_couplings)):
            rep = verify_commutator_identity(build_model(name, c))
            out.append(CheckResult("identities", f"{name} coupling={c:g}", rep.deviation, rep.tolerance, rep.passed))
    return out


def check_unitarity(t: float = 1.0, m_values=(1, 3, 10)) -> list[CheckResult]:
    out = []
    for name, model in _models():
        for s in SCHEME_NAMES:
            scheme = make_scheme(s, model)
            dev = max(unitarity_defect(apply_scheme(scheme, model, t, m)) for m in m_values)
            out.append(
                CheckResult("unitarity", f"{name} {model.coupling:g} {s}", dev, UNITARITY_TOL, dev < UNITARITY_TOL)
            )
    return out


def check_consistency() -> list[CheckResult]:
    """First-order weights of S and T per step sum to one."""
    out = []
    for name, model in _models():
        for s in SCHEME_NAMES:
            scheme = make_scheme(s, model)
            dev = max(abs(sum(st.first_order(k) for st in scheme.stages) - 1.0) for k in ("S", "T"))
            out.append(CheckResult("consistency", f"{name} {model.coupling:g} {s}", dev, 1e-12, dev < 1e-12))
    return out


def check_reversibility(tau: float = 0.13) -> list[CheckResult]:
    out = []
    for name, model in _models():
        for s in SCHEME_NAMES:
            scheme = make_scheme(s, model)
            if not scheme.mergeable:
                continue
            prod = step_operator(scheme, model, tau) @ step_operator(scheme, model, -tau)
            dev = float(np.max(np.abs(prod - np.eye(model.dim))))
            out.append(
                CheckResult("reversibility", f"{name} {model.coupling:g} {s}", dev, REVERSIBILITY_TOL, dev < REVERSIBILITY_TOL)
            )
    return out


def check_orders(model_name: str = "tim1d", coupling: float = 1.5, t: float = 1.0) -> list[CheckResult]:
    model = build_model(model_name, coupling)
    out = []
    for s, (order, band) in ORDER_BANDS.items():
        fit = fit_order(model, make_scheme(s, model), t, ORDER_M_VALUES)
        dev = abs(fit.slope - order)
        out.append(
            CheckResult("orders", f"{model_name} {coupling:g} {s} slope={fit.slope:.3f}", dev, band, dev <= band)
        )
    return out


def run_checks(names=CHECKS) -> list[CheckResult]:
    table = {
        "identities": check_identities,
        "unitarity": check_unitarity,
        "consistency": check_consistency,
        "reversibility": check_reversibility,
        "orders": check_orders,
    }
    out = []
    for name in names:
        out.extend(table[name]())
    return out
