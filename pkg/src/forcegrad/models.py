"""The three benchmark Hamiltonians, split as ``H = S + T``.

Site and link labels in comments are 1-based; qubit ``i`` in code is label ``i+1``.

* ``tim_chain_3``: transverse Ising ring of 3 sites.  S is the transverse field
  ``lam * sum X``, T the ``ZZ`` bonds.  Auxiliary ``Y`` is the same bond set
  with ``YY``, so that ``[S,[S,T]] = -8 lam^2 (Y - T)``.
* ``tim_2x3``: transverse Ising model on a 2x3 torus.  The three vertical bonds
  are doubly connected (periodic direction of length 2) and carry weight 2, in
  T and in Y alike.
* ``gauge_stripe_2``: Z2 gauge stripe of two plaquettes, links 1..6.  S is the
  sum of the two plaquette ``ZZZZ`` products, T the link field ``k * sum X``.
  ``[S,[S,T]] = A + B`` with A a weighted link field and B a ``ZZZZ`` string
  times ``X3 + X4``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .linalg import Spectrum, eigh
from .pauli import OperatorSum, nested_commutator_dense, to_dense

__all__ = [
    "MODEL_KINDS",
    "MODEL_ALIASES",
    "ModelSpec",
    "SplitHamiltonian",
    "IdentityReport",
    "build_tim_chain",
    "build_tim_2x3",
    "build_gauge_stripe",
    "build_model",
    "gauge_aux_prefactors",
    "verify_commutator_identity",
]

IDENTITY_TOL = 1e-10

MODEL_KINDS = ("tim_chain_3", "tim_2x3", "gauge_stripe_2")
MODEL_ALIASES = {"tim1d": "tim_chain_3", "tim2d": "tim_2x3", "gauge": "gauge_stripe_2"}
_QUBITS = {"tim_chain_3": 3, "tim_2x3": 6, "gauge_stripe_2": 6}

RING_3 = ((0, 1), (1, 2), (2, 0))
TORUS_2X3_ROWS = ((0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3))
TORUS_2X3_COLUMNS = ((0, 3), (1, 4), (2, 5))
PLAQUETTES = ((0, 3, 4, 2), (1, 2, 5, 3))


def canonical_kind(kind: str) -> str:
    kind = MODEL_ALIASES.get(kind, kind)
    if kind not in MODEL_KINDS:
        raise ValueError(
            f"unknown model {kind!r}; choose from {sorted(MODEL_ALIASES) + list(MODEL_KINDS)}"
        )
    return kind


def _check_coupling(coupling: float) -> float:
    coupling = float(coupling)
    if not (math.isfinite(coupling) and coupling > 0):
        raise ValueError(f"coupling must be a positive finite number, got {coupling}")
    return coupling


@dataclass(frozen=True)
class ModelSpec:
    kind: str
    coupling: float

    def __post_init__(self):
        object.__setattr__(self, "kind", canonical_kind(self.kind))
        object.__setattr__(self, "coupling", _check_coupling(self.coupling))

    @property
    def qubits(self) -> int:
        return _QUBITS[self.kind]

    def build(self) -> "SplitHamiltonian":
        return _BUILDERS[self.kind](self.coupling)


@dataclass(frozen=True, eq=False)
class SplitHamiltonian:
    """A model Hamiltonian ``H = S + T`` with its auxiliary operators.

    Dense matrices and spectra are computed lazily and memoized per instance;
    the memo is never shared between instances.
    """

    kind: str
    coupling: float
    qubits: int
    s_part: OperatorSum
    t_part: OperatorSum
    aux: Mapping[str, OperatorSum]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "aux", MappingProxyType(dict(self.aux)))

    @property
    def dim(self) -> int:
        return 2**self.qubits

    @property
    def hamiltonian(self) -> OperatorSum:
        return self.s_part + self.t_part

    def operator_sum(self, key: str) -> OperatorSum:
        if key == "S":
            return self.s_part
        if key == "T":
            return self.t_part
        if key == "H":
            return self.hamiltonian
        try:
            return self.aux[key]
        except KeyError:
            raise KeyError(f"model {self.kind} has no operator {key!r}") from None

    def dense(self, key: str) -> np.ndarray:
        """Dense matrix for ``S``, ``T``, ``H``, ``SST`` (= [S,[S,T]]) or an aux key."""
        if key not in self._cache:
            if key == "SST":
                mat = nested_commutator_dense([self.s_part, self.s_part, self.t_part])
            else:
                mat = to_dense(self.operator_sum(key))
            mat.setflags(write=False)
            self._cache[key] = mat
        return self._cache[key]

    def spectrum(self, key: str) -> Spectrum:
        ck = ("spectrum", key)
        if ck not in self._cache:
            self._cache[ck] = eigh(self.dense(key))
        return self._cache[ck]

    def has_operator(self, key: str) -> bool:
        return key in ("S", "T", "H", "SST") or key in self.aux

    def closed_form_double_commutator(self) -> OperatorSum:
        """The model's closed form for ``[S,[S,T]]``."""
        if self.kind == "gauge_stripe_2":
            return self.aux["A"] + self.aux["B"]
        return -8 * self.coupling**2 * (self.aux["Y"] - self.t_part)


def _field(qubits: int, letter: str, weights: Mapping[int, float]) -> OperatorSum:
    return sum(OperatorSum.term(qubits, {q: letter}, w) for q, w in weights.items())


def _bonds(qubits: int, letter: str, bonds, weight: float = 1.0) -> OperatorSum:
    return sum(OperatorSum.term(qubits, {i: letter, j: letter}, weight) for i, j in bonds)


def build_tim_chain(coupling: float) -> SplitHamiltonian:
    """Transverse Ising ring of 3 sites with periodic boundary."""
    lam = _check_coupling(coupling)
    q = 3
    return SplitHamiltonian(
        kind="tim_chain_3",
        coupling=lam,
        qubits=q,
        s_part=_field(q, "X", {i: lam for i in range(q)}),
        t_part=_bonds(q, "Z", RING_3),
        aux={"Y": _bonds(q, "Y", RING_3)},
    )


def build_tim_2x3(coupling: float) -> SplitHamiltonian:
    """Transverse Ising model on the periodic 2x3 lattice.

    Sites 1-2-3 and 4-5-6 form two rings; columns (1,4), (2,5), (3,6) are
    doubly connected and so enter with weight 2.
    """
    lam = _check_coupling(coupling)
    q = 6
    t_part = _bonds(q, "Z", TORUS_2X3_ROWS) + _bonds(q, "Z", TORUS_2X3_COLUMNS, 2.0)
    # Y needs the same bond weights as T for [S,[S,T]] = -8 lam^2 (Y - T)
    y_part = _bonds(q, "Y", TORUS_2X3_ROWS) + _bonds(q, "Y", TORUS_2X3_COLUMNS, 2.0)
    return SplitHamiltonian(
        kind="tim_2x3",
        coupling=lam,
        qubits=q,
        s_part=_field(q, "X", {i: lam for i in range(q)}),
        t_part=t_part,
        aux={"Y": y_part},
    )


def _plaquette(q: int, links) -> OperatorSum:
    return OperatorSum.term(q, {i: "Z" for i in links})


def _gauge_structures(q: int = 6) -> tuple[OperatorSum, OperatorSum]:
    """Unit-prefactor shapes of A and B (per unit coupling)."""
    a_shape = _field(q, "X", {0: 1, 1: 1, 4: 1, 5: 1, 2: 2, 3: 2})
    zstring = {0: "Z", 1: "Z", 4: "Z", 5: "Z"}
    b_shape = OperatorSum.term(q, {**zstring, 2: "X"}) + OperatorSum.term(q, {**zstring, 3: "X"})
    return a_shape, b_shape


def _gauge_s(q: int = 6) -> OperatorSum:
    return _plaquette(q, PLAQUETTES[0]) + _plaquette(q, PLAQUETTES[1])


@lru_cache(maxsize=1)
def gauge_aux_prefactors(
    fit_couplings: tuple[float, float] = (0.37, 1.9), check_coupling: float = 2.71
) -> tuple[float, float]:
    """Prefactors ``(a, b)`` with ``[S,[S,T]] = k (a * A_shape + b * B_shape)``.

    Fitted by least squares on the dense double commutator at two couplings and
    checked at a third.  Raises ``RuntimeError`` if the shapes cannot reproduce
    the commutator exactly.
    """
    a_shape, b_shape = _gauge_structures()
    s = _gauge_s()
    da, db = to_dense(a_shape), to_dense(b_shape)
    rows, rhs = [], []
    for k in fit_couplings:
        t = k * _field(6, "X", {i: 1.0 for i in range(6)})
        target = nested_commutator_dense([s, s, t])
        rows.append(np.column_stack([(k * da).ravel(), (k * db).ravel()]))
        rhs.append(target.ravel())
    coef, *_ = np.linalg.lstsq(np.vstack(rows), np.concatenate(rhs), rcond=None)
    a, b = (float(c.real) for c in coef)

    k = check_coupling
    t = k * _field(6, "X", {i: 1.0 for i in range(6)})
    resid = np.max(np.abs(nested_commutator_dense([s, s, t]) - k * (a * da + b * db)))
    if not resid < IDENTITY_TOL or max(abs(c.imag) for c in coef) > IDENTITY_TOL:
        raise RuntimeError(
            f"gauge auxiliary operators do not match [S,[S,T]]: residual {resid:.3e}"
        )
    return a, b


def build_gauge_stripe(coupling: float) -> SplitHamiltonian:
    """Z2 gauge stripe with two plaquettes, periodic along the stripe.

    Plaquettes are links (1,4,5,3) and (2,3,6,4); links 3 and 4 are shared.
    """
    k = _check_coupling(coupling)
    q = 6
    a, b = gauge_aux_prefactors()
    a_shape, b_shape = _gauge_structures(q)
    return SplitHamiltonian(
        kind="gauge_stripe_2",
        coupling=k,
        qubits=q,
        s_part=_gauge_s(q),
        t_part=_field(q, "X", {i: k for i in range(q)}),
        aux={"A": (a * k) * a_shape, "B": (b * k) * b_shape},
    )


_BUILDERS = {
    "tim_chain_3": build_tim_chain,
    "tim_2x3": build_tim_2x3,
    "gauge_stripe_2": build_gauge_stripe,
}


def build_model(kind: str, coupling: float) -> SplitHamiltonian:
    """Build a model by kind (``tim_chain_3``/``tim1d``, ``tim_2x3``/``tim2d``,
    ``gauge_stripe_2``/``gauge``)."""
    return ModelSpec(kind, coupling).build()


@dataclass(frozen=True)
class IdentityReport:
    kind: str
    coupling: float
    deviation: float
    tolerance: float = IDENTITY_TOL

    @property
    def passed(self) -> bool:
        return self.deviation < self.tolerance


def verify_commutator_identity(model: SplitHamiltonian) -> IdentityReport:
    """Max-abs deviation between dense ``[S,[S,T]]`` and the model's closed form."""
    sst = nested_commutator_dense([model.s_part, model.s_part, model.t_part])
    closed = to_dense(model.closed_form_double_commutator())
    return IdentityReport(model.kind, model.coupling, float(np.max(np.abs(sst - closed))))
