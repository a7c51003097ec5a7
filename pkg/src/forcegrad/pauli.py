"""Pauli strings and weighted sums of them.

Qubit 0 is the leftmost letter of a string and the leftmost (most significant)
Kronecker factor of the dense matrix, so ``"ZI"`` becomes ``diag(1, 1, -1, -1)``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import reduce
from numbers import Number

import numpy as np

from .linalg import commutator

__all__ = [
    "PAULI_MATRICES",
    "PauliString",
    "OperatorSum",
    "pauli_product",
    "string_commutator",
    "to_dense",
    "nested_commutator_dense",
]

MAX_QUBITS = 10
DROP_TOL = 1e-15

PAULI_MATRICES = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

# single-qubit products: (a, b) -> (phase, c) with a*b = phase*c
_PRODUCT = {}
for _a in "IXYZ":
    _PRODUCT[("I", _a)] = (1, _a)
    _PRODUCT[(_a, "I")] = (1, _a)
    _PRODUCT[(_a, _a)] = (1, "I")
for _a, _b, _c in (("X", "Y", "Z"), ("Y", "Z", "X"), ("Z", "X", "Y")):
    _PRODUCT[(_a, _b)] = (1j, _c)
    _PRODUCT[(_b, _a)] = (-1j, _c)


@dataclass(frozen=True, order=True)
class PauliString:
    """Tensor product of single-qubit Pauli letters, e.g. ``PauliString("ZZI")``."""

    letters: str

    def __post_init__(self):
        if not self.letters:
            raise ValueError("a Pauli string needs at least one letter")
        bad = set(self.letters) - set("IXYZ")
        if bad:
            raise ValueError(f"invalid Pauli letters {sorted(bad)} in {self.letters!r}")

    @classmethod
    def from_sites(cls, qubits: int, sites: Mapping[int, str]) -> "PauliString":
        """Identity everywhere except the given ``{qubit: letter}`` positions."""
        letters = ["I"] * qubits
        for q, letter in sites.items():
            if not 0 <= q < qubits:
                raise ValueError(f"qubit {q} out of range for {qubits} qubits")
            letters[q] = letter
        return cls("".join(letters))

    @property
    def qubits(self) -> int:
        return len(self.letters)

    @property
    def weight(self) -> int:
        return sum(c != "I" for c in self.letters)

    def commutes_with(self, other: "PauliString") -> bool:
        _check_lengths(self, other)
        anti = sum(
            a != "I" and b != "I" and a != b for a, b in zip(self.letters, other.letters)
        )
        return anti % 2 == 0

    def matrix(self) -> np.ndarray:
        return reduce(np.kron, (PAULI_MATRICES[c] for c in self.letters))

    def __str__(self):
        return self.letters


def _check_lengths(a: PauliString, b: PauliString) -> None:
    if a.qubits != b.qubits:
        raise ValueError(f"length mismatch: {a.letters!r} vs {b.letters!r}")


def pauli_product(a: PauliString, b: PauliString) -> tuple[complex, PauliString]:
    """Return ``(phase, c)`` with ``a @ b == phase * c``."""
    _check_lengths(a, b)
    phase = 1 + 0j
    out = []
    for x, y in zip(a.letters, b.letters):
        p, c = _PRODUCT[(x, y)]
        phase *= p
        out.append(c)
    return phase, PauliString("".join(out))


def string_commutator(a: PauliString, b: PauliString) -> tuple[complex, PauliString] | None:
    """Commutator of two Pauli strings.

    Returns ``None`` when the strings commute, otherwise ``(coeff, c)`` with
    ``[a, b] = coeff * c`` and ``coeff`` one of ``+-2``, ``+-2i``.
    """
    if a.commutes_with(b):
        return None
    phase, c = pauli_product(a, b)
    return 2 * phase, c


class OperatorSum:
    """Complex-weighted sum of Pauli strings on a fixed number of qubits.

    Instances are immutable; arithmetic returns new, canonicalized sums
    (duplicate strings merged, terms with ``|coeff| < 1e-15`` dropped).
    """

    __slots__ = ("_terms", "_qubits")

    def __init__(self, qubits: int, terms: Iterable[tuple[Number, PauliString | str]] = ()):
        if qubits < 1:
            raise ValueError("qubits must be positive")
        merged: dict[PauliString, complex] = {}
        for coeff, s in terms:
            if isinstance(s, str):
                s = PauliString(s)
            if s.qubits != qubits:
                raise ValueError(f"string {s.letters!r} does not act on {qubits} qubits")
            merged[s] = merged.get(s, 0j) + complex(coeff)
        self._qubits = qubits
        self._terms = tuple(
            (c, s) for s, c in sorted(merged.items()) if abs(c) >= DROP_TOL
        )

    @classmethod
    def zero(cls, qubits: int) -> "OperatorSum":
        return cls(qubits)

    @classmethod
    def term(cls, qubits: int, sites: Mapping[int, str], coeff: Number = 1.0) -> "OperatorSum":
        """Single term ``coeff * (letters at sites)``."""
        return cls(qubits, [(coeff, PauliString.from_sites(qubits, sites))])

    @property
    def qubits(self) -> int:
        return self._qubits

    @property
    def terms(self) -> tuple[tuple[complex, PauliString], ...]:
        return self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def is_hermitian(self, tol: float = 1e-14) -> bool:
        return all(abs(c.imag) <= tol for c, _ in self._terms)

    def _coerce(self, other) -> "OperatorSum":
        if not isinstance(other, OperatorSum):
            return NotImplemented
        if other.qubits != self.qubits:
            raise ValueError(f"qubit mismatch: {self.qubits} vs {other.qubits}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return OperatorSum(self.qubits, self._terms + other._terms)

    def __radd__(self, other):
        # lets sum() start from 0
        if isinstance(other, Number) and other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return OperatorSum(self.qubits, [(-c, s) for c, s in self._terms])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, scalar):
        if not isinstance(scalar, Number):
            return NotImplemented
        return OperatorSum(self.qubits, [(scalar * c, s) for c, s in self._terms])

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not isinstance(scalar, Number):
            return NotImplemented
        return self * (1 / scalar)

    def __eq__(self, other):
        if not isinstance(other, OperatorSum):
            return NotImplemented
        return self.qubits == other.qubits and self._terms == other._terms

    def __hash__(self):
        return hash((self._qubits, self._terms))

    def commutator(self, other: "OperatorSum") -> "OperatorSum":
        """``[self, other]`` evaluated term by term in the Pauli algebra."""
        other = self._coerce(other)
        out = []
        for ca, sa in self._terms:
            for cb, sb in other._terms:
                r = string_commutator(sa, sb)
                if r is not None:
                    out.append((ca * cb * r[0], r[1]))
        return OperatorSum(self.qubits, out)

    def __repr__(self):
        if not self._terms:
            return f"OperatorSum({self.qubits}, 0)"
        body = " + ".join(f"({_fmt(c)})*{s}" for c, s in self._terms)
        return f"OperatorSum({self.qubits}, {body})"


def _fmt(c: complex) -> str:
    if c.imag == 0:
        return f"{c.real:g}"
    return f"{c:g}"


def to_dense(op: OperatorSum) -> np.ndarray:
    """Dense ``2**q x 2**q`` matrix of an operator sum (qubit 0 most significant)."""
    if op.qubits > MAX_QUBITS:
        raise ValueError(f"to_dense supports at most {MAX_QUBITS} qubits, got {op.qubits}")
    dim = 2**op.qubits
    out = np.zeros((dim, dim), dtype=np.complex128)
    for c, s in op.terms:
        out += c * s.matrix()
    return out


def nested_commutator_dense(ops: Sequence[OperatorSum | np.ndarray]) -> np.ndarray:
    """Right-nested commutator ``[ops[0], [ops[1], [..., [ops[-2], ops[-1]]]]]``.

    Entries may be ``OperatorSum`` or dense matrices; everything is evaluated
    densely.
    """
    if len(ops) < 2:
        raise ValueError("need at least two operators to form a commutator")
    qubits = {o.qubits for o in ops if isinstance(o, OperatorSum)}
    if len(qubits) > 1:
        raise ValueError(f"mismatched qubit counts: {sorted(qubits)}")
    mats = [to_dense(o) if isinstance(o, OperatorSum) else o for o in ops]
    acc = mats[-1]
    for m in reversed(mats[:-1]):
        acc = commutator(m, acc)
    return acc
