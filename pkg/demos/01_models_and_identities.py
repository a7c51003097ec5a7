"""Build the three benchmark Hamiltonians and check the closed forms of [S,[S,T]].

Run with ``python3 demos/01_models_and_identities.py``.
"""

# %%
# Every model is a split H = S + T held as Pauli sums.  Qubit 0 is the most
# significant bit of the basis index, so Z on qubit 0 reads diag(1, 1, -1, -1)
# on two qubits.
import numpy as np

from forcegrad import build_model, verify_commutator_identity
from forcegrad.pauli import nested_commutator_dense

for kind, coupling in [("tim1d", 1.5), ("tim2d", 5.0), ("gauge", 1.0)]:
    model = build_model(kind, coupling)
    print(f"{kind}: {model.qubits} qubits, dim {model.dim}")
    print(f"  S = {model.s_part!r}")
    print(f"  T = {model.t_part!r}")
    for key, op in model.aux.items():
        print(f"  {key} = {op!r}")

# %%
# The force-gradient term needs [S,[S,T]].  For the Ising models it equals
# -8 lambda^2 (Y - T); for the gauge stripe it is A + B.  Both sides are
# compared as dense matrices.
for kind in ("tim1d", "tim2d", "gauge"):
    for coupling in (0.3, 1.0, 4.2):
        rep = verify_commutator_identity(build_model(kind, coupling))
        print(f"{kind:6} coupling={coupling:<4} deviation={rep.deviation:.2e} passed={rep.passed}")

# %%
# The same double commutator computed symbolically on Pauli strings.
model = build_model("tim1d", 1.0)
symbolic = model.s_part.commutator(model.s_part.commutator(model.t_part))
dense = nested_commutator_dense([model.s_part, model.s_part, model.t_part])
print("symbolic [S,[S,T]] =", symbolic)
print("max |symbolic - dense| =", np.max(np.abs(model.dense("SST") - dense)))
