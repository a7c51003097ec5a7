"""How well the tau^4 effective-Hamiltonian term predicts the force-gradient error.

One force-gradient step equals exp(i tau (H + tau^4 F + ...)).  Comparing
exp(i t (H + tau^4 F)) with the actual product shows how much of the error the
leading term explains.

Run with ``python3 demos/04_fourth_order_defect.py``.
"""

# %%
import numpy as np

from forcegrad import (
    apply_scheme,
    build_model,
    exact_evolution,
    force_gradient_reference,
    fourth_order_operator,
    make_scheme,
    predicted_evolution,
)

model = build_model("tim1d", 1.0)
f = fourth_order_operator(model)
print("||F||_F =", np.linalg.norm(f), " hermiticity defect =", np.max(np.abs(f - f.conj().T)))

# %%
# The reference step keeps exp(i(2 tau S/3 + tau^3 [S,[S,T]]/72)) whole.  The
# model-specific FGD schedule splits that middle factor into commuting pieces,
# which adds a second tau^4 contribution of its own.
exact = exact_evolution(model, 1.0)
print(f"{'m':>5} {'measured':>12} {'mismatch ref':>13} {'mismatch split':>15}")
for m in (8, 16, 32, 64, 128):
    predicted = predicted_evolution(model, 1.0, m) - exact
    ref = apply_scheme(force_gradient_reference(model), model, 1.0, m) - exact
    split = apply_scheme(make_scheme("FGD", model), model, 1.0, m) - exact
    print(
        f"{m:>5} {np.linalg.norm(ref):12.3e} "
        f"{np.linalg.norm(predicted - ref) / np.linalg.norm(ref):13.2%} "
        f"{np.linalg.norm(predicted - split) / np.linalg.norm(split):15.2%}"
    )
