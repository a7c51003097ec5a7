"""Smallest exponential count reaching epsilon < 0.1% at t = 1, per model and scheme.

The 2x3 Ising lattice takes about ten seconds because TD needs m > 2000 on
64 x 64 matrices.  Run with ``python3 demos/03_nmin_tables.py``.
"""

# %%
from forcegrad import SCHEME_NAMES, nmin_grid

COUPLINGS = {"tim1d": (0.5, 1.0, 1.5), "tim2d": (1.5, 3.0, 5.0), "gauge": (0.1, 0.3, 1.0)}

# %%
# Each cell scans m = 1, 2, ... and stops at the first epsilon below 1e-3.
# Cells are independent, so they run on a small thread pool.
for kind, couplings in COUPLINGS.items():
    results = nmin_grid(kind, couplings, SCHEME_NAMES, workers=4)
    print(f"\n{kind}   cells: n_min / epsilon(%)")
    print(f"{'coupling':>8}  " + "  ".join(f"{s:>13}" for s in SCHEME_NAMES))
    for c in couplings:
        row = [r for r in results if r.coupling == c]
        cells = [f"{r.n_min} / {100 * r.epsilon_at_min:#.2g}" for r in row]
        print(f"{c:>8g}  " + "  ".join(f"{x:>13}" for x in cells))

# %%
# The same table from the command line:
#   forcegrad nmin --model tim1d --coupling 0.5 1 1.5 --all-schemes
