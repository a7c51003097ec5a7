"""Error of each product formula as a function of the exponential count n.

Writes one CSV per model to ``demos/out/`` and, when matplotlib is available,
a log-log plot next to it.

Run with ``python3 demos/02_error_decay.py``.
"""

# %%
import csv
from pathlib import Path

from forcegrad import SCHEME_NAMES, build_model, make_scheme, sweep_error

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)
CONFIGS = [("tim1d", 1.5), ("tim2d", 5.0), ("gauge", 1.0)]
N_MAX = 600

# %%
# For each scheme, sweep m so the curves cover the same range of n.  Mergeable
# schemes spend (stages - 1) exponentials per step, TD spends 2.
curves = {}
for kind, coupling in CONFIGS:
    model = build_model(kind, coupling)
    for name in SCHEME_NAMES:
        scheme = make_scheme(name, model)
        per_step = scheme.n_stages - 1 if scheme.mergeable else scheme.n_stages
        curves[kind, name] = sweep_error(model, scheme, 1.0, range(1, N_MAX // per_step + 1))

    path = OUT / f"error_{kind}.csv"
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["scheme", "m", "n", "epsilon"])
        for name in SCHEME_NAMES:
            for p in curves[kind, name]:
                w.writerow([name, p.m, p.n, f"{p.epsilon:.12e}"])
    print("wrote", path)

# %%
# A quick text view: the error each scheme reaches near n = 100.
for kind, _ in CONFIGS:
    row = []
    for name in SCHEME_NAMES:
        p = min(curves[kind, name], key=lambda q: abs(q.n - 100))
        row.append(f"{name}={p.epsilon:.1e}@{p.n}")
    print(kind, " ".join(row))

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, 3, figsize=(13, 4), sharey=True)
    for ax, (kind, coupling) in zip(axes, CONFIGS):
        for name in SCHEME_NAMES:
            pts = curves[kind, name]
            ax.loglog([p.n for p in pts], [p.epsilon for p in pts], label=name)
        ax.axhline(1e-3, color="grey", lw=0.8, ls="--")
        ax.set_title(f"{kind}, coupling {coupling:g}, t = 1")
        ax.set_xlabel("exponentials n")
    axes[0].set_ylabel("epsilon")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(OUT / "error_decay.png", dpi=120)
    print("wrote", OUT / "error_decay.png")
