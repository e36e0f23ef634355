"""Map the long-run regime over a grid of harvesting efforts.

For each (h1, h2) the sign table of the period-averaged growth rates and
the two decisive determinants picks one of four outcomes: coexistence,
either single-species survival, or joint extinction. The boundaries are
straight lines in effort space because every decisive quantity is affine
in (h1, h2).
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from lvharvest import ModelParams, PeriodicFn, Harmonic, classify
from lvharvest.classify import Regime

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "output")

params = ModelParams(
    r=(
        PeriodicFn(6.5, (Harmonic(0.1, 1),)),
        PeriodicFn(6.6, (Harmonic(0.1, 1),)),
    ),
    alpha=(
        PeriodicFn(0.1, (Harmonic(0.01, 1, kind="cos"),)),
        PeriodicFn(0.1, (Harmonic(0.01, 1, kind="cos"),)),
    ),
    c=((4.3, 0.4), (0.5, 3.5)),
)

CODES = {
    Regime.BOTH_EXTINCT: 0,
    Regime.X1_PERSISTS_X2_EXTINCT: 1,
    Regime.X2_PERSISTS_X1_EXTINCT: 2,
    Regime.BOTH_PERSIST: 3,
    Regime.INDETERMINATE: 4,
}

grid = np.linspace(0.0, 8.0, 161)
codes = np.empty((grid.size, grid.size), dtype=int)
for i, h1 in enumerate(grid):
    for j, h2 in enumerate(grid):
        codes[j, i] = CODES[classify(params, (h1, h2)).regime]

fig, ax = plt.subplots(figsize=(7, 6))
cmap = matplotlib.colors.ListedColormap(["#444444", "#1f77b4", "#ff7f0e", "#2ca02c"])
im = ax.pcolormesh(grid, grid, codes, cmap=cmap, vmin=0, vmax=3, shading="nearest")
ax.set_xlabel("h1")
ax.set_ylabel("h2")
ax.set_title("long-run regime by harvesting effort")
cbar = fig.colorbar(im, ticks=[0.4, 1.1, 1.9, 2.6])
cbar.ax.set_yticklabels(
    ["both extinct", "only x1 survives", "only x2 survives", "coexistence"]
)
ax.plot([3.29], [3.26], "w*", markersize=14, markeredgecolor="black")

fig.tight_layout()
os.makedirs(OUT, exist_ok=True)
fig.savefig(os.path.join(OUT, "02_regime_map.png"), dpi=120)

# a few spot reports
for h in ((0.0, 0.0), (3.29, 3.26), (6.4, 1.0), (1.0, 6.5), (10.0, 10.0)):
    rep = classify(params, h)
    print(f"h = {h}: {rep.regime}", end="")
    if rep.predicted_averages is not None:
        print(f", predicted averages {rep.predicted_averages}")
    else:
        print()
