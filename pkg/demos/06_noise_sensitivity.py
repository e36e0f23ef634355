"""How environmental noise moves the optimal policy.

Scaling one species' noise intensity lowers its effective growth rate by
half the mean squared intensity, so the best achievable yield can only
decrease. The sweep shows where the extra variance is absorbed: mostly in
the effort applied to the noisier species.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from lvharvest.harvest import noise_sensitivity

from demo_params import baseline

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "output")

params = baseline()
scales = np.linspace(0.0, 12.0, 49)

fig, (top, bottom) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)

for species, style in ((1, "-"), (2, "--")):
    rows = noise_sensitivity(params, species, scales)
    y = [row.y_star for row in rows]
    h1 = [row.h_star[0] for row in rows]
    h2 = [row.h_star[1] for row in rows]
    top.plot(scales, y, style, label=f"scaling alpha{species}")
    bottom.plot(scales, h1, style, color="tab:blue", label=f"h1* (alpha{species} scaled)")
    bottom.plot(scales, h2, style, color="tab:red", label=f"h2* (alpha{species} scaled)")
    last_valid = max(i for i, row in enumerate(rows) if row.valid)
    print(
        f"species {species}: yield falls from {y[0]:.4f} at scale 0 "
        f"to {y[-1]:.4f} at scale {scales[-1]:g}; "
        f"policy stays persistence-valid up to scale {scales[last_valid]:g}"
    )

top.set_ylabel("best yield Y*")
top.legend(loc="lower left")
bottom.set_ylabel("optimal efforts")
bottom.set_xlabel("noise scale (base intensity 0.1 + 0.01 cos)")
bottom.legend(loc="lower left", fontsize=8)

fig.tight_layout()
os.makedirs(OUT, exist_ok=True)
fig.savefig(os.path.join(OUT, "06_noise_sensitivity.png"), dpi=120)
