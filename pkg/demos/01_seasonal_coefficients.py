"""Plot the seasonal model coefficients and their period averages.

The baseline system uses growth rates 6.5 + 0.1 sin(2 pi t) and
6.6 + 0.1 sin(2 pi t) with noise intensities 0.1 + 0.01 cos(2 pi t).
Everything downstream (classification, optimal efforts) depends on the
coefficients only through a handful of period integrals, so this script
also prints those.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from lvharvest import Harmonic, PeriodicFn
from lvharvest.periodic import mean_square_over_period

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "output")

r1 = PeriodicFn(6.5, (Harmonic(0.1, 1),))
r2 = PeriodicFn(6.6, (Harmonic(0.1, 1),))
a1 = PeriodicFn(0.1, (Harmonic(0.01, 1, kind="cos"),))
a2 = PeriodicFn(0.7, (Harmonic(0.01, 1, kind="cos"),))

# a tabulated version of r1, as one would enter measured monthly values
months = np.arange(12) / 12.0
r1_tab = PeriodicFn.from_table(months, r1(months))

t = np.linspace(0.0, 2.0, 801)

fig, (top, bottom) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
top.plot(t, r1(t), label="r1(t)")
top.plot(t, r2(t), label="r2(t)")
top.plot(t, r1_tab(t), "--", label="r1 from a 12-point table")
top.axhline(r1.mean_over_period(), color="gray", lw=0.8)
top.set_ylabel("growth rate")
top.legend(loc="upper right")

bottom.plot(t, a1(t), label="alpha1(t), low noise")
bottom.plot(t, a2(t), label="alpha1(t), medium noise")
bottom.set_ylabel("noise intensity")
bottom.set_xlabel("t (periods)")
bottom.legend(loc="center right")

fig.tight_layout()
os.makedirs(OUT, exist_ok=True)
fig.savefig(os.path.join(OUT, "01_coefficients.png"), dpi=120)

print("period means:   r1 =", r1.mean_over_period(), " r2 =", r2.mean_over_period())
print("mean alpha^2:   low =", mean_square_over_period(a1), " medium =", mean_square_over_period(a2))
print("sup over period: r1 =", r1.sup_over_period(), " r2 =", r2.sup_over_period())
print("table vs exact mean of r1:", r1_tab.mean_over_period(), "vs", r1.mean_over_period())
