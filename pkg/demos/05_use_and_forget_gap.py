"""How tight is the use-and-forget approximation?

With nulls toward every interferer, the interference reaching the served user
has no line of sight part left: it is the single scattered coefficient h_0
times a fixed gain, so its power is exponentially distributed whatever K is.
Jensen's inequality then puts E[log2(1 + SINR)] above log2(1 + E[S]/E[I])
by about gamma_E / ln 2 = 0.83 bit once the SINR is large.

Run:  python3 demos/05_use_and_forget_gap.py
"""

from dataclasses import replace

import numpy as np

from a2gbeam.sim import Scenario, run_point

print(f"gamma_E / ln 2 = {np.euler_gamma / np.log(2):.3f} bit")
s = Scenario(trials=30, monte_carlo=True, channel_draws=400)
for d in (0.0, 1000.0, 2500.0, 5000.0):
    for k_db in (10.0, 30.0):
        r = run_point(replace(s, mci_distance=d, k_db=k_db))
        gap = r.se_mc - r.se_approx
        print(f"d = {d / 1e3:3.1f} km  K = {k_db:2.0f} dB  approx {r.se_approx:6.2f}  "
              f"MC {r.se_mc:6.2f}  gap {gap:.3f} bit ({gap / r.se_mc:5.1%})")

# The gap in bits hardly moves; its relative size is what changes, and it
# passes 5% wherever the SE drops below about 17 bps/Hz.
