"""Closed-form vs numeric extrema of S_R, and numeric extrema of S_T.

For each (zone, sin_theta_c) of the standard figure set the S_R maximum is
refined with a bounded scalar search and compared with mu / sqrt(1 + mu^2).
S_T has no closed form, so only the numeric maximum inside the oscillatory
window is reported.
"""
import math

import numpy as np

from diracstep import StepConfig, extremal_points, von_neumann_entropy
from diracstep.entanglement import locate_extremum, reflected_entropy, transmitted_entropy
from diracstep.figures import MU, SIN_THETA_C
from diracstep.kinematics import Side


def bracket_max(f, lo, hi, n=400):
    xs = np.linspace(lo, hi, n)
    ys = np.array([f(x) for x in xs])
    i = int(ys.argmax())
    return xs[max(i - 1, 0)], xs[min(i + 1, n - 1)]


print(f"closed form: sin(theta_0) = {MU / math.sqrt(1 + MU**2):.10f}, "
      f"S_R = {von_neumann_entropy(extremal_points(MU, StepConfig(mu=MU, nu=0.0).incident())[1][1]):.10f}")
print(f"{'zone':10s} {'sin_c':>7s} {'argmax S_R':>13s} {'max S_R':>13s} {'argmax S_T':>13s} {'max S_T':>13s}")
for side in Side:
    for tag, s in SIN_THETA_C.items():
        cfg = StepConfig(mu=MU, sin_theta_c=s, zone_side=side)
        top = s * (1 - 1e-9)
        f_r = reflected_entropy(cfg)
        x_r, v_r = locate_extremum(f_r, bracket_max(f_r, 1e-6, top), "max")
        f_t = transmitted_entropy(cfg)
        x_t, v_t = locate_extremum(f_t, bracket_max(f_t, 1e-6, top), "max")
        print(f"{side.value:10s} {s:7.4f} {x_r:13.10f} {v_r:13.10f} {x_t:13.10f} {v_t:13.10f}")
