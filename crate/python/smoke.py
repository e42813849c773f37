"""Smoke test for the jchm extension module.

Usage: python3 python/smoke.py  (with jchm.so importable, see README)
"""
import math

import jchm


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


p = jchm.SystemParams.from_detuning(0.0)
assert p.g == 1.0 and p.delta == 0.0

lvl = jchm.dressed_level(1, "lower", p)
close(lvl.energy, -1.0, 1e-14)
close(lvl.sin_half_theta ** 2 + lvl.cos_half_theta ** 2, 1.0, 1e-14)

# atomic limit: mu+ = -(sqrt2 - 1), mu- = -1
close(jchm.mu_particle(0.0), 1.0 - math.sqrt(2.0), 1e-14)
close(jchm.mu_hole(0.0), -1.0, 1e-14)

cp = jchm.critical_hopping()
close(cp.jc_over_g, 0.193052136216196, 1e-12)

lam = jchm.build_table("particle", 3)
close(lam[3], 7.0 + 3.0 * math.sqrt(3.0), 1e-12)
assert jchm.cancellation_residual("hole") < 1e-14

w = jchm.window_identity_check("hole", 64, 1 + 0j, 1j)
assert w["relative_residual"] < 1e-10

jcs = jchm.jc_vs_detuning([-2.0, 10.0])
close(jcs[0], 3.030831611580758e-2, 1e-12)
assert jcs[1] is None

try:
    jchm.critical_hopping(j_lo=0.3, j_hi=0.4)
except jchm.NoCrossingError:
    pass
else:
    raise AssertionError("expected NoCrossingError")

ed = jchm.ed_chemical_potentials(2, 3, 0.0)
close(ed["mu_particle"], 1.0 - math.sqrt(2.0), 1e-10)
close(ed["mu_hole"], -1.0, 1e-10)

print("jchm smoke ok", jchm.__version__)
