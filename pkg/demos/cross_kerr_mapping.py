"""From hardware cross-Kerr phases to clock-model couplings and back.

A pair of coupled qutrits accumulates diagonal phases theta_mn on the
states |mn>, m, n in {1, 2}.  The same diagonal unitary is generated by
one bond of the chiral clock model plus single-site fields; the mapping
is a 9-point discrete Fourier transform of the phase table.  This script

  1. maps a phase table to (J, theta, J', theta', h_i, phi_i),
  2. rebuilds the two-site diagonal from those couplings and checks it
     reproduces the phase table exactly,
  3. inverts the map back to the angles, and
  4. shows what happens for a coupling set that no cross-Kerr pair can
     realize.

No figure; all output is printed.
"""

import numpy as np

import chiralclock as cc

# ── Forward map ────────────────────────────────────────────────────────

angles = cc.CrossKerrAngles(
    theta_11=0.70, theta_12=-0.40, theta_21=0.25, theta_22=0.10
)
bond, field1, field2, h_identity = cc.map_cross_kerr(angles)

print("cross-Kerr phases:", angles.to_dict())
print(f"  J        = {bond.J:.6f}   theta  = {bond.theta:+.6f}")
print(f"  J'       = {bond.J_prime:.6f}   theta' = {bond.theta_prime:+.6f}")
print(f"  h(left)  = {field1.h:.6f}   phi    = {field1.phi:+.6f}")
print(f"  h(right) = {field2.h:.6f}   phi    = {field2.phi:+.6f}")
print(f"  identity offset = {h_identity:+.6f}")

# ── The rebuilt two-site diagonal matches the phase table ──────────────

c = cc.cross_kerr_coefficients(angles)
theta_grid = cc.two_site_diagonal(c)
want = np.zeros((3, 3))
want[1, 1], want[1, 2] = angles.theta_11, angles.theta_12
want[2, 1], want[2, 2] = angles.theta_21, angles.theta_22
print(
    "rebuild residual on the {1,2}x{1,2} block:",
    f"{np.max(np.abs(theta_grid - want)):.2e}",
)

# ── Inverse map ────────────────────────────────────────────────────────

recovered = cc.unmap_to_cross_kerr(bond, field1, field2, h_identity)
worst = max(
    abs(recovered.to_dict()[k] - v) for k, v in angles.to_dict().items()
)
print(f"round-trip error on the angles: {worst:.2e}")

# ── An unrealizable coupling set ───────────────────────────────────────

# A bare chiral bond with no fields and no identity offset cannot come
# from any cross-Kerr phase table.
try:
    cc.unmap_to_cross_kerr(
        cc.BondCoupling(J=0.2, theta=0.3), cc.SiteField(h=0.0),
        cc.SiteField(h=0.0), 0.0,
    )
except cc.CrossKerrMappingError as exc:
    print(f"bare chiral bond rejected as expected: {exc}")
