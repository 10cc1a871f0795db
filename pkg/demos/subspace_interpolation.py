"""Interpolating between period doubling and period tripling.

The two-level kick acts as the {|1>, |2>} swap at g = 0 and as the full
three-state shift at g = 1.  Starting the chain inside the {|1>, |2>}
subspace and scanning g, the dominant response frequency of the
subspace magnetization M12 = P(1) - P(2) walks from omega = pi (period
2) to omega = 2*pi/3 (period 3).

Writes subspace_interpolation.png next to this script.
"""

import matplotlib

matplotlib.use("Agg")

from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np

import chiralclock as cc

HERE = Path(__file__).resolve().parent

INITIAL = "121121"
CYCLES = 60
N_INSTANCES = 3

# ── Scan the kick strength ─────────────────────────────────────────────

n_sites = len(INITIAL)
spec = cc.DisorderSpec(seed=140, theta_sector_range=(0.125, 0.9))
probes = cc.ObservableSet(populations=True, magnetization=False)
g_grid = np.linspace(0.05, 0.98, 12)
half = CYCLES // 2
peak_omega = np.zeros_like(g_grid)
spectra = np.zeros((len(g_grid), half))

for k, g in enumerate(g_grid):
    kick = cc.KickSpec(g=float(g), variant="subspace")
    acc = np.zeros(CYCLES)
    for i in range(N_INSTANCES):
        params = cc.sample_disorder(spec, n_sites, i)
        rec = cc.run_trajectory(
            params, kick, cc.QutritState.from_string(INITIAL), CYCLES, probes
        )
        m12 = rec.populations[1:, :, 1] - rec.populations[1:, :, 2]
        _, mag = cc.fft_response(m12.mean(axis=1))
        acc += mag
    acc /= N_INSTANCES
    spectra[k] = acc[1 : half + 1]
    peak = int(np.argmax(spectra[k])) + 1
    peak_omega[k] = 2 * np.pi * peak / CYCLES

print(f"initial state {INITIAL}, {N_INSTANCES} instances, {CYCLES} cycles")
print("   g     peak omega / pi")
for g, w in zip(g_grid, peak_omega):
    print(f"  {g:4.2f}   {w / np.pi:.3f}")

# ── Figure ─────────────────────────────────────────────────────────────

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 3.8))
omegas = 2 * np.pi * np.arange(1, half + 1) / CYCLES
im = ax1.pcolormesh(
    g_grid, omegas, spectra.T, shading="nearest", cmap="magma"
)
ax1.axhline(np.pi, color="w", ls="--", lw=0.8)
ax1.axhline(2 * np.pi / 3, color="w", ls=":", lw=0.8)
ax1.set_xlabel("kick strength g")
ax1.set_ylabel("omega")
ax1.set_title("subspace magnetization |FFT|")
fig.colorbar(im, ax=ax1)

ax2.plot(g_grid, peak_omega / np.pi, marker="o", ms=4)
ax2.axhline(1.0, color="gray", ls="--", lw=1, label="period 2")
ax2.axhline(2 / 3, color="gray", ls=":", lw=1, label="period 3")
ax2.set_xlabel("kick strength g")
ax2.set_ylabel("peak omega / pi")
ax2.legend(frameon=False, fontsize=9)
ax2.set_title("dominant response frequency")
fig.tight_layout()
out = HERE / "subspace_interpolation.png"
fig.savefig(out, dpi=150)
print(f"wrote {out}")
