#!/usr/bin/env python3
"""Sweep the two-level crossing while coupled to a thermal bath.

The weak-coupling generator has jump operators connecting the instantaneous
Bohr frequencies, an Ohmic bath rate obeying detailed balance, and the
instantaneous Gibbs state as its steady state. In the coherence-vector
picture everything is a real 4x4 matrix; its spectrum is known in closed
form. The script prints the generator's decay scales, then trace-norm
distances of the exact evolution to the adiabatic (Gibbs) state and to the
freeze-out impulse construction, across bath temperatures.

Dissipation makes the approximations converge: every impulse scheme damps
onto the adiabatic curve once the accumulated rate integral is large, the
faster the hotter the bath.
"""

import numpy as np

from aia import lindblad_open as lo


def main():
    x, g = 0.1, 0.01
    print("generator scales at the crossing (z = 0), g = 0.01:")
    for temp in (0.05, 0.1, 0.5, 1.0):
        spec = lo.liouvillian_spectrum(x, 0.0, 1.0 / temp, g)
        gap = lo.liouvillian_gap(x, 0.0, 1.0 / temp, g)
        print(f"  T = {temp:5.2f}: l2 = {spec.eigenvalues[1].real:+.3e}, "
              f"|Im l3| = {abs(spec.eigenvalues[2].imag):.3f}, gap = {gap:.3e}")
    print()

    print(f"{'T':>6} {'t_f':>7} {'d_adi':>12} {'d_aia1':>12} {'ratio':>8}")
    for temp in (0.05, 0.5, 1.0):
        for tf in (100.0, 1000.0):
            p = lo.OpenParams(x, -1.0, 1.0, tf, temp, g)
            c_exact = lo.evolve_master(p)
            d_adi = lo.trace_distance(c_exact, lo.adiabatic_state_open(p))
            st = lo.switching_times_open(p, 1)
            d_aia = lo.trace_distance(c_exact, lo.aia_state_open(p, st))
            print(f"{temp:6.2f} {tf:7.0f} {d_adi:12.4e} {d_aia:12.4e} "
                  f"{d_aia / d_adi:8.2f}")

    print()
    p = lo.OpenParams(x, -1.0, 1.0, 1000.0, 1.0, g)
    c = lo.evolve_master(p)
    rho = lo.coherence_to_density(c)
    print(f"sanity at T = 1, t_f = 1000: trace = {np.trace(rho).real:.12f}, "
          f"purity = {np.trace(rho @ rho).real:.4f}")
    print("the hotter bath contracts the impulse error toward the adiabatic")
    print("curve much earlier; at T = 0.05 the coherent error of the wide")
    print("freeze-out window survives to t_f far beyond 1e4.")


if __name__ == "__main__":
    main()
