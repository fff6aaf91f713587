#!/usr/bin/env python3
"""Drive a two-level avoided crossing and compare approximation schemes.

The detuning ramps linearly from z = -1 to z = +1 at constant coupling
x = 0.1, passing the minimum gap 2x at z = 0. For a handful of sweep
durations t_f this script prints the distance of the exact state to

  * the adiabatic approximation (instantaneous ground state + phase),
  * its first-order 1/t_f correction,
  * the adiabatic-impulse state for the freeze-out window (scenario 1).

Fast sweeps: everything is far from the exact state except the impulse
picture. Slow sweeps: the adiabatic hierarchy wins; the freeze-out window
overestimates the frozen region and falls behind.
"""

from aia import lz_closed as lz


def main():
    print("two-level sweep: x = 0.1, z from -1 to +1")
    print(f"{'t_f':>8} {'d_adi':>12} {'d_adi1':>12} {'d_aia1':>12} {'window':>18}")
    for tf in (1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0):
        p = lz.LzParams(0.1, -1.0, 1.0, tf)
        psi = lz.evolve_schrodinger(p)
        st = lz.switching_times(p, 1)
        d_adi = lz.state_distance(psi, lz.adiabatic_state(p))
        d_adi1 = lz.state_distance(psi, lz.adiabatic_first_order(p))
        d_aia = lz.state_distance(psi, lz.aia_state(p, st))
        window = f"[{st.tau_minus:6.2f}, {st.tau_plus:6.2f}]"
        print(f"{tf:8.0f} {d_adi:12.4e} {d_adi1:12.4e} {d_aia:12.4e} {window:>18}")

    print()
    print("small t_f: the impulse state (frozen initial condition re-expanded)")
    print("tracks the dynamics better than the adiabatic state; by t_f ~ 100 the")
    print("ordering flips, and the 1/t_f correction dominates once the residual")
    print("gap tunneling exp(-pi x^2 t_f / (2 dz)) has died out (t_f >~ 1500).")


if __name__ == "__main__":
    main()
