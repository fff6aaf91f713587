#!/usr/bin/env python3
"""The four prescriptions for the impulse window of the two-level sweep.

Each prescription equates an inverse-gap time with a rate estimate:

  1  freeze-out:        1/(2b) = |z / dz/dt|
  2  operator rates:    1/(2b) = ||H|| / ||dH/dt||
  3  crude breakdown:   1/(2b) = t_f
  4  matrix element:    |<psi_2| dH/dt |psi_1>| = (2b)^2

Below a small t_f threshold every prescription declares the whole sweep
impulse. Prescriptions 2-4 collapse to a point window above t_f = dz/(2x^2),
1/(2x), dz/(4x^2) = 100, 5, 50; prescription 1's window instead tends to the
constant 1/x = 10.
"""

import numpy as np

from aia import lz_closed as lz


def main():
    print("impulse windows, x = 0.1, z in [-1, 1]")
    header = f"{'t_f':>9}" + "".join(f"{'dtau' + str(s):>12}" for s in range(1, 5))
    print(header)
    for tf in np.geomspace(0.1, 1e4, 11):
        row = f"{tf:9.1f}"
        for s in (1, 2, 3, 4):
            st = lz.switching_times(lz.LzParams(0.1, -1.0, 1.0, float(tf)), s)
            row += f"{st.dtau:12.4f}"
        print(row)

    print()
    for s, thresh in ((2, 100.0), (3, 5.0), (4, 50.0)):
        below = lz.switching_times(lz.LzParams(0.1, -1, 1, thresh * 0.99), s)
        above = lz.switching_times(lz.LzParams(0.1, -1, 1, thresh * 1.01), s)
        print(f"prescription {s}: window {below.dtau:.3f} just below t_f = {thresh:g}, "
              f"{above.dtau:.3f} just above ({above.regime})")
    st = lz.switching_times(lz.LzParams(0.1, -1, 1, 1e4), 1)
    print(f"prescription 1 at t_f = 1e4: dtau = {st.dtau:.5f} -> 1/x = 10")


if __name__ == "__main__":
    main()
