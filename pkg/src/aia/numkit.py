"""Small numerical kernel: ODE integration, root finding, scalar minimization,
power-law fitting, the complete elliptic integral and Hermitian eigensolves.

Everything here is dimension-agnostic but tuned for the tiny systems used in
the rest of the package (state vectors of length 2, superoperators of size 4).
All functions are pure; none keeps internal state.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq


class IntegrationError(RuntimeError):
    """Adaptive stepping failed (step-size underflow or non-finite rhs)."""


@dataclass(frozen=True)
class FitResult:
    """Power law d = amplitude * t**exponent fitted in log-log space.

    ``residual`` is the RMS of the log-residuals; it vanishes (to rounding)
    on exact power-law data.
    """

    amplitude: float
    exponent: float
    residual: float


def integrate_ode(rhs, y0, t0, t1, rel_tol=1e-10, abs_tol=1e-12, method="RK45"):
    """Propagate y' = rhs(t, y) from t0 to t1 with an embedded adaptive RK pair.

    The default is the 5(4) pair; ``method="DOP853"`` selects the 8th-order
    pair, which accumulates far less global error on the very long sweeps
    (t1 up to 1e4 oscillation periods). Real and complex state vectors are
    both supported; the result has the dtype of ``y0``. Raises
    :class:`IntegrationError` with the failing time if the step size
    underflows.
    """
    if t1 < t0:
        raise ValueError(f"require t1 >= t0, got [{t0}, {t1}]")
    if rel_tol <= 0 or abs_tol <= 0:
        raise ValueError("tolerances must be positive")
    y0 = np.atleast_1d(np.asarray(y0))
    if t1 == t0:
        return y0.copy()
    sol = solve_ivp(rhs, (t0, t1), y0, method=method,
                    rtol=rel_tol, atol=abs_tol, dense_output=False)
    if not sol.success:
        t_fail = sol.t[-1] if sol.t.size else t0
        raise IntegrationError(f"integration failed at t={t_fail:.6g}: {sol.message}")
    return sol.y[:, -1]


def find_root_bracketed(g, a, b, tol=1e-12):
    """Root of g on [a, b] given a sign change; Brent's method (bisection-safe)."""
    ga, gb = g(a), g(b)
    if ga == 0.0:
        return a
    if gb == 0.0:
        return b
    if ga * gb > 0:
        raise ValueError(f"no sign change on [{a}, {b}]: g(a)={ga:.3g}, g(b)={gb:.3g}")
    return brentq(g, a, b, xtol=tol, rtol=4 * np.finfo(float).eps)


def minimize_scalar(f, a, b, tol=1e-10, n_grid=201, f_grid=None):
    """Global-ish scalar minimization: coarse grid scan plus golden-section refine.

    The scan uses ``n_grid`` (>= 201) equally spaced points; the returned value
    never exceeds the scan minimum. ``f_grid``, when given, evaluates f on a
    whole numpy array at once and is used only for the scan.
    """
    if not a < b:
        raise ValueError(f"require a < b, got [{a}, {b}]")
    n_grid = max(int(n_grid), 201)
    xs = np.linspace(a, b, n_grid)
    fs = f_grid(xs) if f_grid is not None else np.array([f(x) for x in xs])
    if not np.all(np.isfinite(fs)):
        raise ValueError("objective returned non-finite values on the scan grid")
    i = int(np.argmin(fs))
    x_best, f_best = float(xs[i]), float(fs[i])

    lo = xs[max(i - 1, 0)]
    hi = xs[min(i + 1, n_grid - 1)]
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = f(x2)
    for x, fx in ((x1, f1), (x2, f2)):
        if fx < f_best:
            x_best, f_best = float(x), float(fx)
    return x_best, f_best


def fit_power_law(t, d):
    """Least-squares fit of d = A * t**p in (log t, log d) coordinates."""
    t = np.asarray(t, dtype=float)
    d = np.asarray(d, dtype=float)
    if t.size < 3:
        raise ValueError("need at least 3 points to fit a power law")
    if np.any(t <= 0) or np.any(d <= 0):
        raise ValueError("power-law fit requires strictly positive data")
    lt, ld = np.log(t), np.log(d)
    p, c = np.polyfit(lt, ld, 1)
    resid = ld - (p * lt + c)
    return FitResult(amplitude=float(np.exp(c)), exponent=float(p),
                     residual=float(np.sqrt(np.mean(resid**2))))


def complete_elliptic_e(m):
    """Complete elliptic integral int_0^{pi/2} sqrt(1 - m sin^2 x) dx, m in [0, 1].

    Evaluated by the arithmetic-geometric mean iteration.
    """
    if m < 0 or m > 1:
        raise ValueError(f"require 0 <= m <= 1, got {m}")
    if m == 1.0:
        return 1.0
    a, b = 1.0, np.sqrt(1.0 - m)
    c2_sum = 0.5 * m  # 2**(n-1) * c_n**2 accumulated from n = 0
    pow2 = 0.5
    while a - b > 4.0 * np.finfo(float).eps * a:
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), np.sqrt(a * b)
        pow2 *= 2.0
        c2_sum += pow2 * c * c
    return float(np.pi / (2.0 * a) * (1.0 - c2_sum))


def eig_hermitian(mat, herm_tol=1e-12):
    """Eigen-decomposition of a Hermitian matrix.

    Returns eigenvalues in ascending order and the matching orthonormal
    eigenvector columns. Rejects input whose anti-Hermitian part exceeds
    ``herm_tol`` relative to the matrix scale.
    """
    mat = np.asarray(mat)
    scale = max(np.abs(mat).max(), 1e-300)
    if np.abs(mat - mat.conj().T).max() > herm_tol * max(scale, 1.0):
        raise ValueError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(mat)
    return w, v
