"""Thermally damped two-level sweep: Davies-form Lindblad generator.

The qubit Hamiltonian is the avoided-crossing sweep H(t) = x sigma_x +
z(t) sigma_z (gap Delta = 2b, b = sqrt(x^2 + z^2)); the bath couples through
sigma_y with strength g at inverse temperature beta. In the weak-coupling
(Davies) limit the jump operators connect Bohr frequencies {0, +/-Delta},
the omega = 0 operator vanishes for this coupling, and

    L_{+Delta} = (i z / 2b) sigma_x + (1/2) sigma_y - (i x / 2b) sigma_z,

the lowering operator in the instantaneous eigenbasis (L_{-Delta} is its
adjoint). The bath spectral function is Ohmic, gamma(w) = 2 pi g^2 w /
(1 - exp(-beta w)), which obeys detailed balance; the instantaneous steady
state is the Gibbs state of H.

Everything is expressed in the normalized Pauli basis Gamma_i =
{1, sigma_x, sigma_y, sigma_z} / sqrt(2): density matrices become real
4-vectors c_i = Tr(Gamma_i rho) (c_1 = 1/sqrt(2) fixes the trace), and the
generator a real 4x4 matrix with an identically zero first row. Its
spectrum and biorthonormal left/right eigenvectors are known in closed
form and drive the adiabatic and adiabatic-impulse constructions.
"""

from dataclasses import dataclass

import numpy as np

from .numkit import eig_hermitian, integrate_ode, minimize_scalar
from .lz_closed import (LzParams, SIGMA_X, SIGMA_Y, SIGMA_Z,
                        switching_times as lz_switching_times)

PAULI_BASIS = [np.eye(2) / np.sqrt(2.0), SIGMA_X / np.sqrt(2.0),
               SIGMA_Y / np.sqrt(2.0), SIGMA_Z / np.sqrt(2.0)]


@dataclass(frozen=True)
class OpenParams:
    """Sweep parameters plus bath temperature T (beta = 1/T) and coupling g."""

    x: float
    z_i: float
    z_f: float
    t_f: float
    T: float
    g: float

    def __post_init__(self):
        if self.x <= 0:
            raise ValueError(f"require x > 0, got {self.x}")
        if not (self.z_i < 0 < self.z_f):
            raise ValueError(f"require z_i < 0 < z_f, got z_i={self.z_i}, z_f={self.z_f}")
        if self.t_f <= 0:
            raise ValueError(f"require t_f > 0, got {self.t_f}")
        if self.T <= 0:
            raise ValueError(f"require T > 0, got {self.T}")
        if self.g < 0:
            raise ValueError(f"require g >= 0, got {self.g}")

    @property
    def beta(self):
        return 1.0 / self.T

    @property
    def dz(self):
        return self.z_f - self.z_i

    @property
    def zdot(self):
        return self.dz / self.t_f

    def z(self, t):
        return self.z_i + self.dz * np.asarray(t) / self.t_f

    def lz(self):
        """The closed-system parameter set driving the Hamiltonian part."""
        return LzParams(self.x, self.z_i, self.z_f, self.t_f)


@dataclass
class LiouvillianSpectrum:
    """Eigenvalues l_1..l_4 with right columns R_n and left rows L_n.

    Normalized so that L_n . R_m = delta_nm (plain bilinear pairing) and
    sum_n R_n L_n^T is the identity.
    """

    eigenvalues: np.ndarray  # (4,) complex
    right: np.ndarray        # (4, 4) complex, right[:, n]
    left: np.ndarray         # (4, 4) complex, left[n, :]


def spectral_gamma(omega, beta, g):
    """Ohmic bath rate 2 pi g^2 omega / (1 - exp(-beta omega)); broadcasts.

    The omega -> 0 limit 2 pi g^2 / beta is taken analytically. Detailed
    balance gamma(-w) = exp(-beta w) gamma(w) holds identically.
    """
    if beta <= 0:
        raise ValueError(f"require beta > 0, got {beta}")
    omega = np.asarray(omega, dtype=float)
    pref = 2.0 * np.pi * g * g
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        val = pref * omega / (-np.expm1(-beta * omega))
    val = np.where(omega == 0.0, pref / beta, val)
    return val if val.ndim else float(val)


def lindblad_ops(x, z):
    """Jump operators (L_0, L_+, L_-) at the working point (x, z)."""
    b = np.hypot(x, z)
    if b == 0.0:
        raise ValueError("degenerate point x = z = 0")
    l_plus = (1j * z / (2 * b)) * SIGMA_X + 0.5 * SIGMA_Y - (1j * x / (2 * b)) * SIGMA_Z
    return np.zeros((2, 2), dtype=complex), l_plus, l_plus.conj().T


def liouvillian_matrix(x, z, beta, g):
    """Generator as a real 4x4 matrix in the normalized Pauli basis.

    First row identically zero (trace preservation). gp/gm are the emission
    and absorption rates gamma(+Delta), gamma(-Delta) with Delta = 2b.
    """
    b = np.hypot(x, z)
    if b == 0.0:
        raise ValueError("degenerate point x = z = 0")
    delta = 2.0 * b
    gp = spectral_gamma(delta, beta, g)
    gm = spectral_gamma(-delta, beta, g)
    s, d = gm + gp, gm - gp
    d2 = delta * delta
    return np.array([
        [0.0, 0.0, 0.0, 0.0],
        [2.0 * x * d / delta, -2.0 * (x * x + d2 / 4.0) * s / d2, -2.0 * z,
         -2.0 * x * z * s / d2],
        [0.0, 2.0 * z, -0.5 * s, -2.0 * x],
        [2.0 * z * d / delta, -2.0 * x * z * s / d2, 2.0 * x,
         -2.0 * (d2 / 4.0 + z * z) * s / d2],
    ])


def liouvillian_spectrum(x, z, beta, g):
    """Closed-form eigensystem of the generator.

    l_1 = 0, l_2 = -[gamma(-D) + gamma(D)] = -2 pi g^2 D coth(beta D / 2),
    l_{3,4} = l_2 / 2 -/+ i D. The right/left vectors are normalized to a
    biorthonormal pair; all entries stay finite at z = 0.
    """
    if x == 0.0:
        raise ValueError("require x != 0 (gap must stay open)")
    b = np.hypot(x, z)
    delta = 2.0 * b
    th = np.tanh(0.5 * beta * delta)
    l2 = -(spectral_gamma(-delta, beta, g) + spectral_gamma(delta, beta, g))
    eigs = np.array([0.0, l2, 0.5 * l2 - 1j * delta, 0.5 * l2 + 1j * delta],
                    dtype=complex)

    sq2 = np.sqrt(2.0)
    r1 = np.array([1 / sq2, -sq2 * x * th / delta, 0.0, -sq2 * z * th / delta])
    r2 = np.array([0.0, 2 * x / delta, 0.0, 2 * z / delta])
    r3 = np.array([0.0, -sq2 * z / delta, -1j / sq2, sq2 * x / delta])
    r4 = r3.conj()
    l1 = np.array([sq2, 0.0, 0.0, 0.0])
    l2v = np.array([th, 2 * x / delta, 0.0, 2 * z / delta])
    l3 = np.array([0.0, -sq2 * z / delta, 1j / sq2, sq2 * x / delta])
    l4 = l3.conj()

    right = np.stack([r1, r2, r3, r4], axis=1).astype(complex)
    left = np.stack([l1, l2v, l3, l4], axis=0).astype(complex)
    return LiouvillianSpectrum(eigs, right, left)


def steady_state(x, z, beta):
    """Gibbs coherence vector (1/sqrt2, -sqrt2 x th/D, 0, -sqrt2 z th/D)."""
    b = np.hypot(x, z)
    if b == 0.0:
        raise ValueError("degenerate point x = z = 0")
    delta = 2.0 * b
    th = np.tanh(0.5 * beta * delta)
    sq2 = np.sqrt(2.0)
    return np.array([1 / sq2, -sq2 * x * th / delta, 0.0, -sq2 * z * th / delta])


def coherence_to_density(c):
    """Reconstruct the 2x2 density matrix sum_i c_i Gamma_i."""
    c = np.asarray(c)
    return sum(ci * gi for ci, gi in zip(c, PAULI_BASIS))


def density_to_coherence(rho):
    """Coefficients Tr(Gamma_i rho) of a 2x2 matrix; real for Hermitian rho."""
    return np.array([np.trace(g @ rho).real for g in PAULI_BASIS])


def evolve_master(p, rel_tol=1e-10, abs_tol=1e-12, method="DOP853", n_checks=0):
    """Integrate dc/dt = L(t) c from the Gibbs state at z_i.

    The first component is conserved identically (zero first row). With
    ``n_checks`` > 0, returns (c, min_eigs) where min_eigs samples the
    smallest eigenvalue of rho(t) at that many interior times.
    """
    c0 = steady_state(p.x, p.z_i, p.beta)

    def rhs(t, c):
        return liouvillian_matrix(p.x, float(p.z(t)), p.beta, p.g) @ c

    if not n_checks:
        return integrate_ode(rhs, c0, 0.0, p.t_f, rel_tol, abs_tol, method=method)

    times = np.linspace(0.0, p.t_f, n_checks + 1)
    mins = []
    c = c0
    for t0, t1 in zip(times[:-1], times[1:]):
        c = integrate_ode(rhs, c, t0, t1, rel_tol, abs_tol, method=method)
        mins.append(eig_hermitian(coherence_to_density(c))[0][0])
    return c, np.array(mins)


def adiabatic_state_open(p):
    """Adiabatic approximation: the instantaneous steady state at z_f.

    The kernel is one-dimensional, its eigenvalue is zero (no dynamical
    factor) and the geometric connection vanishes for these eigenvectors.
    """
    return steady_state(p.x, p.z_f, p.beta)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(48)


def _rate_integrals(p, t_a, t_b, tol=1e-12):
    """(int |l_2| dt, int Delta dt) over [t_a, t_b], panel-doubling quadrature."""
    if t_b == t_a:
        return 0.0, 0.0

    def gl(n_panels):
        edges = np.linspace(t_a, t_b, n_panels + 1)
        tot_r, tot_d = 0.0, 0.0
        for i in range(n_panels):
            mid = 0.5 * (edges[i] + edges[i + 1])
            half = 0.5 * (edges[i + 1] - edges[i])
            t = mid + half * _GL_NODES
            b = np.hypot(p.x, p.z(t))
            delta = 2.0 * b
            rate = (spectral_gamma(delta, p.beta, p.g)
                    + spectral_gamma(-delta, p.beta, p.g))
            tot_r += half * np.dot(_GL_WEIGHTS, rate)
            tot_d += half * np.dot(_GL_WEIGHTS, delta)
        return tot_r, tot_d

    val = gl(1)
    n = 2
    while True:
        new = gl(n)
        if max(abs(new[0] - val[0]), abs(new[1] - val[1])) <= tol * max(
                1.0, abs(new[0]), abs(new[1])) or n >= 64:
            return new
        val, n = new, n * 2


def aia_state_open(p, st):
    """Adiabatic-impulse coherence vector.

        sum_j exp(int_{tau_+}^{t_f} l_j dt)  L_j(tau_+) . R_1(tau_-)  R_j(t_f)

    The j = 1 term carries the trace (coefficient one); the others decay
    with the accumulated damping. No positivity clamp is applied; reconstruct
    rho and inspect its spectrum to diagnose small-t_f violations.
    """
    tm, tp = st.tau_minus, st.tau_plus
    if not (0.0 <= tm <= p.t_f and 0.0 <= tp <= p.t_f):
        raise ValueError("switching times must lie in [0, t_f]")
    spec_p = liouvillian_spectrum(p.x, float(p.z(tp)), p.beta, p.g)
    spec_f = liouvillian_spectrum(p.x, p.z_f, p.beta, p.g)
    r1_m = steady_state(p.x, float(p.z(tm)), p.beta).astype(complex)

    rate_int, delta_int = _rate_integrals(p, tp, p.t_f)
    phases = np.array([1.0,
                       np.exp(-rate_int),
                       np.exp(-0.5 * rate_int - 1j * delta_int),
                       np.exp(-0.5 * rate_int + 1j * delta_int)], dtype=complex)

    c = np.zeros(4, dtype=complex)
    for j in range(4):
        amp = phases[j] * np.dot(spec_p.left[j], r1_m)
        c += amp * spec_f.right[:, j]
    if np.abs(c.imag).max() > 1e-10:
        raise ArithmeticError("coherence vector acquired an imaginary part")
    return c.real


def liouvillian_gap(x, z, beta, g):
    """min(|l_2|, |l_3|), the slowest nonzero decay scale of the generator."""
    b = np.hypot(x, z)
    delta = 2.0 * b
    s = spectral_gamma(delta, beta, g) + spectral_gamma(-delta, beta, g)
    return float(min(s, np.hypot(0.5 * s, delta)))


def trace_distance(ca, cb):
    """(1/2) sum |eigenvalues| of the reconstructed difference matrix."""
    diff = coherence_to_density(np.asarray(ca) - np.asarray(cb))
    w, _ = eig_hermitian(diff)
    return float(0.5 * np.abs(w).sum())


def switching_times_open(p, scenario):
    """Impulse window from the Hamiltonian gap: same formulas as the closed sweep."""
    return lz_switching_times(p.lz(), scenario)


def aia_distance_grid(p, dtaus, c_exact):
    """Trace distance of the centered-window AIA to c_exact per impulse interval."""
    from .lz_closed import switching_from_dtau
    out = np.empty(len(dtaus))
    for i, dt in enumerate(np.asarray(dtaus, dtype=float)):
        st = switching_from_dtau(p.lz(), dt)
        out[i] = trace_distance(aia_state_open(p, st), c_exact)
    return out


def optimize_dtau_open(p, c_exact=None, rel_tol=1e-10, abs_tol=1e-12,
                       n_grid=601, tol=1e-6):
    """Impulse interval minimizing the trace distance over [-t_f, t_f]."""
    if c_exact is None:
        c_exact = evolve_master(p, rel_tol, abs_tol)
    n = max(int(n_grid), 201)
    if n % 2 == 0:
        n += 1

    def f(dt):
        return float(aia_distance_grid(p, [dt], c_exact)[0])

    def f_grid(dts):
        return aia_distance_grid(p, dts, c_exact)

    return minimize_scalar(f, -p.t_f, p.t_f, tol=tol, n_grid=n, f_grid=f_grid)
