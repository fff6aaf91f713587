"""Transverse-field Ising chain driven across its critical point.

The even-parity sector of the periodic chain

    H = sum_j sigma^x_j sigma^x_{j+1} + h(t) sum_j sigma^z_j

maps onto independent two-level systems, one per positive pseudo-momentum
k = (2j-1) pi / L. In the pair basis {|0_k 0_-k>, |1_k 1_-k>} each mode is
governed by

    H_k(h) = -2 [ (h - cos k) sigma_z + sin k sigma_y ],

whose spectrum is -/+ eps_k with eps_k = 2 sqrt((h - cos k)^2 + sin^2 k) and
whose ground vector is (cos(theta_k/2), i sin(theta_k/2)) with the Bogoliubov
angle theta_k = atan2(sin k, h - cos k). The many-body state is the product
of the mode states; fidelities factorize accordingly.

The sweep h(t) = h_i + (h_f - h_i) t / t_f crosses the critical point h = 1
(thermodynamic gap 2|h - 1|). The module mirrors the two-level toolkit:
exact evolution, adiabatic and adiabatic-impulse registers, switching-time
prescriptions, and the impulse-interval optimizer.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .numkit import complete_elliptic_e, find_root_bracketed, integrate_ode, minimize_scalar
from .lz_closed import REGIME_INTERIOR, REGIME_WHOLE, SwitchingTimes


@dataclass(frozen=True)
class TfiParams:
    """Chain length L (even), field endpoints h_i < 1 < h_f, sweep duration t_f."""

    L: int
    h_i: float
    h_f: float
    t_f: float

    def __post_init__(self):
        if self.L < 2 or self.L % 2:
            raise ValueError(f"require even L >= 2, got {self.L}")
        if not (0.0 <= self.h_i < 1.0 < self.h_f):
            raise ValueError(f"require 0 <= h_i < 1 < h_f, got h_i={self.h_i}, h_f={self.h_f}")
        if self.t_f <= 0:
            raise ValueError(f"require t_f > 0, got {self.t_f}")

    @property
    def dh(self):
        return self.h_f - self.h_i

    @property
    def hdot(self):
        return self.dh / self.t_f

    def h(self, t):
        return self.h_i + self.dh * np.asarray(t) / self.t_f


@dataclass
class ModeRegister:
    """Product state: one normalized complex 2-vector per positive momentum."""

    momenta: np.ndarray  # shape (M,)
    amps: np.ndarray     # shape (M, 2) complex, pair basis {|00>, |11>}

    def copy(self):
        return ModeRegister(self.momenta.copy(), self.amps.copy())


def momenta(L):
    """Positive pseudo-momenta (2j - 1) pi / L, j = 1 .. L/2, ascending."""
    if L < 2 or L % 2:
        raise ValueError(f"require even L >= 2, got {L}")
    j = np.arange(1, L // 2 + 1)
    return (2 * j - 1) * np.pi / L


def epsilon_k(h, k):
    """Excitation energy 2 sqrt((h - cos k)^2 + sin^2 k); broadcasts."""
    return 2.0 * np.hypot(np.asarray(h) - np.cos(k), np.sin(k))


def theta_k(h, k):
    """Bogoliubov angle atan2(sin k, h - cos k), continuous across h = cos k."""
    return np.arctan2(np.sin(k), np.asarray(h) - np.cos(k))


def mode_hamiltonian(h, k):
    """Pair-basis 2x2 mode Hamiltonian -2[(h - cos k) sigma_z + sin k sigma_y]."""
    a = h - np.cos(k)
    s = np.sin(k)
    return np.array([[-2.0 * a, 2.0j * s], [-2.0j * s, 2.0 * a]])


def mode_ground(h, k):
    """Ground vector (cos(theta/2), i sin(theta/2)); broadcasts to (..., 2)."""
    th = theta_k(h, k)
    return np.stack([np.cos(th / 2.0) + 0.0j, 1.0j * np.sin(th / 2.0)], axis=-1)


def mode_excited(h, k):
    """Excited vector (i sin(theta/2), cos(theta/2)), orthogonal to the ground one."""
    th = theta_k(h, k)
    return np.stack([1.0j * np.sin(th / 2.0), np.cos(th / 2.0) + 0.0j], axis=-1)


def ground_register(p, h=None):
    """Product ground state at field h (defaults to the initial field)."""
    if h is None:
        h = p.h_i
    ks = momenta(p.L)
    return ModeRegister(ks, mode_ground(h, ks))


def gs_energy_thermo(h, L):
    """Thermodynamic-limit ground energy -(L / 2 pi) int_0^pi eps_k dk."""
    if h < 0:
        raise ValueError(f"require h >= 0, got {h}")
    val, _ = quad(lambda k: epsilon_k(h, k), 0.0, np.pi, epsabs=1e-13, epsrel=1e-13)
    return -L / (2.0 * np.pi) * val


def tfi_gap(h, L, thermodynamic=False):
    """Spectral gap: min_k eps_k at finite L, or its k -> 0 limit 2|h - 1|."""
    if h < 0:
        raise ValueError(f"require h >= 0, got {h}")
    if thermodynamic:
        return 2.0 * abs(h - 1.0)
    return float(np.min(epsilon_k(h, momenta(L))))


def evolve_register(p, rel_tol=1e-10, abs_tol=1e-12, method="DOP853"):
    """Exact evolution of every mode from the h_i ground register.

    The modes are uncoupled; they are integrated as one stacked system purely
    for efficiency (i d psi_k/dt = H_k(h(t)) psi_k for each k).
    """
    ks = momenta(p.L)
    cos_k, sin_k = np.cos(ks), np.sin(ks)
    y0 = mode_ground(p.h_i, ks).ravel()

    def rhs(t, y):
        a = (p.h_i + p.hdot * t) - cos_k
        v = y.reshape(-1, 2)
        dv = np.empty_like(v)
        # -i H_k v  with  H_k = [[-2a, 2is], [-2is, 2a]]
        dv[:, 0] = 2.0j * a * v[:, 0] + 2.0 * sin_k * v[:, 1]
        dv[:, 1] = -2.0 * sin_k * v[:, 0] - 2.0j * a * v[:, 1]
        return dv.ravel()

    y = integrate_ode(rhs, y0, 0.0, p.t_f, rel_tol, abs_tol, method=method)
    return ModeRegister(ks, y.reshape(-1, 2))


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)


def _eps_time_integral(p, t_a, t_b, tol=1e-12):
    """int_{t_a}^{t_b} eps_k(h(t)) dt for every mode; adaptive Gauss-Legendre.

    t_a, t_b may be arrays (broadcast against each other); the result has
    shape broadcast(t_a, t_b).shape + (M,). The integrand is analytic, so
    panel doubling converges almost immediately.
    """
    ks = momenta(p.L)
    cos_k, sin_k = np.cos(ks), np.sin(ks)
    t_a, t_b = np.broadcast_arrays(np.asarray(t_a, float), np.asarray(t_b, float))
    shape = t_a.shape

    def gl(n_panels):
        edges = np.linspace(0.0, 1.0, n_panels + 1)
        total = np.zeros(shape + (ks.size,))
        for i in range(n_panels):
            mid = 0.5 * (edges[i] + edges[i + 1])
            half = 0.5 * (edges[i + 1] - edges[i])
            u = mid + half * _GL_NODES  # fractions of [t_a, t_b]
            t = t_a[..., None] + (t_b - t_a)[..., None] * u
            h = p.h_i + p.hdot * t
            eps = 2.0 * np.hypot(h[..., None] - cos_k, sin_k)
            total += half * np.einsum("...nk,n->...k", eps, _GL_WEIGHTS)
        return total * (t_b - t_a)[..., None]

    val = gl(1)
    n = 2
    while True:
        new = gl(n)
        if np.max(np.abs(new - val)) <= tol * max(1.0, np.max(np.abs(new))) or n >= 64:
            return new
        val, n = new, n * 2


def adiabatic_register(p):
    """Per-mode adiabatic state: ground vector at h_f with its dynamical phase."""
    ks = momenta(p.L)
    phases = _eps_time_integral(p, 0.0, p.t_f)  # ground energy is -eps_k
    amps = np.exp(1j * phases)[:, None] * mode_ground(p.h_f, ks)
    return ModeRegister(ks, amps)


def aia_register(p, st):
    """Adiabatic-impulse register: frozen on [tau_-, tau_+], adiabatic outside.

    Per-mode analog of the two-level construction; mode energies are -/+
    eps_k, so the ground-state phase over [a, b] is +int eps dt and the
    excited one its negative. tau_+ < tau_- encodes the double crossing.
    """
    tm, tp = st.tau_minus, st.tau_plus
    if not (0.0 <= tm <= p.t_f and 0.0 <= tp <= p.t_f):
        raise ValueError("switching times must lie in [0, t_f]")
    ks = momenta(p.L)
    th_m = theta_k(p.h(tm), ks)
    th_p = theta_k(p.h(tp), ks)
    half = 0.5 * (th_m - th_p)
    ov_gg = np.cos(half)            # <g(tau_+)|g(tau_-)>
    ov_eg = 1.0j * np.sin(half)     # <e(tau_+)|g(tau_-)>

    head = _eps_time_integral(p, 0.0, tm)   # (M,)
    tail = _eps_time_integral(p, tp, p.t_f)
    cg = np.exp(1j * tail) * np.exp(-1j * head) * ov_gg
    ce = np.exp(-1j * tail) * np.exp(-1j * head) * ov_eg

    amps = cg[:, None] * mode_ground(p.h_f, ks) + ce[:, None] * mode_excited(p.h_f, ks)
    amps /= np.linalg.norm(amps, axis=1, keepdims=True)
    return ModeRegister(ks, amps)


def register_fidelity(reg_a, reg_b):
    """Product of per-mode overlap magnitudes squared."""
    if reg_a.momenta.shape != reg_b.momenta.shape or not np.allclose(
            reg_a.momenta, reg_b.momenta):
        raise ValueError("registers carry different momentum lists")
    ov = np.einsum("ki,ki->k", reg_a.amps.conj(), reg_b.amps)
    return float(np.prod(np.abs(ov) ** 2))


def register_distance(reg_a, reg_b):
    """sqrt(1 - prod_k |<psi_k|phi_k>|^2), clamped to [0, 1]."""
    f = min(register_fidelity(reg_a, reg_b), 1.0)
    return float(np.sqrt(max(0.0, 1.0 - f)))


def _kz_condition_scenario2(p, h):
    """Signed mismatch of the modified freeze-out condition at field h.

    Positive where the inverse thermodynamic gap 1/|h - 1| exceeds the
    chain's inverse rate of change (h + 1) E(4h/(1+h)^2) / (pi hdot), i.e.
    inside the frozen region around h = 1.
    """
    m = min(4.0 * h / (1.0 + h) ** 2, 1.0)  # = 1 at h = 1 up to rounding
    rate = (h + 1.0) * complete_elliptic_e(m) / (np.pi * p.hdot)
    return 1.0 / abs(h - 1.0) - rate


def switching_times_tfi(p, scenario):
    """Impulse window for the chain sweep.

    Scenario 1 applies the freeze-out argument to the distance from
    criticality (gap 2|h - 1|), giving the closed form t_center -/+
    sqrt(t_f) / sqrt(2 dh) above the threshold t_f = dh / (2 (h_f - 1)^2);
    below it the whole sweep is impulse. Scenario 2 equates the inverse gap
    with the chain's inverse rate of change, which involves the complete
    elliptic integral and is solved numerically on each side of h = 1.
    """
    tf, dh = p.t_f, p.dh
    center = -(p.h_i - 1.0) * tf / dh  # time where h = 1

    if scenario == 1:
        if tf < 0.5 * dh / (p.h_f - 1.0) ** 2:
            return SwitchingTimes(0.0, tf, REGIME_WHOLE)
        half = np.sqrt(tf) / (np.sqrt(2.0) * np.sqrt(dh))
        tau_m = min(max(center - half, 0.0), tf)
        tau_p = min(max(center + half, 0.0), tf)
        return SwitchingTimes(tau_m, tau_p, REGIME_INTERIOR)

    if scenario != 2:
        raise ValueError(f"scenario must be 1 or 2 for the chain, got {scenario}")

    eps = 1e-9 * dh

    def locate(h_lo, h_hi, pick_last):
        grid = np.linspace(h_lo, h_hi, 513)
        vals = np.array([_kz_condition_scenario2(p, h) for h in grid])
        flips = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
        if flips.size == 0:
            return None
        i = flips[-1] if pick_last else flips[0]
        return find_root_bracketed(lambda h: _kz_condition_scenario2(p, h),
                                   grid[i], grid[i + 1], tol=1e-13)

    h_minus = locate(p.h_i, 1.0 - eps, pick_last=True)
    h_plus = locate(1.0 + eps, p.h_f, pick_last=False)
    tau_m = 0.0 if h_minus is None else (h_minus - p.h_i) * tf / dh
    tau_p = tf if h_plus is None else (h_plus - p.h_i) * tf / dh
    regime = REGIME_WHOLE if (h_minus is None and h_plus is None) else REGIME_INTERIOR
    return SwitchingTimes(tau_m, tau_p, regime)


def aia_distance_grid(p, dtaus, exact_reg):
    """Register distance of the centered-window AIA to the exact register,
    vectorized over an array of impulse intervals."""
    dtaus = np.asarray(dtaus, dtype=float)
    tm = p.t_f / 2.0 - dtaus / 2.0
    tp = p.t_f / 2.0 + dtaus / 2.0
    ks = momenta(p.L)

    th_m = theta_k(np.asarray(p.h(tm))[:, None], ks)
    th_p = theta_k(np.asarray(p.h(tp))[:, None], ks)
    half = 0.5 * (th_m - th_p)
    ov_gg = np.cos(half)
    ov_eg = 1.0j * np.sin(half)

    tail = _eps_time_integral(p, tp, np.full_like(tp, p.t_f))  # (N, M)
    cg = np.exp(1j * tail) * ov_gg
    ce = np.exp(-1j * tail) * ov_eg

    g_f = mode_ground(p.h_f, ks)   # (M, 2)
    e_f = mode_excited(p.h_f, ks)
    amps = cg[..., None] * g_f + ce[..., None] * e_f  # (N, M, 2)
    amps /= np.linalg.norm(amps, axis=-1, keepdims=True)

    ov = np.einsum("nki,ki->nk", amps.conj(), exact_reg.amps)
    fid = np.prod(np.abs(ov) ** 2, axis=-1)
    return np.sqrt(np.maximum(0.0, 1.0 - np.minimum(fid, 1.0)))


def optimize_dtau_tfi(p, exact_reg=None, rel_tol=1e-10, abs_tol=1e-12,
                      n_grid=801, tol=1e-6):
    """Impulse interval minimizing the register distance over [-t_f, t_f].

    The scan grid contains dtau = 0, so the result never exceeds the
    adiabatic distance.
    """
    if exact_reg is None:
        exact_reg = evolve_register(p, rel_tol, abs_tol)
    n = max(int(n_grid), 201)
    if n % 2 == 0:
        n += 1

    def f(dt):
        return float(aia_distance_grid(p, np.array([dt]), exact_reg)[0])

    def f_grid(dts):
        return aia_distance_grid(p, dts, exact_reg)

    return minimize_scalar(f, -p.t_f, p.t_f, tol=tol, n_grid=n, f_grid=f_grid)
