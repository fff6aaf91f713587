"""Spectral transport: kernel product, holonomy, full transport, Choi checks."""

import numpy as np
import pytest
from dataclasses import replace
from scipy.linalg import expm

from aia import intertwiner as itw
from aia import lindblad_open as lo

P_STD = lo.OpenParams(x=0.25, z_i=-1.0, z_f=1.0, t_f=100.0, T=0.3, g=1e-3)


class _FrozenPath:
    """Time-independent generator path (z pinned), for idempotence checks."""

    def __init__(self, z0, t_f=30.0, x=0.25, T=0.3, g=1e-3):
        self.x, self.z_i, self.z_f, self.t_f, self.T, self.g = x, -1.0, 1.0, t_f, T, g
        self._z0 = z0

    @property
    def beta(self):
        return 1.0 / self.T

    def z(self, t):
        return self._z0 + 0.0 * np.asarray(t)


# ----------------------------------------------------------- projectors, kernel

def test_projector_completeness_along_path():
    for s in np.linspace(0.01, 0.99, 11):
        ps = itw.spectral_projectors(P_STD, s)
        assert np.abs(sum(ps) - np.eye(4)).max() < 1e-10
        for pn in ps:
            assert np.abs(pn @ pn - pn).max() < 1e-12


def test_commutator_term_traceless():
    for s in (0.2, 0.5, 0.8):
        term = itw._commutator_term(P_STD, s, 1e-6)
        assert abs(np.trace(term)) < 1e-8


def test_w1_time_independent_is_projector():
    frozen = _FrozenPath(-0.4)
    w = itw.w1_projector_product(frozen, 50)
    p1 = itw.kernel_projector(frozen, 0.0)
    assert np.abs(w - p1).max() < 1e-13


def test_w1_mesh_independent_for_flat_connection():
    # the kernel connection vanishes, so 2 mesh points already give the limit
    w2 = itw.w1_projector_product(P_STD, 2)
    w200 = itw.w1_projector_product(P_STD, 200)
    assert np.abs(w2 - w200).max() < 1e-14
    spec_f = lo.liouvillian_spectrum(P_STD.x, P_STD.z_f, P_STD.beta, P_STD.g)
    spec_0 = lo.liouvillian_spectrum(P_STD.x, P_STD.z_i, P_STD.beta, P_STD.g)
    ref = np.outer(spec_f.right[:, 0], spec_0.left[0]).real
    assert np.abs(w2 - ref).max() < 1e-14


def test_w1_mesh_doubling_converges():
    a = itw.w1_projector_product(P_STD, 10000)
    b = itw.w1_projector_product(P_STD, 20000)
    assert np.abs(a - b).max() < 1e-8


def test_w1_projector_sandwich_identities():
    w = itw.w1_projector_product(P_STD, 64)
    p1_t = itw.kernel_projector(P_STD, P_STD.t_f)
    p1_0 = itw.kernel_projector(P_STD, 0.0)
    assert np.abs(p1_t @ w - w).max() < 1e-8
    assert np.abs(w @ p1_0 - w).max() < 1e-8


def test_kernel_projector_fd_derivative_matches_analytic():
    # the finite-difference dP1/dt used inside the transport ODE, checked
    # against the analytic derivative of the closed-form steady vector
    # R1(z) = (1/sqrt2, -sqrt2 x th / D, 0, -sqrt2 z th / D), th = tanh(beta b)
    p = P_STD
    for t in (13.0, 50.0, 88.0):
        z = float(p.z(t))
        zdot = (p.z_f - p.z_i) / p.t_f
        b = np.hypot(p.x, z)
        th = np.tanh(p.beta * b)
        dth_dz = p.beta * (z / b) * (1.0 - th * th)
        sq2 = np.sqrt(2.0)

        def coeff_deriv(num):  # d/dz of -sqrt2 * num * th / (2 b), num in {x, z}
            dnum = 0.0 if num == p.x else 1.0
            return -sq2 / 2.0 * ((dnum * th + num * dth_dz) / b - num * th * z / b ** 3)

        dr1_dt = zdot * np.array([0.0, coeff_deriv(p.x), 0.0, coeff_deriv(z)])
        # numerical derivative via the same central difference the ODE uses
        step = 1e-6
        sp = lo.liouvillian_spectrum(p.x, float(p.z(t + step)), p.beta, p.g)
        sm = lo.liouvillian_spectrum(p.x, float(p.z(t - step)), p.beta, p.g)
        fd = (sp.right[:, 0] - sm.right[:, 0]).real / (2 * step)
        assert np.abs(fd - dr1_dt).max() < 1e-7


def test_holonomy_scalar_vanishes():
    for t in (5.0, 50.0, 95.0):
        assert abs(itw.holonomy_a1(P_STD, t)) < 1e-8


def test_holonomy_consistent_with_product_limit():
    # exp(-int A_1) should equal the scalar part of the projector product;
    # here both are exactly one
    w = itw.w1_projector_product(P_STD, 5000)
    spec_f = lo.liouvillian_spectrum(P_STD.x, P_STD.z_f, P_STD.beta, P_STD.g)
    spec_0 = lo.liouvillian_spectrum(P_STD.x, P_STD.z_i, P_STD.beta, P_STD.g)
    scalar = np.dot(spec_f.left[0], w @ spec_0.right[:, 0]).real
    assert abs(scalar - 1.0) < 1e-8


# --------------------------------------------------------------- full transport

def test_full_transport_time_independent_is_exponential():
    frozen = _FrozenPath(-0.4, t_f=30.0)
    u = itw.full_intertwiner(frozen, 1.0)
    gen = lo.liouvillian_matrix(frozen.x, -0.4, frozen.beta, frozen.g)
    assert np.abs(u - expm(30.0 * gen)).max() < 1e-8


def test_full_transport_agrees_with_kernel_transport():
    u = itw.full_intertwiner(P_STD, 1.0)
    w = itw.w1_projector_product(P_STD, 2)
    r1_0 = lo.steady_state(P_STD.x, P_STD.z_i, P_STD.beta)
    assert np.abs(u @ r1_0 - w @ r1_0).max() < 1e-8


def test_full_transport_intertwines_projectors():
    u = itw.full_intertwiner(P_STD, 1.0, fd_step=1e-5)
    p_end = itw.spectral_projectors(P_STD, 1.0)
    p_start = itw.spectral_projectors(P_STD, 0.0)
    for n in range(4):
        resid = np.abs(p_end[n] @ u - u @ p_start[n]).max()
        assert resid < 1e-6


def test_full_transport_trace_preserving():
    u = itw.full_intertwiner(P_STD, 1.0)
    assert itw.cptp_diagnostics(u)[0] < 1e-9


# ------------------------------------------------------------ Choi diagnostics

def test_choi_identity_map():
    trace_err, min_eig = itw.cptp_diagnostics(np.eye(4))
    assert trace_err < 1e-14 and abs(min_eig) < 1e-14
    w = np.linalg.eigvalsh(itw.choi_matrix(np.eye(4)))
    assert np.allclose(sorted(w), [0, 0, 0, 2], atol=1e-14)


def test_choi_exact_propagator_is_cptp():
    prop = itw.exact_propagator(P_STD, 1.0)
    trace_err, min_eig = itw.cptp_diagnostics(prop)
    assert trace_err < 1e-10
    assert min_eig > -1e-9
    # trace preservation in Choi form: partial trace over the output factor
    choi = itw.choi_matrix(prop).reshape(2, 2, 2, 2)
    assert np.abs(np.einsum("ijil->jl", choi) - np.eye(2)).max() < 1e-10
    assert np.abs(itw.choi_matrix(prop)
                  - itw.choi_matrix(prop).conj().T).max() < 1e-12


def test_choi_composition_stays_cptp():
    half = itw.exact_propagator(P_STD, 0.5)
    full = itw.exact_propagator(P_STD, 1.0)
    trace_err, min_eig = itw.cptp_diagnostics(half @ half)
    assert trace_err < 1e-10 and min_eig > -1e-9
    # composing halves of a time-dependent path differs from the full map,
    # but both must be CPTP
    assert itw.cptp_diagnostics(full)[1] > -1e-9


def test_transport_cp_defect_bounded_by_distance_to_exact():
    for tf in (10.0, 100.0):
        q = replace(P_STD, t_f=tf)
        u = itw.full_intertwiner(q, 1.0)
        e = itw.exact_propagator(q, 1.0)
        defect = max(0.0, -itw.cptp_diagnostics(u)[1])
        assert defect <= 2.0 * itw.superop_trace_norm_distance(u, e) + 1e-9


def test_closeness_bound_requires_enough_points():
    with pytest.raises(ValueError):
        itw.closeness_bound_check(P_STD, [10.0, 20.0])


def test_closeness_norm_halves_when_time_doubles():
    fit, norms = itw.closeness_bound_check(P_STD, [200.0, 400.0, 800.0])
    ratios = norms[1:] / norms[:-1]
    assert np.all((0.3 < ratios) & (ratios < 0.7))


def test_closed_limit_transport_error_still_inverse_time():
    p0 = replace(P_STD, g=0.0)
    fit, norms = itw.closeness_bound_check(p0, [100.0, 300.0, 1000.0])
    assert -1.35 < fit.exponent < -0.65
    assert norms[-1] < 0.05
