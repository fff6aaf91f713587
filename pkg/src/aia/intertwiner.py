"""Spectral transport of the damped-qubit generator along the sweep.

Two constructions are provided, both acting on coherence 4-vectors:

* the kernel transport W_1, realized as the limit of products of the
  instantaneous kernel projectors P_1(t) = R_1(t) L_1(t)^T taken at an
  increasingly fine time mesh, together with the scalar connection
  A_1(t) = L_1(t) . dR_1/dt that governs transport inside the kernel
  (identically zero here, so the ordered exponential collapses);

* the full transport U(s) carrying every spectral sector at once, defined
  on the rescaled time s = t / t_f by

      dU/ds = ( t_f L(s) + (1/2) sum_n [dP_n/ds, P_n] ) U,   U(0) = 1,

  which intertwines the instantaneous projectors, P_n(s) U(s) = U(s) P_n(0),
  up to discretization error.

U(s) is trace preserving but only approximately completely positive; its
distance to the exact propagator (and hence its complete-positivity defect)
shrinks like 1/t_f. The Choi-matrix diagnostics quantify both. The Choi
convention puts the output factor first: C = sum_ij S(|i><j|) (x) |i><j|.
"""

import numpy as np

from .numkit import eig_hermitian, integrate_ode
from .lindblad_open import PAULI_BASIS, liouvillian_matrix, liouvillian_spectrum


def kernel_projector(p, t):
    """Rank-one kernel projector R_1(t) L_1(t)^T of the sweep generator."""
    spec = liouvillian_spectrum(p.x, float(p.z(t)), p.beta, p.g)
    return np.outer(spec.right[:, 0], spec.left[0]).real


def spectral_projectors(p, s):
    """All four projectors P_n at rescaled time s (complex for the paired sectors)."""
    spec = liouvillian_spectrum(p.x, float(p.z(s * p.t_f)), p.beta, p.g)
    return [np.outer(spec.right[:, n], spec.left[n]) for n in range(4)]


def w1_projector_product(p, n_steps, t=None):
    """Kernel transport as the ordered product P_1(t) ... P_1(eps) P_1(0).

    ``n_steps`` is the number of mesh intervals (n_steps + 1 factors). The
    product converges as the mesh refines; for this generator the kernel
    connection vanishes, so it is exact already at the coarsest mesh.
    """
    if n_steps < 2:
        raise ValueError(f"require n_steps >= 2, got {n_steps}")
    if t is None:
        t = p.t_f
    out = kernel_projector(p, 0.0)
    for j in range(1, n_steps + 1):
        out = kernel_projector(p, t * j / n_steps) @ out
    return out


def holonomy_a1(p, t, step=1e-6):
    """Kernel connection L_1 . dR_1/dt by central differences (scalar here)."""
    spec_p = liouvillian_spectrum(p.x, float(p.z(t + step)), p.beta, p.g)
    spec_m = liouvillian_spectrum(p.x, float(p.z(t - step)), p.beta, p.g)
    spec_0 = liouvillian_spectrum(p.x, float(p.z(t)), p.beta, p.g)
    dr1 = (spec_p.right[:, 0] - spec_m.right[:, 0]) / (2.0 * step)
    return complex(np.dot(spec_0.left[0], dr1))


def _commutator_term(p, s, fd_step):
    """(1/2) sum_n [dP_n/ds, P_n] with dP_n/ds by central differences; real."""
    pn = spectral_projectors(p, s)
    pp = spectral_projectors(p, s + fd_step)
    pm = spectral_projectors(p, s - fd_step)
    acc = np.zeros((4, 4), dtype=complex)
    for n in range(4):
        dp = (pp[n] - pm[n]) / (2.0 * fd_step)
        acc += dp @ pn[n] - pn[n] @ dp
    return 0.5 * acc.real


def full_intertwiner(p, s=1.0, rel_tol=1e-10, abs_tol=1e-12, fd_step=1e-6,
                     method="DOP853"):
    """Transport superoperator U(s) for the sweep stretched to duration t_f."""

    def rhs(sv, u):
        gen = (p.t_f * liouvillian_matrix(p.x, float(p.z(sv * p.t_f)), p.beta, p.g)
               + _commutator_term(p, sv, fd_step))
        return (gen @ u.reshape(4, 4)).ravel()

    u = integrate_ode(rhs, np.eye(4).ravel(), 0.0, s, rel_tol, abs_tol, method=method)
    return u.reshape(4, 4)


def exact_propagator(p, s=1.0, rel_tol=1e-10, abs_tol=1e-12, method="DOP853"):
    """Exact evolution superoperator E(s), dE/ds = t_f L(s) E, E(0) = 1."""

    def rhs(sv, e):
        gen = p.t_f * liouvillian_matrix(p.x, float(p.z(sv * p.t_f)), p.beta, p.g)
        return (gen @ e.reshape(4, 4)).ravel()

    e = integrate_ode(rhs, np.eye(4).ravel(), 0.0, s, rel_tol, abs_tol, method=method)
    return e.reshape(4, 4)


def apply_superoperator(superop, rho):
    """Apply a Pauli-basis superoperator to a 2x2 matrix."""
    coeff = np.array([np.trace(g @ rho) for g in PAULI_BASIS])
    out_coeff = superop @ coeff
    return sum(c * g for c, g in zip(out_coeff, PAULI_BASIS))


def choi_matrix(superop):
    """Choi matrix sum_ij S(|i><j|) (x) |i><j| (output factor first)."""
    out = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            e_ij = np.zeros((2, 2), dtype=complex)
            e_ij[i, j] = 1.0
            out += np.kron(apply_superoperator(superop, e_ij), e_ij)
    return out


def cptp_diagnostics(superop):
    """(trace_error, min_choi_eig) of a Pauli-basis superoperator.

    trace_error is the worst trace deviation over the Pauli basis inputs;
    min_choi_eig is negative when the map fails complete positivity.
    """
    superop = np.asarray(superop)
    trace_error = 0.0
    for k, g in enumerate(PAULI_BASIS):
        tr_out = np.sqrt(2.0) * superop[0, k]
        trace_error = max(trace_error, abs(tr_out - np.trace(g).real))
    choi = choi_matrix(superop)
    choi = 0.5 * (choi + choi.conj().T)
    w, _ = eig_hermitian(choi)
    return float(trace_error), float(w[0])


def superop_trace_norm_distance(s_a, s_b):
    """max over Pauli-basis inputs of the output trace-norm difference."""
    worst = 0.0
    for g in PAULI_BASIS:
        diff = apply_superoperator(s_a, g) - apply_superoperator(s_b, g)
        w, _ = eig_hermitian(0.5 * (diff + diff.conj().T))
        worst = max(worst, float(np.abs(w).sum()))
    return worst


def closeness_bound_check(p, t_f_list, rel_tol=1e-10, abs_tol=1e-12):
    """Power-law fit of ||E - U|| against t_f (probe-set induced trace norm).

    Returns (fit, norms): the transport error should shrink like C / t_f.
    """
    from dataclasses import replace

    from .numkit import fit_power_law

    t_f_list = np.asarray(t_f_list, dtype=float)
    if t_f_list.size < 3:
        raise ValueError("need at least 3 values of t_f")
    norms = []
    for tf in t_f_list:
        q = replace(p, t_f=float(tf))
        e = exact_propagator(q, 1.0, rel_tol, abs_tol)
        u = full_intertwiner(q, 1.0, rel_tol, abs_tol)
        norms.append(superop_trace_norm_distance(e, u))
    return fit_power_law(t_f_list, np.array(norms)), np.array(norms)
