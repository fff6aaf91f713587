"""Damped qubit: bath function, jump operators, generator, spectrum, dynamics."""

import numpy as np
import pytest
from scipy.linalg import expm

from aia import lindblad_open as lo
from aia import intertwiner as itw
from aia.lz_closed import SwitchingTimes, lz_eigensystem

P_STD = lo.OpenParams(x=0.1, z_i=-1.0, z_f=1.0, t_f=50.0, T=0.05, g=0.01)


def test_params_validation():
    with pytest.raises(ValueError):
        lo.OpenParams(0.1, -1, 1, 10, -0.1, 0.01)
    with pytest.raises(ValueError):
        lo.OpenParams(0.1, -1, 1, 10, 0.1, -0.01)
    with pytest.raises(ValueError):
        lo.OpenParams(0.1, 1, 2, 10, 0.1, 0.01)


# ------------------------------------------------------------- bath spectral fn

def test_kms_detailed_balance():
    rng = np.random.default_rng(2)
    for _ in range(30):
        w, beta = rng.uniform(-3, 3), rng.uniform(0.5, 40)
        lhs = lo.spectral_gamma(-w, beta, 0.01)
        rhs = np.exp(-beta * w) * lo.spectral_gamma(w, beta, 0.01)
        assert abs(lhs - rhs) <= 1e-14 * max(1.0, abs(rhs))


def test_gamma_zero_frequency_limit():
    beta, g = 20.0, 0.01
    assert abs(lo.spectral_gamma(0.0, beta, g) - 2 * np.pi * g * g / beta) < 1e-18
    # continuous at zero: the genuine slope there is pi g^2
    slope = np.pi * g * g
    step = 1e-9
    assert abs(lo.spectral_gamma(step, beta, g)
               - lo.spectral_gamma(0.0, beta, g) - slope * step) < 1e-15


def test_gamma_zero_temperature_limits():
    beta, g, w = 1e4, 0.05, 2.0
    assert abs(lo.spectral_gamma(w, beta, g) - 2 * np.pi * g * g * w) < 1e-12
    assert lo.spectral_gamma(-w, beta, g) < 1e-300


# -------------------------------------------------------------- jump operators

def test_lindblad_ops_match_projector_sum_oracle():
    rng = np.random.default_rng(4)
    for _ in range(30):
        x, z = rng.uniform(0.05, 2), rng.uniform(-2, 2)
        _, lp, lm = lo.lindblad_ops(x, z)
        _, _, psi1, psi2 = lz_eigensystem(x, z)
        oracle = np.outer(psi1, psi1) @ lo.SIGMA_Y @ np.outer(psi2, psi2)
        assert np.abs(lp - oracle).max() < 1e-13
        assert np.abs(lm - oracle.conj().T).max() < 1e-13


def test_lindblad_ops_lower_within_sectors():
    _, lp, _ = lo.lindblad_ops(0.1, 0.3)
    _, _, psi1, psi2 = lz_eigensystem(0.1, 0.3)
    assert np.abs(lp @ psi1).max() < 1e-14
    residual = lp @ psi2 - np.vdot(psi1, lp @ psi2) * psi1
    assert np.abs(residual).max() < 1e-14


def test_lindblad_ops_normalization():
    _, lp, _ = lo.lindblad_ops(0.7, -0.4)
    assert abs(np.trace(lp.conj().T @ lp).real - 1.0) < 1e-13


# -------------------------------------------------------------------- generator

def _assembled_generator(x, z, beta, g):
    """Independent construction from the abstract Lindblad form."""
    ham = np.array([[z, x], [x, -z]], dtype=complex)
    _, lp, lm = lo.lindblad_ops(x, z)
    delta = 2 * np.hypot(x, z)
    pairs = ((lo.spectral_gamma(delta, beta, g), lp),
             (lo.spectral_gamma(-delta, beta, g), lm))

    def act(rho):
        out = -1j * (ham @ rho - rho @ ham)
        for gam, l in pairs:
            out += gam * (l @ rho @ l.conj().T
                          - 0.5 * (l.conj().T @ l @ rho + rho @ l.conj().T @ l))
        return out

    mat = np.zeros((4, 4))
    for k, gk in enumerate(lo.PAULI_BASIS):
        image = act(gk.astype(complex))
        for j, gj in enumerate(lo.PAULI_BASIS):
            mat[j, k] = np.trace(gj @ image).real
    return mat


def test_generator_first_row_zero():
    m = lo.liouvillian_matrix(0.1, 0.4, 20.0, 0.01)
    assert np.abs(m[0]).max() == 0.0


def test_generator_matches_assembly_oracle():
    rng = np.random.default_rng(6)
    for _ in range(15):
        x, z = rng.uniform(0.05, 1), rng.uniform(-1.5, 1.5)
        beta, g = rng.uniform(1, 30), rng.uniform(0.0, 0.2)
        got = lo.liouvillian_matrix(x, z, beta, g)
        want = _assembled_generator(x, z, beta, g)
        assert np.abs(got - want).max() < 1e-12


def test_generator_closed_limit_structure():
    m = lo.liouvillian_matrix(0.1, 0.4, 20.0, 0.0)
    assert np.abs(m[:, 0]).max() == 0.0
    block = m[1:, 1:]
    assert np.abs(block + block.T).max() < 1e-15  # pure commutator part


# --------------------------------------------------------------------- spectrum

def test_spectrum_closed_forms_at_crossing():
    spec = lo.liouvillian_spectrum(0.1, 0.0, 20.0, 0.01)
    delta = 0.2
    l2 = -2 * np.pi * 1e-4 * delta / np.tanh(0.5 * 20 * delta)
    assert abs(spec.eigenvalues[1] - l2) < 1e-12
    assert abs(spec.eigenvalues[1] + 1.30355e-4) < 5e-9  # reference value, 6 digits
    assert spec.eigenvalues[3] == np.conj(spec.eigenvalues[2])
    assert np.all(spec.eigenvalues.real <= 1e-18)
    assert spec.eigenvalues[0] == 0.0


def test_spectrum_eigen_residuals_everywhere():
    rng = np.random.default_rng(7)
    for _ in range(15):
        x = rng.uniform(0.05, 1)
        z = rng.choice([0.0, rng.uniform(-1.5, 1.5)])
        beta, g = rng.uniform(1, 30), rng.uniform(0.001, 0.2)
        m = lo.liouvillian_matrix(x, z, beta, g)
        spec = lo.liouvillian_spectrum(x, z, beta, g)
        for j in range(4):
            resid = m @ spec.right[:, j] - spec.eigenvalues[j] * spec.right[:, j]
            assert np.abs(resid).max() < 1e-11


def test_spectrum_biorthonormal_and_complete():
    for z in (0.0, -0.7, 1.2):
        spec = lo.liouvillian_spectrum(0.1, z, 20.0, 0.01)
        assert np.abs(spec.left @ spec.right - np.eye(4)).max() < 1e-12
        assert np.abs(spec.right @ spec.left - np.eye(4)).max() < 1e-11


def test_spectrum_closure_reconstructs_generator():
    for z in (0.0, 0.5, -1.0):
        m = lo.liouvillian_matrix(0.1, z, 20.0, 0.01)
        spec = lo.liouvillian_spectrum(0.1, z, 20.0, 0.01)
        recon = spec.right @ np.diag(spec.eigenvalues) @ spec.left
        assert np.abs(recon - m).max() < 1e-10


def test_spectrum_rejects_closed_gap():
    with pytest.raises(ValueError):
        lo.liouvillian_spectrum(0.0, 0.5, 20.0, 0.01)


# ----------------------------------------------------------------- steady state

def test_steady_state_values_at_crossing():
    c = lo.steady_state(0.1, 0.0, 20.0)
    assert abs(c[1] + np.tanh(2.0) / np.sqrt(2)) < 1e-12
    assert c[2] == 0.0 and abs(c[3]) < 1e-12


def test_steady_state_is_gibbs():
    rng = np.random.default_rng(9)
    for _ in range(10):
        x, z, beta = rng.uniform(0.05, 1), rng.uniform(-1, 1), rng.uniform(0.5, 40)
        rho = lo.coherence_to_density(lo.steady_state(x, z, beta))
        ham = np.array([[z, x], [x, -z]])
        gibbs = expm(-beta * ham)
        gibbs /= np.trace(gibbs)
        assert np.abs(rho - gibbs).max() < 1e-12


def test_steady_state_infinite_temperature():
    c = lo.steady_state(0.1, 0.5, 1e-12)
    assert np.abs(c[1:]).max() < 1e-9


def test_steady_state_in_kernel_on_grid():
    for z in np.linspace(-1, 1, 9):
        for temp in (0.05, 0.1, 0.5, 1.0):
            c = lo.steady_state(0.1, z, 1.0 / temp)
            m = lo.liouvillian_matrix(0.1, z, 1.0 / temp, 0.01)
            assert np.abs(m @ c).max() < 1e-12


# -------------------------------------------------------------------- evolution

def test_master_trace_conserved():
    c = lo.evolve_master(P_STD)
    assert abs(c[0] - 1 / np.sqrt(2)) < 1e-12
    assert np.abs(np.asarray(c).imag).max() == 0.0 if np.iscomplexobj(c) else True


def test_master_unitary_limit_preserves_purity():
    p = lo.OpenParams(0.1, -1, 1, 10.0, 0.05, 0.0)
    rho = lo.coherence_to_density(lo.evolve_master(p))
    assert abs(np.trace(rho @ rho).real - 1.0) < 1e-9


def test_master_positivity_along_path():
    _, mins = lo.evolve_master(P_STD, n_checks=100)
    assert mins.min() > -1e-8


def test_master_approaches_final_gibbs_slowly():
    # the distance to the final Gibbs state decreases with t_f
    d = []
    for tf in (100.0, 1000.0):
        p = lo.OpenParams(0.1, -1, 1, tf, 0.05, 0.01)
        c = lo.evolve_master(p)
        d.append(lo.trace_distance(c, lo.steady_state(p.x, p.z_f, p.beta)))
    assert d[1] < d[0]
    assert d[1] < 1e-3


# ------------------------------------------------------- adiabatic / AIA states

def test_adiabatic_open_is_final_steady_state():
    assert np.allclose(lo.adiabatic_state_open(P_STD),
                       lo.steady_state(0.1, 1.0, 20.0))


def test_adiabatic_open_unit_trace():
    assert abs(lo.adiabatic_state_open(P_STD)[0] - 1 / np.sqrt(2)) < 1e-15


def test_zero_geometric_connection_finite_differences():
    step = 1e-6
    for z in (-0.5, 0.0, 0.8):
        sp = lo.liouvillian_spectrum(0.1, z + step, 20.0, 0.01)
        sm = lo.liouvillian_spectrum(0.1, z - step, 20.0, 0.01)
        s0 = lo.liouvillian_spectrum(0.1, z, 20.0, 0.01)
        for j in range(4):
            dr = (sp.right[:, j] - sm.right[:, j]) / (2 * step)
            assert abs(np.dot(s0.left[j], dr)) < 1e-8


def test_aia_open_collapse_at_endpoint():
    st = SwitchingTimes(P_STD.t_f, P_STD.t_f, "collapsed")
    got = lo.aia_state_open(P_STD, st)
    assert np.abs(got - lo.adiabatic_state_open(P_STD)).max() < 1e-14


def test_aia_open_interior_collapse_damps_to_adiabatic():
    p = lo.OpenParams(0.1, -1, 1, 1e5, 0.5, 0.05)
    st = SwitchingTimes(3e4, 3e4, "collapsed")
    d = lo.trace_distance(lo.aia_state_open(p, st), lo.adiabatic_state_open(p))
    assert d < 1e-6


def test_aia_open_trace_row():
    st = SwitchingTimes(10.0, 30.0, "interior")
    c = lo.aia_state_open(P_STD, st)
    assert abs(c[0] - 1 / np.sqrt(2)) < 1e-12


# ----------------------------------------------------------- gap, trace distance

def test_liouvillian_gap_expansions_near_crossing():
    # the |l_2| expansion 4 pi g^2 T + (pi g^2 / 3T) Delta^2 and, once the
    # gap is far below the thermal rate, |l_3| -> 2 pi g^2 T < |l_2|
    g, temp = 0.01, 0.5
    beta = 1.0 / temp
    x = 1e-5
    delta = 2 * x  # z = 0
    s = lo.spectral_gamma(delta, beta, g) + lo.spectral_gamma(-delta, beta, g)
    assert abs(s - (4 * np.pi * g * g * temp
                    + np.pi * g * g * delta ** 2 / (3 * temp))) < 1e-12
    l3 = np.hypot(0.5 * s, delta)
    assert lo.liouvillian_gap(x, 0.0, beta, g) == pytest.approx(min(s, l3))
    assert l3 < s  # deep in the near-degenerate regime the pair sets the gap
    assert abs(l3 - 2 * np.pi * g * g * temp) < 0.02 * l3


def test_liouvillian_gap_positive_everywhere():
    for z in np.linspace(-1, 1, 21):
        assert lo.liouvillian_gap(0.1, z, 20.0, 0.01) > 0


def test_trace_distance_cases():
    up = lo.density_to_coherence(np.diag([1.0, 0.0]).astype(complex))
    down = lo.density_to_coherence(np.diag([0.0, 1.0]).astype(complex))
    mixed = lo.density_to_coherence(np.eye(2) / 2)
    assert lo.trace_distance(up, up) == 0.0
    assert abs(lo.trace_distance(up, down) - 1.0) < 1e-14
    assert abs(lo.trace_distance(up, mixed) - 0.5) < 1e-14


def test_trace_distance_cptp_contraction():
    p = lo.OpenParams(0.1, -1, 1, 40.0, 0.5, 0.1)
    prop = itw.exact_propagator(p, 1.0)
    rng = np.random.default_rng(12)
    for _ in range(10):
        # random pair of valid states via random Bloch vectors
        def rand_state():
            v = rng.standard_normal(3)
            v *= rng.uniform(0, 1) / np.linalg.norm(v)
            return np.array([1 / np.sqrt(2), v[0] / np.sqrt(2),
                             v[1] / np.sqrt(2), v[2] / np.sqrt(2)])

        ca, cb = rand_state(), rand_state()
        d_before = lo.trace_distance(ca, cb)
        d_after = lo.trace_distance(prop @ ca, prop @ cb)
        assert d_after <= d_before + 1e-9


def test_coherence_vectors_stay_real():
    c = lo.evolve_master(P_STD)
    assert not np.iscomplexobj(c)
    st = SwitchingTimes(10.0, 20.0, "interior")
    assert not np.iscomplexobj(lo.aia_state_open(P_STD, st))


# ------------------------------------------------------------------- delegation

def test_switching_times_delegate_to_closed_formulas():
    from aia import lz_closed as lz
    for scenario in (1, 2, 3, 4):
        got = lo.switching_times_open(P_STD, scenario)
        want = lz.switching_times(P_STD.lz(), scenario)
        assert (got.tau_minus, got.tau_plus, got.regime) == \
            (want.tau_minus, want.tau_plus, want.regime)


def test_optimizer_open_dominates_adiabatic():
    p = lo.OpenParams(0.1, -1, 1, 100.0, 0.05, 0.01)
    c_exact = lo.evolve_master(p)
    _, d_opt = lo.optimize_dtau_open(p, c_exact=c_exact)
    d_adi = lo.trace_distance(c_exact, lo.adiabatic_state_open(p))
    assert d_opt <= d_adi + 1e-12
