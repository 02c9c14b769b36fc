import numpy as np
import pytest

from qdimer.liouville import (
    SystemParams,
    dephasing,
    dephasing_rates,
    hamiltonian,
    rhs,
    superoperator,
)
from qdimer.states import named_state, pure_density

FREE = SystemParams(omega0=1.5e11, J=4.0e9, gamma=0.0)


def random_hermitian_unit_trace(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


# ---------------------------------------------------------------------------
# SystemParams

def test_params_validation():
    with pytest.raises(ValueError):
        SystemParams(omega0=-1.0, J=1.0, gamma=0.0)
    with pytest.raises(ValueError):
        SystemParams(omega0=1.0, J=-1.0, gamma=0.0)
    with pytest.raises(ValueError):
        SystemParams(omega0=1.0, J=1.0, gamma=-1.0)
    with pytest.raises(ValueError):
        # a drive strength without the rotating frame makes no sense here
        SystemParams(omega0=1.0, J=1.0, gamma=0.0, Omega=0.5)
    # negative detuning is legitimate (drive below the doublet)
    SystemParams(omega0=1.0, J=1.0, gamma=0.0, Omega=0.5, delta_l=-1.0, driven=True)


def test_splitting_selects_frame():
    free = SystemParams(omega0=2.0, J=1.0, gamma=0.0)
    driven = SystemParams(omega0=2.0, J=1.0, gamma=0.0, Omega=0.1, delta_l=0.5, driven=True)
    assert free.splitting() == 2.0
    assert driven.splitting() == 0.5


def test_fastest_rate():
    p = SystemParams(omega0=2.0, J=5.0, gamma=1.0, Omega=3.0, delta_l=-7.0, driven=True)
    assert p.fastest_rate() == 7.0  # |delta_l| wins


# ---------------------------------------------------------------------------
# hamiltonian

def test_hamiltonian_free_eigenstructure():
    h = hamiltonian(SystemParams(omega0=0.0, J=4.0e9, gamma=0.0))
    # delta = omega0 = 0 leaves only the exchange coupling
    vals, vecs = np.linalg.eigh(h)
    assert np.allclose(vals, [-4.0e9, 0.0, 0.0, 4.0e9])
    s, a = named_state("s"), named_state("a")
    top = vecs[:, 3]
    bottom = vecs[:, 0]
    assert abs(abs(np.vdot(top, s)) - 1.0) < 1e-12  # |s> at +J
    assert abs(abs(np.vdot(bottom, a)) - 1.0) < 1e-12  # |a> at -J


def test_hamiltonian_noninteracting_limit():
    p = SystemParams(omega0=0.0, J=0.0, gamma=0.0, Omega=0.0, delta_l=3.0e9, driven=True)
    assert np.allclose(hamiltonian(p), np.diag([-3.0e9, 0.0, 0.0, 3.0e9]))


def test_hamiltonian_drive_structure():
    p = SystemParams(omega0=0.0, J=0.0, gamma=0.0, Omega=7.0e7, delta_l=0.0, driven=True)
    h = hamiltonian(p)
    assert np.allclose(h, h.conj().T)
    for i, j in ((0, 1), (0, 2), (1, 3), (2, 3)):
        assert h[i, j] == pytest.approx(7.0e7)
    assert h[0, 3] == 0.0  # no direct two-photon matrix element
    assert h[1, 2] == 0.0


def test_hamiltonian_free_uses_omega0_on_diagonal():
    h = hamiltonian(FREE)
    assert h[0, 0] == pytest.approx(-1.5e11)
    assert h[3, 3] == pytest.approx(1.5e11)
    assert h[1, 1] == 0.0 and h[2, 2] == 0.0
    assert h[1, 2] == pytest.approx(4.0e9)


# ---------------------------------------------------------------------------
# dephasing

def test_dephasing_rates_table():
    gamma = 2.5
    rates = dephasing_rates(gamma)
    expected = gamma * np.array(
        [
            [0, 1, 1, 2],
            [1, 0, 2, 1],
            [1, 2, 0, 1],
            [2, 1, 1, 0],
        ],
        dtype=float,
    )
    assert np.allclose(rates, expected)


def test_dephasing_leaves_diagonal_alone():
    rho = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
    assert np.allclose(dephasing(rho, 3.0), 0.0)


def test_dephasing_single_and_double_flip_rates():
    gamma = 5.0
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 3] = 0.3
    rho[3, 0] = 0.3
    out = dephasing(rho, gamma)
    assert out[0, 3] == pytest.approx(-2 * gamma * 0.3)  # double flip
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 1] = 0.3
    rho[1, 0] = 0.3
    out = dephasing(rho, gamma)
    assert out[0, 1] == pytest.approx(-gamma * 0.3)  # single flip
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 2] = 0.25
    rho[2, 1] = 0.25
    out = dephasing(rho, gamma)
    assert out[1, 2] == pytest.approx(-2 * gamma * 0.25)  # double flip


# ---------------------------------------------------------------------------
# rhs examples

def test_derived_rhs_from_bare_excited():
    rho = pure_density(named_state("e1g2"))
    out = rhs("derived", rho, FREE)
    j = FREE.J
    assert out[1, 2] == pytest.approx(-1j * j)  # rho23' = -iJ(rho33 - rho22)
    assert out[1, 1] == pytest.approx(0.0, abs=1e-20)
    assert out[2, 2] == pytest.approx(0.0, abs=1e-20)


def test_derived_rhs_diagonal_fixed_point():
    p = SystemParams(omega0=1.5e11, J=0.0, gamma=2.0e6)
    rho = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
    assert np.allclose(rhs("derived", rho, p), 0.0)


def test_variant_disagreement_on_rho33():
    # the fingerprint state: only the (2,3) coherence is populated
    p = SystemParams(omega0=0.0, J=2.0, gamma=0.0)
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = 0.5
    rho[2, 2] = 0.5
    rho[1, 2] = 0.5j
    rho[2, 1] = -0.5j
    out_d = rhs("derived", rho, p)
    out_p = rhs("published", rho, p)
    j = p.J
    # rho22' agrees: -J for both
    assert out_d[1, 1] == pytest.approx(-j)
    assert out_p[1, 1] == pytest.approx(-j)
    # rho33' flips sign between variants
    assert out_d[2, 2] == pytest.approx(+j)
    assert out_p[2, 2] == pytest.approx(-j)


def test_published_closure_keeps_trace_zero():
    rng = np.random.default_rng(3)
    p = SystemParams(omega0=1.0, J=0.7, gamma=0.3, Omega=0.2, delta_l=-0.4, driven=True)
    for _ in range(20):
        rho = random_hermitian_unit_trace(rng)
        out = rhs("published", rho, p)
        assert abs(np.trace(out)) < 1e-14
        assert np.allclose(out, out.conj().T, atol=1e-14)


def test_unknown_variant_rejected():
    rho = pure_density(named_state("s"))
    with pytest.raises(ValueError):
        rhs("verbatim", rho, FREE)


# ---------------------------------------------------------------------------
# coefficient-by-coefficient variant comparison

def test_variants_differ_exactly_in_the_rho33_row():
    # generic parameter point so every term is exercised
    p = SystemParams(omega0=0.0, J=0.7, gamma=0.3, Omega=0.2, delta_l=-0.4, driven=True)
    lv_d = superoperator("derived", p)
    lv_p = superoperator("published", p)
    row33 = 2 * 4 + 2
    row44 = 3 * 4 + 3
    for row in range(16):
        if row == row33:
            # the published population row is the negated derived row: every
            # term, not just the exchange term
            assert np.allclose(lv_p[row], -lv_d[row], atol=1e-14), row
            assert np.max(np.abs(lv_d[row])) > 0
        elif row == row44:
            # closure absorbs the flip: row44_pub = row44_der + 2*row33_der
            assert np.allclose(lv_p[row], lv_d[row] + 2 * lv_d[row33], atol=1e-14)
        else:
            assert np.allclose(lv_p[row], lv_d[row], atol=1e-14), row


def test_variants_agree_at_j_zero_only_without_drive():
    # with J = 0 and no drive the discrepant row vanishes entirely
    p_free = SystemParams(omega0=1.0e3, J=0.0, gamma=0.5)
    assert np.allclose(
        superoperator("derived", p_free), superoperator("published", p_free), atol=1e-12
    )
    # but a drive keeps the flipped row alive even at J = 0
    p_drive = SystemParams(omega0=0.0, J=0.0, gamma=0.0, Omega=0.2, delta_l=0.0, driven=True)
    diff = superoperator("published", p_drive) - superoperator("derived", p_drive)
    assert np.max(np.abs(diff)) > 0.1


def test_published_without_closure_propagates_population_row():
    p = SystemParams(omega0=0.0, J=0.7, gamma=0.0)
    lv_closed = superoperator("published", p, closure=True)
    lv_raw = superoperator("published", p, closure=False)
    row44 = 3 * 4 + 3
    # raw variant transcribes rho44' from the commutator (a derived row),
    # closed variant forces rho44' = -(rho11' + rho22' + rho33')
    assert not np.allclose(lv_closed[row44], lv_raw[row44])
    for row in range(16):
        if row != row44:
            assert np.array_equal(lv_closed[row], lv_raw[row])


# ---------------------------------------------------------------------------
# invariants

def test_derived_rhs_traceless_and_hermiticity_preserving():
    rng = np.random.default_rng(11)
    p = SystemParams(omega0=1.3, J=0.9, gamma=0.2, Omega=0.4, delta_l=0.6, driven=True)
    for _ in range(50):
        rho = random_hermitian_unit_trace(rng)
        out = rhs("derived", rho, p)
        assert abs(np.trace(out)) < 1e-14
        assert np.max(np.abs(out - out.conj().T)) < 1e-14


def test_derived_purity_conserved_without_dephasing():
    rng = np.random.default_rng(13)
    p = SystemParams(omega0=1.1, J=0.8, gamma=0.0, Omega=0.3, delta_l=0.2, driven=True)
    for _ in range(20):
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        rho = np.outer(psi, psi.conj())
        out = rhs("derived", rho, p)
        dpurity = 2.0 * np.trace(rho @ out).real
        assert abs(dpurity) < 1e-12


def test_superoperator_matches_rhs_elementwise():
    rng = np.random.default_rng(17)
    p = SystemParams(omega0=0.9, J=0.5, gamma=0.1, Omega=0.2, delta_l=-0.3, driven=True)
    for variant in ("derived", "published"):
        lv = superoperator(variant, p)
        rho = random_hermitian_unit_trace(rng)
        direct = rhs(variant, rho, p)
        via_matrix = (lv @ rho.reshape(16)).reshape(4, 4)
        assert np.allclose(direct, via_matrix, atol=1e-13)
