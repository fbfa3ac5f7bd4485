"""Model catalog: validation, spectra, parameter maps, bound states."""

import math

import numpy as np
import pytest

from diracsolve import (
    Coulomb,
    Eckart,
    Morse,
    NoBoundStateError,
    Oscillator,
    QuantumNumbers,
    RosenMorse,
    ValidationError,
    bound_state,
    closed_form_epsilon,
    nonrelativistic_energy,
    parameter_map,
    pin_physical,
    spectral_residual,
    validate,
)
from diracsolve import models
from diracsolve.oracle import count_nodes


# --------------------------------------------------------------------------
# Validation


def test_validate_accepts_oscillator():
    spec = Oscillator(m=1.0, a=0.5)
    assert validate(spec) is spec


def test_validate_rejects_morse_with_weak_scalar_well():
    with pytest.raises(ValidationError, match="A\\^2 > C\\^2"):
        validate(Morse(m=1.0, A=1.0, C=2.0, B=0.5, a=0.4))


def test_validate_rejects_negative_coulomb_strength():
    with pytest.raises(ValidationError):
        validate(Coulomb(m=1.0, b=-0.1))


def test_validate_rejects_double_parametrization():
    with pytest.raises(ValidationError):
        validate(Oscillator(m=1.0, a=0.5, omega=2.0))
    with pytest.raises(ValidationError):
        validate(Coulomb(m=1.0))


def test_validate_rejects_nonpositive_mass():
    with pytest.raises(ValidationError):
        validate(Oscillator(m=0.0, a=0.5))


# --------------------------------------------------------------------------
# Closed-form spectra


def test_coulomb_closed_form_and_consistency():
    spec = Coulomb(m=1.0, b=0.5)
    qn = QuantumNumbers.spin_up(0, 0)
    eps = closed_form_epsilon(spec, qn)
    assert eps == pytest.approx(0.6, rel=1e-14)
    # Substitution back: e2 = 2 b (m + eps) and eps^2 = m^2 - e2^2/4.
    e2 = parameter_map(spec, eps, qn)["e2"]
    assert e2 == pytest.approx(1.6, rel=1e-14)
    assert eps**2 == pytest.approx(1.0 - e2**2 / 4.0, rel=1e-14)


def test_coulomb_next_level():
    spec = Coulomb(m=1.0, b=0.5)
    eps = closed_form_epsilon(spec, QuantumNumbers.spin_up(1, 0))
    assert eps == pytest.approx(1.0 * (4 - 0.25) / (4 + 0.25), rel=1e-14)


def test_coulomb_free_particle_limit():
    spec = Coulomb(m=1.0, b=1e-10)
    eps = closed_form_epsilon(spec, QuantumNumbers.spin_up(0, 0))
    assert abs(eps - 1.0) < 1e-19


def test_oscillator_mapped_strength_direct():
    eps = closed_form_epsilon(Oscillator(m=1.0, omega=2.0), QuantumNumbers.spin_up(0, 0))
    assert eps == pytest.approx(2.0, rel=1e-14)  # eps^2 = 1 + (3/2)*2 = 4


def test_morse_root_finding():
    spec = Morse(m=1.0, A=2.0, C=1.0, B=0.5, a=0.4)
    qn = QuantumNumbers.spin_up(0, 0)
    eps = closed_form_epsilon(spec, qn)
    alpha = parameter_map(spec, eps, qn)["alpha"]
    # Defining relation holds at the root.
    assert eps**2 == pytest.approx(1.0 + 0.25 - 0.4**2 * alpha**2 / 4.0, rel=1e-12)
    assert alpha > 0.0
    assert 0.0 < eps < math.sqrt(1.0 + 0.25)


def test_oscillator_dual_parametrization_roundtrip():
    spec_w = Oscillator(m=1.0, omega=2.0)
    for n, l in ((0, 0), (1, 1), (2, 0)):
        qn = QuantumNumbers.spin_up(n, l)
        eps_w = closed_form_epsilon(spec_w, qn)
        a = 2.0**2 / (8.0 * (1.0 + eps_w))
        eps_a = closed_form_epsilon(Oscillator(m=1.0, a=a), qn)
        assert abs(eps_a - eps_w) <= 1e-8 * eps_w


def test_oscillator_zero_coupling_fixed_point():
    eps = closed_form_epsilon(Oscillator(m=1.0, a=0.0), QuantumNumbers.spin_up(0, 0))
    assert eps == 1.0


def test_pin_physical_roundtrip():
    qn = QuantumNumbers.spin_up(1, 0)
    pinned = pin_physical(Oscillator(m=1.0, omega=2.0), qn)
    assert pinned.a is not None
    assert closed_form_epsilon(pinned, qn) == pytest.approx(
        closed_form_epsilon(Oscillator(m=1.0, omega=2.0), qn), rel=1e-12
    )
    pinned_c = pin_physical(Coulomb(m=1.0, e2=1.6), QuantumNumbers.spin_up(0, 0))
    assert pinned_c.b == pytest.approx(0.5, rel=1e-12)


def test_spin_down_branch_rejected():
    with pytest.raises(ValidationError):
        closed_form_epsilon(Oscillator(m=1.0, omega=2.0), QuantumNumbers.spin_down(0, 1))


def test_nonzero_l_rejected_for_root_found_models():
    with pytest.raises(ValidationError):
        closed_form_epsilon(models.DEFAULT_SPECS["morse"], QuantumNumbers.spin_up(0, 1))


# --------------------------------------------------------------------------
# Parameter maps


def test_oscillator_strength_map():
    # omega = sqrt(8 a (m + eps)) inverts a = omega^2 / (8 (m + eps)).
    omega = parameter_map(Oscillator(m=1.0, a=0.5), 2.0, QuantumNumbers.spin_up(0, 0))["omega"]
    assert omega == pytest.approx(math.sqrt(12.0), rel=1e-14)


def test_coulomb_strength_map():
    e2 = parameter_map(Coulomb(m=1.0, b=0.5), 0.6, QuantumNumbers.spin_up(0, 0))["e2"]
    assert e2 == pytest.approx(1.6, rel=1e-14)


def test_polynomial_parameter_maps():
    qn = QuantumNumbers.spin_up(0, 1)
    assert parameter_map(Coulomb(m=1.0, b=0.5), 0.6, qn)["alpha"] == 3  # 2l + 1
    assert parameter_map(Oscillator(m=1.0, omega=2.0), 2.0, qn)["alpha"] == 1.5  # l + 1/2


def test_tanh_well_map_consistency():
    spec = models.DEFAULT_SPECS["rosen-morse"]
    qn = QuantumNumbers.spin_up(0, 0)
    eps = closed_form_epsilon(spec, qn)
    p = parameter_map(spec, eps, qn)
    c = 2.0 * (spec.m + eps)
    assert p["gamma"] * (p["gamma"] + 1.0) == pytest.approx(c * spec.A**2 / spec.a**2, rel=1e-12)
    assert p["lam"] == pytest.approx(c * spec.A * spec.B / spec.a**2, rel=1e-12)
    assert p["alpha"] + p["beta"] == pytest.approx(2.0 * (p["gamma"] - qn.n), rel=1e-12)


def test_coth_well_map_consistency():
    spec = models.DEFAULT_SPECS["eckart"]
    qn = QuantumNumbers.spin_up(1, 0)
    eps = closed_form_epsilon(spec, qn)
    p = parameter_map(spec, eps, qn)
    c = 2.0 * (spec.m + eps)
    assert p["gamma"] * (p["gamma"] - 1.0) == pytest.approx(c * spec.A**2 / spec.a**2, rel=1e-12)
    assert p["alpha"] > 0.0 and p["beta"] < -1.0
    assert p["lam"] > (p["gamma"] + qn.n) ** 2  # binding condition


# --------------------------------------------------------------------------
# Spectral-relation residual invariant


@pytest.mark.parametrize("kind", ["oscillator", "coulomb", "morse", "rosen-morse", "eckart"])
def test_spectral_residual_invariant(kind):
    spec = models.DEFAULT_SPECS[kind]
    n_l = [(n, l) for n in (0, 1, 2) for l in (0, 1)] if kind in ("oscillator", "coulomb") else [(0, 0), (1, 0)]
    for n, l in n_l:
        qn = QuantumNumbers.spin_up(n, l)
        eps = closed_form_epsilon(spec, qn)
        assert spectral_residual(spec, qn, eps) <= 1e-10


def test_spectral_residual_physical_strength_paths():
    for spec in (Oscillator(m=1.0, a=0.35), Coulomb(m=1.0, b=0.2)):
        qn = QuantumNumbers.spin_up(2, 1)
        eps = closed_form_epsilon(spec, qn)
        assert spectral_residual(spec, qn, eps) <= 1e-10


# --------------------------------------------------------------------------
# Bound states and node structure


def test_oscillator_ground_state_nodeless():
    st = bound_state(Oscillator(m=1.0, omega=2.0), QuantumNumbers.spin_up(0, 0))
    assert count_nodes(st.G) == 0
    assert np.trapezoid(st.G**2, st.r) == pytest.approx(1.0, rel=1e-12)


def test_oscillator_excited_state_nodes():
    st = bound_state(Oscillator(m=1.0, omega=2.0), QuantumNumbers.spin_up(2, 0))
    assert count_nodes(st.G) == 2


def test_node_counts_match_radial_index():
    cases = (
        [(Oscillator(m=1.0, omega=1.0), n, l) for n in (0, 1, 2) for l in (0, 1)]
        + [(Coulomb(m=1.0, b=0.2), n, l) for n in (0, 1, 2) for l in (0, 1)]
        + [(models.DEFAULT_SPECS[k], n, 0) for k in ("morse", "rosen-morse", "eckart") for n in (0, 1)]
    )
    for spec, n, l in cases:
        st = bound_state(spec, QuantumNumbers.spin_up(n, l))
        assert count_nodes(st.G) == n, (spec.kind, n, l)


def test_coulomb_centrifugal_suppression_at_origin():
    # l = 1 state vanishes as r^2: the log-log slope near the origin is 1+l.
    st = bound_state(Coulomb(m=1.0, b=0.5), QuantumNumbers.spin_up(0, 1))
    r = np.array([1e-3, 2e-3])
    eps = st.eps
    fam, poly, weight = models.family_data(st.spec, eps, st.qn)
    from diracsolve import assemble_wavefunction, prefactor

    G = assemble_wavefunction(prefactor(fam), poly, 0, fam, weight)
    slope = math.log(G(r[1]) / G(r[0])) / math.log(r[1] / r[0])
    assert slope == pytest.approx(2.0, abs=1e-3)


def test_half_line_grid_positivity_enforced():
    from diracsolve import GridSpec

    with pytest.raises(ValidationError):
        bound_state(Coulomb(m=1.0, b=0.5), QuantumNumbers.spin_up(0, 0), GridSpec(-1.0, 10.0, 500))


# --------------------------------------------------------------------------
# Non-relativistic limit


def test_oscillator_nonrelativistic_energy():
    assert nonrelativistic_energy(
        Oscillator(m=1.0, omega=1.0), QuantumNumbers.spin_up(0, 0)
    ) == pytest.approx(1.5, rel=1e-14)


def test_coulomb_nonrelativistic_energy():
    # e2 = 1 gives -1/4 at the bottom of the series.
    assert nonrelativistic_energy(
        Coulomb(m=1.0, e2=1.0), QuantumNumbers.spin_up(0, 0)
    ) == pytest.approx(-0.25, rel=1e-14)


def test_coulomb_series_monotone_to_zero():
    spec = Coulomb(m=1.0, e2=1.0)
    values = [
        nonrelativistic_energy(spec, QuantumNumbers.spin_up(n, 0)) for n in range(40)
    ]
    assert all(v < 0 for v in values)
    assert all(b > a for a, b in zip(values, values[1:]))
    assert values[-1] == pytest.approx(0.0, abs=1e-3)


def test_nonrelativistic_energy_unsupported_model():
    with pytest.raises(ValidationError):
        nonrelativistic_energy(models.DEFAULT_SPECS["morse"], QuantumNumbers.spin_up(0, 0))


def test_nonrelativistic_identity_with_total_energy():
    # E = eps^2 - m^2 equals the mapped-strength formula to 1e-12.
    for spec in (Oscillator(m=1.0, omega=2.0), Oscillator(m=1.0, a=0.5),
                 Coulomb(m=1.0, b=0.5), Coulomb(m=1.0, e2=1.0)):
        for n, l in ((0, 0), (1, 0), (2, 1)):
            qn = QuantumNumbers.spin_up(n, l)
            eps = closed_form_epsilon(spec, qn)
            E = eps * eps - spec.m**2
            assert nonrelativistic_energy(spec, qn) == pytest.approx(E, rel=1e-12, abs=1e-12)


# --------------------------------------------------------------------------
# Ordering and degeneracy


def test_epsilon_increasing_in_n():
    for spec in (Oscillator(m=1.0, omega=2.0), Oscillator(m=1.0, a=0.5),
                 Coulomb(m=1.0, b=0.5), Coulomb(m=1.0, e2=1.0)):
        for l in (0, 1):
            eps = [
                closed_form_epsilon(spec, QuantumNumbers.spin_up(n, l)) for n in range(5)
            ]
            assert all(b > a for a, b in zip(eps, eps[1:])), spec.kind
    # Coulomb approaches m from below.
    tail = closed_form_epsilon(Coulomb(m=1.0, b=0.5), QuantumNumbers.spin_up(40, 0))
    assert 0.999 < tail < 1.0


def test_oscillator_degeneracy_in_2n_plus_l():
    for spec in (Oscillator(m=1.0, omega=2.0), Oscillator(m=1.0, a=0.5)):
        groups = {}
        for n in range(4):
            for l in range(5):
                key = 2 * n + l
                groups.setdefault(key, []).append(
                    closed_form_epsilon(spec, QuantumNumbers.spin_up(n, l))
                )
        for key, eps_list in groups.items():
            ref = eps_list[0]
            for e in eps_list[1:]:
                assert abs(e - ref) <= 1e-10 * ref


# --------------------------------------------------------------------------
# No-bound-state behavior


def test_coulomb_overcritical_strength():
    with pytest.raises(NoBoundStateError):
        closed_form_epsilon(Coulomb(m=1.0, b=1.2), QuantumNumbers.spin_up(0, 0))
    with pytest.raises(NoBoundStateError):
        closed_form_epsilon(Coulomb(m=1.0, e2=2.5), QuantumNumbers.spin_up(0, 0))


def test_morse_state_dissolves_into_continuum():
    with pytest.raises(NoBoundStateError):
        closed_form_epsilon(models.DEFAULT_SPECS["morse"], QuantumNumbers.spin_up(5, 0))


def test_tanh_well_finite_spectrum():
    with pytest.raises(NoBoundStateError):
        closed_form_epsilon(models.DEFAULT_SPECS["rosen-morse"], QuantumNumbers.spin_up(4, 0))


def test_coth_well_finite_spectrum():
    with pytest.raises(NoBoundStateError):
        closed_form_epsilon(models.DEFAULT_SPECS["eckart"], QuantumNumbers.spin_up(8, 0))
