"""
Testes dos invariantes de Weierstrass e dos droops de ressonância.
"""
import cmath
import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

# Adicionar src ao path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from src.core.exceptions import (
    DegenerateLatticeError,
    InvalidInputError,
    NonPositiveDroopError,
    ZeroDiscriminantError,
    ZeroVerticalSpeedError,
)
from src.core.norming import Mechanism
from src.core.resonance import (
    PotentialPair,
    WeierstrassLattice,
    WingTrace,
    droop_resonance_f,
    droop_resonance_p,
    invariants_latticesum,
    invariants_qseries,
    molecule_paths,
    molecule_potentials,
    proper_time_sq,
    reduce_basis,
)

HEXAGONAL = cmath.exp(1j * math.pi / 3)


def unit_discriminant_lattice() -> WeierstrassLattice:
    """Reticulado quadrado reescalado para |Δ| = 1."""
    s = abs(invariants_qseries(1, 1j).disc) ** (1.0 / 12.0)
    return invariants_qseries(s, s * 1j)


class TestQSeries:
    """Testes de invariants_qseries."""

    def test_square_lattice(self):
        lat = invariants_qseries(1, 1j)
        assert abs(lat.g3) < 1e-8
        assert abs(lat.g2) > 1.0

    def test_hexagonal_lattice(self):
        lat = invariants_qseries(1, HEXAGONAL)
        assert abs(lat.g2) < 1e-8
        assert abs(lat.g3) > 0.1

    def test_orientation_swap(self):
        """Im τ < 0 troca os períodos; o reticulado não muda."""
        lat = invariants_qseries(1j, 1)
        assert lat.tau.imag > 0
        reference = invariants_qseries(1, 1j)
        assert lat.g2 == pytest.approx(reference.g2, rel=1e-12)

    @pytest.mark.parametrize("omega2", [2.0, -3.0, 1e-14j + 1.0])
    def test_degenerate_lattice(self, omega2):
        with pytest.raises(DegenerateLatticeError):
            invariants_qseries(1, omega2)

    def test_zero_period(self):
        with pytest.raises(DegenerateLatticeError):
            invariants_qseries(0, 1j)

    def test_discriminant_definition(self):
        lat = invariants_qseries(1, 0.3 + 1.7j)
        disc = lat.g2 ** 3 - 27 * lat.g3 ** 2
        assert abs(lat.disc - disc) <= 8 * np.finfo(float).eps * abs(disc)

    @pytest.mark.parametrize("s", [0.5, 2.0, 3.0])
    def test_homogeneity(self, s):
        """Δ escala com s⁻¹²."""
        omega1, omega2 = 1.0, 0.2 + 1.3j
        base = invariants_qseries(omega1, omega2)
        scaled = invariants_qseries(s * omega1, s * omega2)
        assert abs(scaled.g2 - base.g2 * s ** -4) <= 1e-9 * abs(base.g2 * s ** -4)
        assert abs(scaled.disc - base.disc * s ** -12) <= 1e-9 * abs(base.disc * s ** -12)

    def test_reduced_basis_same_invariants(self):
        """Uma base não reduzida gera os mesmos invariantes."""
        reduced = invariants_qseries(1, 1j)
        skewed = invariants_qseries(1, 3 + 1j)
        assert skewed.g2 == pytest.approx(reduced.g2, rel=1e-10)
        assert abs(skewed.g3) < 1e-8

    def test_reduce_basis_fundamental_domain(self):
        w1, w2 = reduce_basis(1, 3.4 + 0.2j)
        tau = w2 / w1
        assert abs(tau.real) <= 0.5 + 1e-12
        assert abs(tau) >= 1 - 1e-12
        assert tau.imag > 0

    @pytest.mark.parametrize("omega2", [7 + 0.01j, -3.3 + 0.2j, 0.49 + 0.87j, 1e-3 + 40j])
    def test_reduced_nome_bound(self, omega2):
        """Após a redução |q| ≤ e^{-π√3/2}: a série sempre converge."""
        w1, w2 = reduce_basis(1, omega2)
        q = cmath.exp(1j * math.pi * (w2 / w1))
        assert abs(q) <= math.exp(-math.pi * math.sqrt(3) / 2) * (1 + 1e-12)
        assert np.isfinite(abs(invariants_qseries(1, omega2).disc))


class TestLatticeSum:
    """Testes da soma direta no reticulado."""

    def test_square_symmetry(self):
        lat = invariants_latticesum(1, 1j, M=60)
        assert abs(lat.g3) < 1e-4

    def test_hexagonal_symmetry(self):
        lat = invariants_latticesum(1, HEXAGONAL, M=60)
        assert abs(lat.g2) < 1e-4

    def test_truncation_consistency(self):
        coarse = invariants_latticesum(1, 2j, M=100)
        fine = invariants_latticesum(1, 2j, M=200)
        assert abs(coarse.g2 - fine.g2) < 1e-4 * abs(fine.g2)

    def test_small_radius_rejected(self):
        with pytest.raises(InvalidInputError):
            invariants_latticesum(1, 1j, M=5)

    def test_matches_qseries_rectangular(self):
        q = invariants_qseries(1, 2j)
        direct = invariants_latticesum(1, 2j, M=100)
        assert abs(q.g2 - direct.g2) <= 1e-4 * abs(q.g2)

    def test_cross_validation(self):
        """Série q e soma direta concordam em 10 reticulados sorteados."""
        rng = np.random.default_rng(7)
        for _ in range(10):
            tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 3.0))
            omega1 = cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(0, 2 * math.pi))
            q = invariants_qseries(omega1, omega1 * tau)
            direct = invariants_latticesum(omega1, omega1 * tau, M=100)
            scale = math.hypot(abs(q.g2), abs(q.g3))
            error = math.hypot(abs(q.g2 - direct.g2), abs(q.g3 - direct.g3))
            assert error <= 1e-4 * scale


class TestDroopResonanceF:
    """Testes do droop de frequência por ressonância."""

    def test_unit_discriminant(self):
        lat = WeierstrassLattice(omega1=1, omega2=1j, g2=1.0, g3=0.0)
        k, v_in = droop_resonance_f(lat)
        assert v_in == 1.0
        assert k == 2.0

    def test_power_of_two_discriminant(self):
        lat = WeierstrassLattice(omega1=1, omega2=1j, g2=16.0, g3=0.0)
        k, v_in = droop_resonance_f(lat)
        assert v_in == pytest.approx(0.5)
        assert k == pytest.approx(2.0)

    def test_zero_discriminant(self):
        lat = WeierstrassLattice(omega1=1, omega2=1j, g2=3.0, g3=1.0)
        with pytest.raises(ZeroDiscriminantError):
            droop_resonance_f(lat)

    def test_rescaled_unit_lattice(self):
        k, v_in = droop_resonance_f(unit_discriminant_lattice())
        assert v_in == pytest.approx(1.0, rel=1e-12)
        assert k == pytest.approx(2.0, rel=1e-12)

    @pytest.mark.parametrize("power", [-2, -1, 1, 3])
    def test_power_of_two_rescaling_invariance(self, power):
        base, _ = droop_resonance_f(invariants_qseries(1, 0.1 + 1.2j))
        scaled, _ = droop_resonance_f(invariants_qseries(2.0 ** power, 2.0 ** power * (0.1 + 1.2j)))
        assert scaled == pytest.approx(base, rel=1e-12)


class TestProperTime:
    """Testes do tempo próprio da asa."""

    def test_still_wing(self):
        assert proper_time_sq(WingTrace(u=np.zeros(4), v=np.ones(4))) == 4.0

    def test_light_like(self):
        assert proper_time_sq(WingTrace(u=[1.0, 2.0], v=[1.0, 2.0])) == 0.0

    def test_hand_value(self):
        assert proper_time_sq(WingTrace(u=[1.0, 2.0], v=[2.0, 2.0])) == pytest.approx(0.75)

    def test_zero_vertical_speed(self):
        with pytest.raises(ZeroVerticalSpeedError) as exc:
            proper_time_sq(WingTrace(u=[1.0, 1.0, 1.0], v=[1.0, 0.0, 2.0]))
        assert exc.value.context["step"] == 2

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            WingTrace(u=[1.0], v=[1.0, 2.0])

    @given(st.lists(st.tuples(st.floats(-10, 10), st.floats(0.1, 10)), min_size=1, max_size=20))
    def test_sign_flip_invariance(self, pairs):
        u = np.array([p[0] for p in pairs])
        v = np.array([p[1] for p in pairs])
        assert proper_time_sq(WingTrace(u=-u, v=-v)) == proper_time_sq(WingTrace(u=u, v=v))


class TestDroopResonanceP:
    """Testes do droop de potência por ressonância."""

    def test_four(self):
        assert droop_resonance_p(4.0) == (2.0, 4.0)

    def test_pi(self):
        assert droop_resonance_p(math.pi) == (math.pi, math.pi)

    @pytest.mark.parametrize("dtau2", [0.0, -1.5])
    def test_non_positive(self, dtau2):
        with pytest.raises(NonPositiveDroopError):
            droop_resonance_p(dtau2)


class TestMolecule:
    """Testes dos potenciais e do caminho L_m."""

    def test_potentials(self):
        pot = molecule_potentials(unit_discriminant_lattice(), WingTrace(u=np.zeros(4), v=np.ones(4)))
        assert pot.v_in == pytest.approx(1.0)
        assert pot.v_out == 4.0

    def test_potential_pair_positive(self):
        with pytest.raises(InvalidInputError):
            PotentialPair(v_in=0.0, v_out=1.0)

    def test_worked_paths(self):
        estimate, L_m = molecule_paths(
            2.0, 2.0, unit_discriminant_lattice(), WingTrace(u=np.zeros(4), v=np.ones(4))
        )
        assert estimate.mechanism is Mechanism.RESONANCE
        assert estimate.L_f == pytest.approx(math.log(2))
        assert estimate.L_p == pytest.approx(math.log(2))
        assert L_m == pytest.approx(math.sqrt(2) * math.log(2))
        assert L_m == pytest.approx(0.9803, abs=1e-4)
