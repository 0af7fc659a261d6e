"""
Testes das ressonâncias de Poincaré e das correlações.
"""
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
    EqualPotentialsError,
    InvalidInputError,
    NoResonanceError,
    NonPositiveDroopError,
)
from src.core.norming import Mechanism
from src.core.correlation import (
    CorrelationResult,
    ResonanceQuad,
    dna_paths,
    droop_corr_f,
    droop_corr_p,
    mediant,
    mediant_bounds,
    mediant_correlation,
    potential_correlation,
    spectral_sums,
    validate_quad,
)
from src.core.resonance import PotentialPair

EPS = np.finfo(np.float64).eps


class TestValidateQuad:
    """Testes da busca de ressonâncias."""

    def test_small_integers(self):
        quad = validate_quad((1, 3, 2, 3), B=5)
        assert quad.pairs == ((3, -1), (3, -2))
        assert quad.omega == (1.0, 3.0, 2.0, 3.0)

    def test_minimal_pair(self):
        """Entre (2,-1), (4,-2), ... vence o menor n."""
        quad = validate_quad((2, 4, 2, 4), B=2)
        assert quad.pairs == ((2, -1), (2, -1))

    def test_irrational_ratio(self):
        with pytest.raises(NoResonanceError):
            validate_quad((1, math.pi, 1, 1), B=10)

    def test_bound_too_small(self):
        with pytest.raises(NoResonanceError):
            validate_quad((1, 3, 2, 3), B=2)

    def test_canonical_order(self):
        """ρ₁ > ρ₂ troca os pares."""
        quad = validate_quad((2, 3, 1, 3), B=5)
        assert quad.omega == (1.0, 3.0, 2.0, 3.0)
        assert quad.pairs == ((3, -1), (3, -2))

    @pytest.mark.parametrize("omega", [(0, 1, 1, 1), (1, -1, 1, 1), (1, 1, 1), (1, 1, 1, math.inf)])
    def test_invalid_frequencies(self, omega):
        with pytest.raises(InvalidInputError):
            validate_quad(omega)

    def test_invalid_bound(self):
        with pytest.raises(InvalidInputError):
            validate_quad((1, 1, 1, 1), B=0)

    def test_quad_rejects_wrong_pair(self):
        with pytest.raises(InvalidInputError):
            ResonanceQuad(omega=(1.0, 3.0, 2.0, 3.0), pairs=((1, -1), (3, -2)))


class TestMediant:
    """Testes da mediante ρ₃,₁."""

    def test_hand_value(self):
        quad = validate_quad((2, 7, 3, 5))
        assert mediant_correlation(quad) == pytest.approx(5 / 12)
        assert droop_corr_f(quad) == pytest.approx(5 / 3)

    def test_worked_quad(self):
        quad = validate_quad((1, 3, 2, 3))
        assert mediant_correlation(quad) == 0.5
        assert droop_corr_f(quad) == 2.0

    def test_bounds(self):
        rho1, rho31, rho2 = mediant_bounds(validate_quad((1, 3, 2, 3)))
        assert rho1 < rho31 < rho2

    def test_mediant_property_vectorized(self):
        """10⁵ quartetos: a mediante fica estritamente entre as razões."""
        rng = np.random.default_rng(11)
        a, b, c, d = rng.uniform(0.1, 10.0, size=(4, 100_000))
        low = np.minimum(a / b, c / d)
        high = np.maximum(a / b, c / d)
        distinct = (high - low) > 1e-9 * high
        value = mediant(a, b, c, d)
        assert np.all(value[distinct] > low[distinct])
        assert np.all(value[distinct] < high[distinct])

    def test_equal_ratios(self):
        """ρ₁ = ρ₂: a mediante coincide com as duas razões."""
        quad = validate_quad((1, 2, 1, 2))
        rho1, rho31, rho2 = mediant_bounds(quad)
        assert rho31 == 0.5
        assert rho1 == rho31 == rho2

    @pytest.mark.parametrize("s", [0.25, 3.7, 1e3])
    def test_scale_invariance(self, s):
        base = mediant_correlation(validate_quad((2, 7, 3, 5)))
        scaled = mediant_correlation(validate_quad((2 * s, 7 * s, 3 * s, 5 * s)))
        assert scaled == pytest.approx(base, rel=8 * EPS)

    def test_scale_invariance_vectorized(self):
        rng = np.random.default_rng(12)
        a, b, c, d = rng.uniform(0.1, 10.0, size=(4, 10_000))
        s = rng.uniform(0.01, 100.0, size=10_000)
        np.testing.assert_allclose(mediant(s * a, s * b, s * c, s * d), mediant(a, b, c, d),
                                   rtol=8 * EPS)

    @given(st.lists(st.floats(0.01, 100), min_size=4, max_size=4))
    def test_spectral_sums_agree(self, omega):
        sums = spectral_sums(omega)
        total = sum(omega)
        for value in sums:
            assert value == pytest.approx(total, rel=8 * EPS)


class TestPotentialCorrelation:
    """Testes de ρ₃,₂ e do modelo global."""

    def test_hand_value(self):
        res = potential_correlation(PotentialPair(v_in=1.0, v_out=4.0))
        assert res.rho32 == pytest.approx(1 / 3)
        assert res.v_prime == 1.5
        assert res.rho31 is None
        assert droop_corr_p(res) == pytest.approx(8 / 3)

    def test_records_mediant(self):
        quad = validate_quad((1, 3, 2, 3))
        res = potential_correlation(PotentialPair(v_in=1.0, v_out=4.0), quad)
        assert res.rho31 == 0.5

    def test_equal_potentials(self):
        with pytest.raises(EqualPotentialsError):
            potential_correlation(PotentialPair(v_in=1.0, v_out=1.0))

    def test_reversed_potentials(self):
        res = potential_correlation(PotentialPair(v_in=4.0, v_out=1.0))
        assert res.rho32 < 0
        with pytest.raises(NonPositiveDroopError):
            droop_corr_p(res)

    def test_identity_over_many_pairs(self):
        """V'·2·ρ₃,₂ = 1 em 10⁵ pares sorteados."""
        rng = np.random.default_rng(3)
        results = [
            potential_correlation(PotentialPair(v_in=v_in, v_out=v_out))
            for v_in, v_out in rng.uniform(0.01, 100.0, size=(100_000, 2)).tolist()
        ]
        v_prime = np.array([res.v_prime for res in results])
        rho32 = np.array([res.rho32 for res in results])
        assert np.max(np.abs(v_prime * 2 * rho32 - 1.0)) <= 8 * EPS

    def test_result_rejects_broken_identity(self):
        with pytest.raises(InvalidInputError):
            CorrelationResult(rho31=None, rho32=1.0, v_prime=1.0)


class TestDnaPaths:
    """Testes do caminho L_d."""

    def test_worked_paths(self):
        quad = validate_quad((1, 3, 2, 3))
        estimate, L_d = dna_paths(2.0, 2.0, quad, PotentialPair(v_in=1.0, v_out=4.0))
        assert estimate.mechanism is Mechanism.CORRELATION
        assert estimate.L_f == pytest.approx(math.log(2))
        assert estimate.L_p == pytest.approx(0.5 * (math.log(2) + math.log(8 / 3)))
        assert L_d == pytest.approx(0.808220, abs=1e-6)

    def test_potentials_one_three(self):
        """ρ₃,₂ = 1/2 normaliza para 2: L_d colapsa em ln 2."""
        quad = validate_quad((1, 3, 2, 3))
        estimate, L_d = dna_paths(2.0, 2.0, quad, PotentialPair(v_in=1.0, v_out=3.0))
        assert estimate.L_f == pytest.approx(math.log(2))
        assert estimate.L_p == pytest.approx(math.log(2))
        assert L_d == pytest.approx(math.log(2), rel=1e-12)

    def test_equal_potentials_propagate(self):
        quad = validate_quad((1, 3, 2, 3))
        with pytest.raises(EqualPotentialsError):
            dna_paths(2.0, 2.0, quad, PotentialPair(v_in=2.0, v_out=2.0))
