"""Register algebra: tensor, partial trace, Kraus application, X extraction."""

import numpy as np
import pytest

from gtnsim import (
    DensityMatrix,
    DomainError,
    KrausSet,
    LabelCollision,
    LabelError,
    NotXForm,
    PureState,
    XState,
    apply_single_qubit_kraus,
    as_x_state,
    partial_trace,
    permute_modes,
    tensor,
)
from gtnsim.noise import GadParams, gad_kraus

from conftest import random_density_matrix

KET0 = PureState([1, 0], ("A",))
KET1 = PureState([0, 1], ("A",))


def ghz_matrix():
    vec = np.zeros(8)
    vec[0] = vec[7] = 1 / np.sqrt(2)
    return DensityMatrix(np.outer(vec, vec), ("A", "B1", "C1"))


class TestConstruction:
    def test_pure_state_requires_normalization(self):
        with pytest.raises(DomainError):
            PureState([1.0, 1.0], ("A",))

    def test_density_requires_hermitian(self):
        with pytest.raises(DomainError):
            DensityMatrix([[0.5, 0.5], [0.0, 0.5]], ("A",))

    def test_density_requires_positive(self):
        with pytest.raises(DomainError):
            DensityMatrix([[1.0, 0.0], [0.0, -1e-6]], ("A",), normalized=False)

    def test_density_trace_checked_when_normalized(self):
        with pytest.raises(DomainError):
            DensityMatrix(np.eye(2), ("A",))
        DensityMatrix(np.eye(2), ("A",), normalized=False)  # fine unnormalized

    def test_unknown_label_rejected(self):
        with pytest.raises(LabelError):
            PureState([1, 0], ("Q",))

    def test_values_immutable(self):
        psi = PureState([1, 0], ("A",))
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 0.0


class TestTensor:
    def test_zero_zero(self):
        out = tensor(KET0, PureState([1, 0], ("B1",)))
        np.testing.assert_array_equal(out.amplitudes, [1, 0, 0, 0])
        assert out.labels == ("A", "B1")

    def test_plus_times_one(self):
        plus = PureState([1 / np.sqrt(2), 1 / np.sqrt(2)], ("A",))
        out = tensor(plus, PureState([0, 1], ("B1",)))
        np.testing.assert_allclose(out.amplitudes, np.array([0, 1, 0, 1]) / np.sqrt(2))

    def test_maximally_mixed_product(self):
        half = DensityMatrix(np.eye(2) / 2, ("A",))
        quarter = tensor(half, DensityMatrix(np.eye(2) / 2, ("B1",)))
        np.testing.assert_allclose(quarter.entries, np.eye(4) / 4)

    def test_label_collision(self):
        with pytest.raises(LabelCollision):
            tensor(KET0, KET1)

    def test_associative(self, rng):
        states = []
        for lab in ("A", "B1", "C1"):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            states.append(PureState(v / np.linalg.norm(v), (lab,)))
        a, b, c = states
        left = tensor(tensor(a, b), c)
        right = tensor(a, tensor(b, c))
        np.testing.assert_allclose(left.amplitudes, right.amplitudes, atol=1e-14)


class TestPartialTrace:
    def test_product_state(self):
        rho = tensor(KET0.density(), PureState([1, 0], ("B1",)).density())
        out = partial_trace(rho, {"A"})
        np.testing.assert_allclose(out.entries, [[1, 0], [0, 0]])
        assert out.labels == ("A",)

    def test_bell_state_reduces_to_mixed(self):
        bell = PureState(np.array([1, 0, 0, 1]) / np.sqrt(2), ("A", "B1"))
        out = partial_trace(bell.density(), {"A"})
        np.testing.assert_allclose(out.entries, np.eye(2) / 2, atol=1e-15)

    def test_keep_must_be_subset(self):
        with pytest.raises(LabelError):
            partial_trace(KET0.density(), {"B1"})
        with pytest.raises(LabelError):
            partial_trace(KET0.density(), set())

    def test_trace_of_product_recovers_factor(self, rng):
        for _ in range(20):
            a = random_density_matrix(rng, 2, ("A", "B1"))
            b = random_density_matrix(rng, 1, ("C1",))
            combined = tensor(a, b)
            back = partial_trace(combined, {"A", "B1"})
            np.testing.assert_allclose(back.entries, a.entries, atol=1e-12)
            assert abs(back.trace() - 1.0) < 1e-12

    def test_trace_preserved_and_positive(self, rng):
        rho = random_density_matrix(rng, 3, ("A", "B1", "C1"))
        out = partial_trace(rho, {"B1"})
        assert abs(out.trace() - 1.0) < 1e-12  # positivity checked on construction


class TestPermute:
    def test_permutation_roundtrip(self, rng):
        rho = random_density_matrix(rng, 3, ("A", "B1", "C1"))
        swapped = permute_modes(rho, ("C1", "A", "B1"))
        back = permute_modes(swapped, ("A", "B1", "C1"))
        np.testing.assert_array_equal(back.entries, rho.entries)

    def test_permutation_moves_population(self):
        rho = tensor(KET0.density(), PureState([0, 1], ("B1",)).density())
        swapped = permute_modes(rho, ("B1", "A"))
        # |01> on (A,B1) becomes |10> on (B1,A)
        assert swapped.entries[2, 2] == pytest.approx(1.0)


class TestKraus:
    def test_identity_set_is_noop(self, rng):
        rho = random_density_matrix(rng, 2, ("A", "B1"))
        ident = KrausSet(ops=(np.eye(2),), trace_preserving=True)
        out = apply_single_qubit_kraus(rho, ident, "B1")
        np.testing.assert_allclose(out.entries, rho.entries, atol=1e-15)

    def test_full_relaxation_reaches_ground(self, rng):
        rho = random_density_matrix(rng, 1, ("A",))
        out = apply_single_qubit_kraus(rho, gad_kraus(GadParams(r=1.0, p=1.0)), "A")
        np.testing.assert_allclose(out.entries, [[1, 0], [0, 0]], atol=1e-12)

    def test_population_transfer(self):
        rho = KET1.density()
        out = apply_single_qubit_kraus(rho, gad_kraus(GadParams(r=0.4, p=1.0)), "A")
        np.testing.assert_allclose(out.entries, np.diag([0.4, 0.6]), atol=1e-15)

    def test_unknown_target(self, rng):
        rho = random_density_matrix(rng, 1, ("A",))
        with pytest.raises(LabelError):
            apply_single_qubit_kraus(rho, gad_kraus(GadParams(r=0.1)), "B2")

    def test_trace_and_positivity_preserved(self, rng):
        for _ in range(100):
            rho = random_density_matrix(rng, 2, ("A", "B1"))
            g = GadParams(r=rng.uniform(), p=rng.uniform())
            out = apply_single_qubit_kraus(rho, gad_kraus(g), "A")
            assert abs(out.trace() - 1.0) < 1e-12
            assert out.normalized  # PSD enforced by the constructor

    def test_non_trace_preserving_flagged(self, rng):
        rho = random_density_matrix(rng, 1, ("A",))
        half = KrausSet(ops=(np.eye(2) / 2,), trace_preserving=False)
        out = apply_single_qubit_kraus(rho, half, "A")
        assert not out.normalized


class TestXStateExtraction:
    def test_ground_projector(self):
        mat = np.zeros((8, 8))
        mat[0, 0] = 1.0
        x = as_x_state(DensityMatrix(mat, ("A", "B1", "C1")))
        assert x.mu == (1.0, 0.0, 0.0, 0.0)
        assert x.nu == (0.0, 0.0, 0.0, 0.0)

    def test_ghz(self):
        x = as_x_state(ghz_matrix())
        assert x.mu[0] == pytest.approx(0.5)
        assert x.nu[0] == pytest.approx(0.5)
        assert x.w[0] == pytest.approx(0.5)
        assert x.w[1] == x.w[2] == x.w[3] == 0.0

    def test_pipeline_accessible_state_is_x_form(self):
        from gtnsim import ModelParams, evolve_model, reduce

        mp = ModelParams(alpha=np.sqrt(0.5), omega_k=1.0, T=1.0, r=0.4, p=1.0, f=None)
        rho5, _ = evolve_model(mp)
        x = as_x_state(reduce(rho5, "AB1C1"), tol=1e-12)
        assert sum(x.mu) + sum(x.nu) == pytest.approx(1.0, abs=1e-12)

    def test_off_pattern_entry_reported(self):
        mat = np.zeros((8, 8))
        mat[0, 0] = 0.4
        mat[3, 3] = mat[7, 7] = 0.3
        mat[0, 3] = mat[3, 0] = 0.1
        with pytest.raises(NotXForm) as err:
            as_x_state(DensityMatrix(mat, ("A", "B1", "C1")))
        assert err.value.index in ((0, 3), (3, 0))
        assert err.value.magnitude == pytest.approx(0.1)

    def test_roundtrip(self, rng):
        for _ in range(25):
            diag = rng.uniform(0.1, 1.0, size=8)
            diag /= diag.sum()
            mat = np.diag(diag.astype(complex))
            for slot, (i, j) in enumerate(((0, 7), (1, 6), (2, 5), (3, 4))):
                mag = rng.uniform(0, np.sqrt(diag[i] * diag[j]))
                phase = np.exp(2j * np.pi * rng.uniform())
                mat[i, j] = mag * phase
                mat[j, i] = np.conj(mat[i, j])
            rho = DensityMatrix(mat, ("A", "B1", "C1"))
            x = as_x_state(rho)
            np.testing.assert_allclose(x.to_matrix(), mat, atol=1e-12)

    def test_block_positivity_enforced(self):
        with pytest.raises(DomainError):
            XState(mu=(0.5, 0, 0, 0), nu=(0.5, 0, 0, 0), w=(0.6, 0, 0, 0))
