import math

import numpy as np
import pytest

from gtnsim import ModelParams

ALPHA_GHZ = math.sqrt(0.5)


def random_model_params(rng) -> ModelParams:
    """Random tuple over the verification grid (omega = 1, w/T in [0.1, 20])."""
    return ModelParams(
        alpha=rng.uniform(0.0, 1.0),
        omega_k=1.0,
        T=1.0 / rng.uniform(0.1, 20.0),
        r=rng.uniform(0.0, 1.0),
        p=rng.uniform(0.0, 1.0),
        f=None if rng.uniform() < 0.25 else rng.uniform(0.05, 0.95),
    )


def random_density_matrix(rng, n_qubits, labels):
    """Haar-ish random mixed state: normalized Wishart matrix."""
    from gtnsim import DensityMatrix

    dim = 2**n_qubits
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    mat = g @ g.conj().T
    mat /= np.trace(mat).real
    mat = 0.5 * (mat + mat.conj().T)
    return DensityMatrix(mat, labels)


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)
