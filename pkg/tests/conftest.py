from pathlib import Path

import numpy as np
import pytest

from nhiep.spectral import HermitianMatrix

DATA_DIR = Path(__file__).parent / "data"


def random_real_symmetric(rng, n: int) -> HermitianMatrix:
    g = rng.standard_normal((n, n))
    return HermitianMatrix((g + g.T) / 2.0)


def random_complex_hermitian(rng, n: int) -> HermitianMatrix:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return HermitianMatrix((z + z.conj().T) / 2.0)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR
