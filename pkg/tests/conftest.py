import math
import os

import hypothesis
import numpy as np
import pytest
from hypothesis import strategies as st

from app.models.quantum import XYZCouplings

hypothesis.settings.register_profile("ci", max_examples=50, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))

HEISENBERG = XYZCouplings(x=1.0, y=1.0, z=1.0)
XXZ = XYZCouplings(x=3.0, y=1.0, z=1.0)
XYZ = XYZCouplings(x=3.0, y=2.0, z=1.0)
FERROMAGNET = XYZCouplings(x=-1.0, y=-1.0, z=-1.0)
COUPLING_SETS = (HEISENBERG, XXZ, XYZ)

BETA_C_HEISENBERG = math.log(3.0) / 4.0
BETA_C_XXZ = math.log(2.0) / 4.0

couplings_strategy = st.builds(
    XYZCouplings,
    x=st.floats(-3.0, 3.0, allow_nan=False),
    y=st.floats(-3.0, 3.0, allow_nan=False),
    z=st.floats(-3.0, 3.0, allow_nan=False),
)
betas_strategy = st.floats(0.0, 5.0, allow_nan=False)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2


@pytest.fixture
def hermitian_factory(rng):
    return lambda dim: random_hermitian(rng, dim)
