"""Shared fixtures: the 4-dim orthonormal toy setup and the bundled files."""

from pathlib import Path

import numpy as np
import pytest

from convneg.spectral import Dmat

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def onb():
    """Pure states on the standard basis: apple, orange, fig, movie."""
    basis = np.eye(4)
    return {
        "apple": Dmat(np.outer(basis[0], basis[0]), normalized=True),
        "orange": Dmat(np.outer(basis[1], basis[1]), normalized=True),
        "fig": Dmat(np.outer(basis[2], basis[2]), normalized=True),
        "movie": Dmat(np.outer(basis[3], basis[3]), normalized=True),
    }


@pytest.fixture
def fruit_raw(onb):
    """Worldly-context mixture: half apple, third orange, sixth fig."""
    mix = (
        onb["apple"].matrix / 2.0
        + onb["orange"].matrix / 3.0
        + onb["fig"].matrix / 6.0
    )
    return Dmat(mix, normalized=True)


@pytest.fixture
def fixture_paths():
    return {
        "vectors": FIXTURES / "toy_vectors.txt",
        "hierarchy": FIXTURES / "toy_hierarchy.tsv",
        "dataset": FIXTURES / "toy_dataset.tsv",
        "grid": FIXTURES / "toy_grid.cfg",
    }
