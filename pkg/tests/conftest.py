"""
File:           conftest.py
Created on:     17/10/26, 9:10 am
"""
import numpy as np
import pytest

from src.constraint_dsl import preset
from src.spectra import make_spectrum


@pytest.fixture
def rng():
    return np.random.default_rng(20261022)


@pytest.fixture
def two_level():
    return make_spectrum([-1.0, 1.0])


@pytest.fixture
def symmetric_three_level():
    return make_spectrum([-1.0, 0.0, 1.0])


@pytest.fixture
def asymmetric_three_level():
    return make_spectrum([-1.0, -1.0, 2.0])


@pytest.fixture
def product_constraint():
    return preset("product")


@pytest.fixture
def write_config(tmp_path):
    """ Writes a flat key = value config file and returns its path """

    def _write(name: str, text: str):
        path = tmp_path / name
        path.write_text(text)
        return path

    return _write
