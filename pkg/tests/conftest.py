"""Shared fixtures: cached spectral dataset and heavyweight assemblies."""

import functools

import pytest

from rsmoment.moments import assemble_rhs, eisenstein_level1
from rsmoment.spectral import load_dataset
from rsmoment.transforms import TestFunction


@functools.lru_cache(maxsize=None)
def cached_dataset():
    return load_dataset()


@functools.lru_cache(maxsize=None)
def cached_testfunction(T, alpha=0.5):
    return TestFunction(T, alpha)


@functools.lru_cache(maxsize=None)
def cached_rhs(n, t, T):
    """assemble_rhs at s = 1/2 for the level-1 Eisenstein form, cached so
    the acceptance criteria can share evaluations."""
    return assemble_rhs(0.5, eisenstein_level1(t), n,
                        cached_testfunction(T))


@pytest.fixture(scope="session")
def dataset():
    return cached_dataset()
