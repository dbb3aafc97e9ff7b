"""Shared fixtures built from dfk.fixtures."""
import pytest

from dfk.fixtures import f_unit, p_chain2, p_diamond, u_empty_f, u_nonalg, u_unit
from dfk.frames import InformationFrame


@pytest.fixture
def frame_unit():
    return f_unit()


@pytest.fixture
def chain2():
    return p_chain2()


@pytest.fixture
def diamond():
    return p_diamond()


@pytest.fixture
def space_unit():
    return u_unit()


@pytest.fixture
def space_empty_family():
    return u_empty_f()


@pytest.fixture
def space_nonalg():
    return u_nonalg()


@pytest.fixture
def interpolation_broken():
    """Two tokens where ∅ ⊢_s t, but t entails nothing, so nothing interpolates t."""
    return InformationFrame.from_sets(
        ["s", "t"],
        {"s": [[], ["s"]], "t": [[], ["t"]]},
        {"s": [([], "t"), (["s"], "t")]},
    )
