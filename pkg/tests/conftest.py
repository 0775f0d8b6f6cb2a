from pathlib import Path

import pytest

from qcalc.system.parser import parse_system

EXAMPLES = Path(__file__).parent.parent / "example"


def load_example(name: str):
    return parse_system((EXAMPLES / f"{name}.qc").read_text())


@pytest.fixture
def examples() -> Path:
    return EXAMPLES


@pytest.fixture
def kinematics():
    return load_example("kinematics")


@pytest.fixture
def mechanics():
    return load_example("mechanics")


@pytest.fixture
def time_system():
    return load_example("time")


@pytest.fixture
def physics():
    return load_example("physics")
