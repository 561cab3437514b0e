from pathlib import Path

import pytest

from matroid_recolouring.core.catalogue import clique_matroid, cycle_matroid
from matroid_recolouring.core.matroid import BinaryMatroid


@pytest.fixture
def k3() -> BinaryMatroid:
    return clique_matroid(3)


@pytest.fixture
def k4() -> BinaryMatroid:
    return clique_matroid(4)


@pytest.fixture
def c5() -> BinaryMatroid:
    return cycle_matroid(5)


@pytest.fixture
def write_file(tmp_path):
    def _write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text)
        return path

    return _write


@pytest.fixture
def k3_file(write_file) -> Path:
    return write_file("k3.bm", "# M(K_3)\n110\n101\n011\n")


@pytest.fixture
def k4_file(write_file) -> Path:
    return write_file("k4.bm", "1100\n1010\n1001\n0110\n0101\n0011\n")


@pytest.fixture
def c5_file(write_file) -> Path:
    return write_file("c5.bm", "11000\n01100\n00110\n00011\n10001\n")
