"""Shared fixtures: session-scoped root systems for the small battery types."""

import pytest

from specrep.roots import root_system


@pytest.fixture(scope="session")
def a2():
    return root_system("A2")


@pytest.fixture(scope="session")
def a3():
    return root_system("A3")


@pytest.fixture(scope="session")
def b2():
    return root_system("B2")


@pytest.fixture(scope="session")
def b3():
    return root_system("B3")


@pytest.fixture(scope="session")
def c3():
    return root_system("C3")


@pytest.fixture(scope="session")
def d4():
    return root_system("D4")
