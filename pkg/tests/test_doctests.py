import doctest
import importlib

import pytest

MODULES = ["permgroup", "words", "polyring", "nilhecke", "involution", "verify", "cli"]


@pytest.mark.parametrize("name", MODULES)
def test_module_doctests(name):
    module = importlib.import_module(f"classical_schubert.{name}")
    result = doctest.testmod(module)
    assert result.failed == 0
