"""Keep the docstring examples honest."""
import doctest

import pytest

from fecount import arith, counting, diagrams, verify, weyl


@pytest.mark.parametrize("module", [arith, counting, diagrams, verify, weyl],
                         ids=lambda m: m.__name__)
def test_module_doctests(module):
    failures, _ = doctest.testmod(module)
    assert failures == 0
