import doctest

import boolcs


def test_package_doctest():
    failed, _ = doctest.testmod(boolcs)
    assert failed == 0
