import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest

from qcplan import _core
from qcplan.backend import BACKEND, kernel


def pytest_report_header(config):
    return f"qcplan kernel backend: {BACKEND}"


@pytest.fixture(scope="session")
def both_kernels():
    """(interpreted, active) kernel modules; identical results expected."""
    return _core, kernel
