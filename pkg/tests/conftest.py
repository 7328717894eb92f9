import numpy as np
import pytest

from lossywave import builtin_preset, eval_alpha


@pytest.fixture(scope="session")
def castor():
    return builtin_preset("castor-oil")


def trapezoid_norm(law, r, lo, hi, n=2**22):
    """Dense-trapezoid L2 norm oracle, independent of the adaptive path."""
    w = np.linspace(lo, hi, n + 1)
    f = np.exp(-2.0 * np.real(eval_alpha(law, w)) * r) / (4.0 * np.pi * r) ** 2
    return float(np.sqrt(2.0 * np.trapezoid(f, w)))
