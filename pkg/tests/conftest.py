import numpy as np
import pytest

import trispec as ts


@pytest.fixture(scope="session")
def square7():
    return ts.square_model(7)


@pytest.fixture(scope="session")
def guess7(square7):
    return ts.efficient_initials(square7)


def _random_system(rng, style):
    n = int(rng.integers(1, 13))
    a = rng.uniform(0.1, 10.0, n)
    b = rng.uniform(0.1, 10.0, n)
    c = np.zeros(n + 1)
    if style == 0:
        c[n] = rng.uniform(0.1, 10.0)
    elif style == 1:
        c[0] = rng.uniform(0.1, 10.0)
    else:
        mask = rng.random(n + 1) < 0.4
        mask[int(rng.integers(0, n + 1))] = True
        c[mask] = rng.uniform(0.1, 5.0, int(mask.sum()))
    return ts.build_system(a, b, c)


@pytest.fixture(scope="session")
def random_systems():
    """150 random killed systems with N <= 12, killing placed at the
    right end / left end / scattered in rotation."""
    rng = np.random.default_rng(7)
    return [_random_system(rng, trial % 3) for trial in range(150)]


@pytest.fixture(scope="session")
def random_operators():
    """20 random smooth operators on (0, 1) with quadratic diffusion and
    wavy drift, paired with their 800-cell measure grids."""
    rng = np.random.default_rng(42)
    out = []
    for _ in range(20):
        b0, b1, b2 = rng.uniform(-2, 2, 3)
        a0 = rng.uniform(0.5, 2.0)
        a1 = rng.uniform(0.0, 1.0)

        def af(x, a0=a0, a1=a1):
            return a0 + a1 * np.asarray(x) ** 2

        def bf(x, b0=b0, b1=b1, b2=b2):
            return b0 + b1 * np.asarray(x) + b2 * np.sin(3 * np.asarray(x))

        op = ts.Operator1D(a=af, b=bf, interval=(0.0, 1.0), theta=0.5)
        out.append((op, ts.build_measures(op, 800)))
    return out
