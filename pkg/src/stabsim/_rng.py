import numpy as np


def as_rng(seed=None):
    """Return a ``numpy.random.Generator`` for ``seed``.

    Generators (or anything else with an ``integers`` method) are passed
    through unchanged so callers can share a stream.
    """
    if hasattr(seed, "integers"):
        return seed
    return np.random.default_rng(seed)


def random_bit(rng):
    # Single point of randomness consumption for measurement; the tableau
    # simulator and the dense oracle must draw identically.
    return int(rng.integers(2))
