"""Model parameters shared by the demo scripts."""

from lvharvest import Harmonic, ModelParams, PeriodicFn

_C = ((4.3, 0.4), (0.5, 3.5))


def _rate(constant):
    return PeriodicFn(constant, (Harmonic(0.1, 1),))


def _noise(constant):
    return PeriodicFn(constant, (Harmonic(0.01, 1, kind="cos"),))


def baseline():
    return ModelParams(r=(_rate(6.5), _rate(6.6)), alpha=(_noise(0.1), _noise(0.1)), c=_C)


def medium_noise():
    # same system with the first species' noise intensity raised to 0.7
    return ModelParams(r=(_rate(6.5), _rate(6.6)), alpha=(_noise(0.7), _noise(0.1)), c=_C)


def high_noise():
    # and with the second species' noise intensity raised to 1.1
    return ModelParams(r=(_rate(6.5), _rate(6.6)), alpha=(_noise(0.1), _noise(1.1)), c=_C)
