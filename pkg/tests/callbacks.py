"""
Forcing callbacks loaded by import path in the tests.
"""
import numpy


def restoring(u):
    return -u


def restoring_potential(u):
    return -(u**2) / 2


def wrong_sign(u):
    return u


def wrong_potential(u):
    return u**2 / 2


def unit_damping(x, t, u, u_x, u_xx, u_t):
    return numpy.ones_like(u)


def offset(x, t, u, u_x, u_xx, u_t):
    return 1.0 + 0 * u


def blowup(x, t, u, u_x, u_xx, u_t):
    return numpy.where(t > 0.05, numpy.inf, 0 * u)


def linear_growth(t, eta):
    return t


def constant_growth(t, eta):
    return 0.03 + 0 * t


not_callable = 42
