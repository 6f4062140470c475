"""Shared random-value builders for the test suite.

All randomness is seeded per test; the builders produce exact rational
data so every algebraic check can assert equality, not closeness.
"""

import random
from fractions import Fraction

import pytest

from soper.grassmann import GrassmannScalar
from soper.poly import GrPoly
from soper.ratfunc import RationalFunction
from soper.superfield import Superfield, SuperconformalMap, spl2_map
from soper.osp import SuperMatrix, basis_e, basis_E, exp_nilpotent
from soper.superoper import SuperConnection

N = 4


def rnd_frac(rng, d=3):
    return Fraction(rng.randint(-d, d), rng.randint(1, d))


def rnd_scalar(rng, parity, n=N):
    """Random homogeneous GrassmannScalar of the given parity."""
    acc = GrassmannScalar.zero(n)
    if parity == "even":
        acc = acc + GrassmannScalar.const(n, rnd_frac(rng))
        acc = acc + GrassmannScalar.monomial(n, (0, 1)) * rnd_frac(rng)
        acc = acc + GrassmannScalar.monomial(n, (2, 3)) * rnd_frac(rng)
    else:
        for i in range(n):
            acc = acc + GrassmannScalar.generator(n, i) * rnd_frac(rng)
        acc = acc + GrassmannScalar.monomial(n, (0, 1, 2)) * rnd_frac(rng)
    return acc


def rnd_poly(rng, parity, deg=1, n=N):
    return GrPoly(n, [rnd_scalar(rng, parity, n) for _ in range(deg + 1)])


def rnd_ratfunc(rng, parity, deg=1, n=N):
    return RationalFunction(rnd_poly(rng, parity, deg, n), GrPoly.one(n))


def rnd_superfield(rng, parity, deg=1, n=N):
    other = "odd" if parity == "even" else "even"
    return Superfield(rnd_ratfunc(rng, parity, deg, n),
                      rnd_ratfunc(rng, other, deg, n), parity)


def rnd_scmap(rng, deg=1, n=N):
    """Random polynomial superconformal map Theta = psi + theta g,
    Z = F + theta psi g with F' = g^2 - psi psi'."""
    psi = rnd_poly(rng, "odd", deg, n)
    g = rnd_poly(rng, "even", deg, n)
    if g.body_part().is_zero():
        g = g + GrPoly.one(n)
    integrand = g * g - psi * psi.derivative()
    coeffs = [GrassmannScalar.zero(n)]
    for k, c in enumerate(integrand.coeffs):
        coeffs.append(c * Fraction(1, k + 1))
    big_f = GrPoly(n, coeffs)
    one = GrPoly.one(n)
    zc = Superfield(RationalFunction(big_f, one),
                    RationalFunction(psi * g, one), "even")
    theta = Superfield(RationalFunction(psi, one),
                       RationalFunction(g, one), "odd")
    m = SuperconformalMap(zc, theta)
    assert m.is_superconformal()
    return m


def rnd_spl2(rng, n=N):
    """Random unit-determinant SPL2 parameters (even a,b,c,d; odd gamma,
    delta) and the associated map."""
    while True:
        a = rnd_scalar(rng, "even", n)
        if a.body() != 0:
            break
    b = rnd_scalar(rng, "even", n)
    c = rnd_scalar(rng, "even", n)
    # solve d from the unit-determinant condition
    d = (GrassmannScalar.one(n) + b * c) * a.inverse()
    gamma = rnd_scalar(rng, "odd", n)
    delta = rnd_scalar(rng, "odd", n)
    return spl2_map(a, b, c, d, gamma, delta)


def build_oper(alpha, a, b, beta, gamma=None):
    n = alpha.n
    zero = Superfield.zero(n)
    if gamma is None:
        gamma = Superfield.zero(n, "odd")
    rows = [[alpha, b, beta],
            [-a, zero, b],
            [gamma, a, -alpha]]
    return SuperConnection(SuperMatrix(rows))


def rnd_oper(rng, n=N):
    alpha = rnd_superfield(rng, "odd", n=n)
    b = rnd_superfield(rng, "odd", n=n)
    beta = rnd_superfield(rng, "odd", n=n)
    a = rnd_superfield(rng, "even", n=n)
    if a.f0.num.body_part().is_zero():
        a = a + Superfield.one(n)
    return build_oper(alpha, a, b, beta)


def rnd_bgauge(rng, n=N):
    """Random element of B: exp(kappa e + s E) * diag(t, 1, 1/t)."""
    kappa = rnd_superfield(rng, "odd", n=n)
    s = rnd_superfield(rng, "even", n=n)
    t = rnd_superfield(rng, "even", n=n)
    if t.f0.num.body_part().is_zero():
        t = t + Superfield.one(n)
    unipotent = exp_nilpotent(basis_e(n) * kappa + basis_E(n) * s)
    torus = SuperMatrix.diag(t, Superfield.one(n), t.inverse())
    return unipotent * torus
