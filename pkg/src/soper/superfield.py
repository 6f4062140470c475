"""Superfunctions f(z, theta) = f0(z) + theta*f1(z), superconformal maps,
and the super Schwarzian derivative.

The odd coordinate theta is kept symbolic: a superfield stores the two
component functions.  Multiplication moves theta through coefficients via
the Grassmann main automorphism, so mixed-parity data stays exact.  The
superderivative is D = d/dtheta + theta d/dz with D^2 = d/dz.
"""

from __future__ import annotations

from fractions import Fraction

from .grassmann import GrassmannScalar
from .ratfunc import RationalFunction, TruncatedLaurent

EVEN = "even"
ODD = "odd"


def _flip(p):
    if p is None:
        return None
    return ODD if p == EVEN else EVEN


def _combine(pa, pb):
    if pa is None or pb is None:
        return None
    return EVEN if pa == pb else ODD


class Superfield:
    """f0 + theta*f1 with a declared total parity (or None if untracked)."""

    __slots__ = ("n", "f0", "f1", "parity")

    def __init__(self, f0, f1, parity=None):
        if type(f0) is not type(f1):
            raise TypeError("component representations must match")
        self.n = f0.n
        self.f0 = f0
        self.f1 = f1
        self.parity = parity

    # -- constructors -------------------------------------------------

    @classmethod
    def from_components(cls, f0, f1, parity=None):
        return cls(f0, f1, parity)

    @classmethod
    def const(cls, n, value, parity=EVEN):
        return cls(RationalFunction.const(n, value),
                   RationalFunction.zero(n), parity)

    @classmethod
    def zero(cls, n, parity=EVEN):
        return cls.const(n, 0, parity)

    @classmethod
    def one(cls, n):
        return cls.const(n, 1, EVEN)

    @classmethod
    def z(cls, n):
        return cls(RationalFunction.z(n), RationalFunction.zero(n), EVEN)

    @classmethod
    def theta(cls, n):
        return cls(RationalFunction.zero(n), RationalFunction.one(n), ODD)

    # -- queries ------------------------------------------------------

    def is_zero(self):
        return self.f0.is_zero() and self.f1.is_zero()

    def with_parity(self, parity):
        return Superfield(self.f0, self.f1, parity)

    def parity_consistent(self):
        """Check the declared parity against coefficient parities."""
        if self.parity is None:
            return True
        want0 = self.parity
        want1 = _flip(self.parity)
        for fn, want in ((self.f0, want0), (self.f1, want1)):
            for c in fn.num.coeffs if isinstance(fn, RationalFunction) \
                    else fn.coeffs:
                p = c.parity()
                if p not in (want, "even") and not c.is_zero():
                    if p != want:
                        return False
        return True

    def sigma(self):
        """Total parity involution: negate every odd object (theta and the
        odd Grassmann monomials alike)."""
        return Superfield(self.f0.theta_flip(), -(self.f1.theta_flip()),
                          self.parity)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.f0 == other.f0 and self.f1 == other.f1

    def __hash__(self):
        return hash((self.f0, self.f1))

    def __repr__(self):
        return "Superfield(%r, theta*%r, %s)" % (self.f0, self.f1, self.parity)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Superfield):
            return other
        if isinstance(other, (int, Fraction, GrassmannScalar)):
            p = EVEN
            if isinstance(other, GrassmannScalar):
                gp = other.parity()
                p = gp if gp in (EVEN, ODD) else None
            zero = (RationalFunction.zero(self.n)
                    if isinstance(self.f0, RationalFunction)
                    else TruncatedLaurent.zero(self.n, self.f0.order,
                                               self.f0.point))
            return Superfield(zero._coerce(other), zero, p)
        if isinstance(other, (RationalFunction, TruncatedLaurent)):
            zero = type(other).zero(self.n) \
                if isinstance(other, RationalFunction) \
                else TruncatedLaurent.zero(self.n, other.order, other.point)
            return Superfield(other, zero, None)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        p = self.parity if self.parity == other.parity else None
        if self.is_zero():
            p = other.parity
        elif other.is_zero():
            p = self.parity
        return Superfield(self.f0 + other.f0, self.f1 + other.f1, p)

    __radd__ = __add__

    def __neg__(self):
        return Superfield(-self.f0, -self.f1, self.parity)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        # (a0 + th a1)(b0 + th b1) = a0 b0 + th (flip(a0) b1 + a1 b0)
        f0 = self.f0 * other.f0
        f1 = self.f0.theta_flip() * other.f1 + self.f1 * other.f0
        return Superfield(f0, f1, _combine(self.parity, other.parity))

    def __rmul__(self, other):
        other = self._coerce(other)
        return other * self

    def inverse(self):
        """Inverse of a superfield whose f0 component is invertible."""
        i0 = self.f0.inverse()
        f1 = -(self.f0.theta_flip().inverse() * self.f1 * i0)
        return Superfield(i0, f1, self.parity)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    # -- calculus -----------------------------------------------------

    def d_theta(self):
        """D = d/dtheta + theta d/dz; flips parity."""
        return Superfield(self.f1, self.f0.derivative(), _flip(self.parity))

    def dz(self):
        return Superfield(self.f0.derivative(), self.f1.derivative(),
                          self.parity)

    # -- composition --------------------------------------------------

    def substitute(self, m):
        """Pull back through a coordinate pair (z, theta) -> (Z, Theta).

        Components must be rational.  f(Z, Theta) = f0(Z) + Theta*f1(Z),
        where g(Z0 + xi Z1) = g(Z0) + xi Z1 g'(Z0) by nilpotency of xi Z1.
        """
        def at(g):
            g0 = g.substitute(m.zc.f0)
            g1 = m.zc.f1 * g.derivative().substitute(m.zc.f0)
            return Superfield(g0, g1, None)
        res = at(self.f0) + m.theta * at(self.f1)
        return res.with_parity(self.parity)

    def to_json(self):
        return {"f0": self.f0.to_json(), "f1": self.f1.to_json(),
                "parity": self.parity}


class SuperconformalError(Exception):
    pass


class SuperconformalMap:
    """Coordinate pair (Z, Theta) with the superconformal constraint
    D Z - Theta * D Theta = 0."""

    __slots__ = ("n", "zc", "theta")

    def __init__(self, zc, theta):
        self.n = zc.n
        self.zc = zc.with_parity(EVEN)
        self.theta = theta.with_parity(ODD)

    @classmethod
    def identity(cls, n):
        return cls(Superfield.z(n), Superfield.theta(n))

    @classmethod
    def sc_transition(cls, n):
        """The super Riemann sphere chart change z' = -1/z, theta' = theta/z."""
        z = RationalFunction.z(n)
        zero = RationalFunction.zero(n)
        return cls(Superfield(-(z.inverse()), zero, EVEN),
                   Superfield(zero, z.inverse(), ODD))

    def constraint(self):
        return self.zc.d_theta() - self.theta * self.theta.d_theta()

    def is_superconformal(self):
        return self.constraint().is_zero()

    def d_theta_theta(self):
        return self.theta.d_theta()

    def compose(self, inner):
        """self after inner: (self o inner)(w, xi)."""
        return SuperconformalMap(self.zc.substitute(inner),
                                 self.theta.substitute(inner))

    def to_json(self):
        return {"Z": self.zc.to_json(), "Theta": self.theta.to_json()}


def check_superconformal(m):
    return m.is_superconformal()


def spl2_map(a, b, c, d, gamma, delta):
    """Superprojective fractional-linear map from even a,b,c,d with
    ad - bc = 1 and odd gamma, delta:

        z -> (az+b)/(cz+d) + theta (gamma z + delta)/(cz+d)^2
        theta -> (gamma z + delta)/(cz+d)
                 + theta (1 + delta gamma / 2)/(cz+d)
    """
    n = a.n
    for x in (b, c, d, gamma, delta):
        if x.n != n:
            raise ValueError("mixed Grassmann contexts")
    for x in (a, b, c, d):
        if x.parity() not in ("even",):
            raise SuperconformalError("a,b,c,d must be even")
    for x in (gamma, delta):
        if x.parity() not in ("odd", "even") or \
                (x.parity() == "even" and not x.is_zero()):
            raise SuperconformalError("gamma, delta must be odd")
    if a * d - b * c != GrassmannScalar.one(n):
        raise SuperconformalError("determinant must be exactly 1")

    z = RationalFunction.z(n)
    czd = z * c + d
    num = z * a + b
    odd_num = z * gamma + delta
    half = Fraction(1, 2)
    zc = Superfield(num / czd, odd_num / (czd * czd), EVEN)
    th = Superfield(odd_num / czd,
                    RationalFunction.const(
                        n, GrassmannScalar.one(n) + delta * gamma * half) / czd,
                    ODD)
    return SuperconformalMap(zc, th)


def super_schwarzian(m):
    """S(m) = D^4 Theta / D Theta - 2 (D^2 Theta)(D^3 Theta)/(D Theta)^2.

    Vanishes exactly on superprojective maps and satisfies the cocycle law
    S(m2 o m1) = (S(m2) o m1) (D Theta1)^3 + S(m1).
    """
    t1 = m.theta.d_theta()
    t2 = t1.d_theta()
    t3 = t2.d_theta()
    t4 = t3.d_theta()
    inv = t1.inverse()
    return t4 * inv - 2 * (t2 * t3) * (inv * inv)


def transform_projective_connection(omega, m):
    """omega'(w, xi) = omega(Z, Theta) (D Theta)^3 + S(m)."""
    dt = m.theta.d_theta()
    return omega.substitute(m) * (dt * dt * dt) + super_schwarzian(m)
