"""Scalar function representations: exact rational functions of z over the
Grassmann ring, and truncated Laurent series around a point.

Both classes share one operation contract (add/mul/inverse/derivative/...),
so superfields can be built over either.  Rational functions keep their
denominator body-only and monic: any Grassmann soul in a denominator is
pushed into the numerator through the finite conjugate trick, which keeps
pole analysis a plain question about Q[z].
"""

from __future__ import annotations

from fractions import Fraction

from .grassmann import GrassmannScalar, NotInvertible
from .poly import GrPoly, content_gcd, q_gcd


class TruncationUnderflow(Exception):
    pass


class RationalFunction:
    """num/den with den a monic body-only polynomial."""

    __slots__ = ("n", "num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if den is None:
            den = GrPoly.one(num.n)
        self.n = num.n
        self.num = num
        self.den = den
        if not _normalized:
            self._normalize()

    def _normalize(self):
        num, den = self.num, self.den
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        # push any soul in the denominator into the numerator
        while not den.is_body_only():
            conj = den.body_part() - den.soul_part()
            num = num * conj
            den = den * conj
        if num.is_zero():
            self.num = GrPoly.zero(self.n)
            self.den = GrPoly.one(self.n)
            return
        # cancel the common body factor
        g = q_gcd(den.body_coeffs(), content_gcd([num]))
        if len(g) > 1:
            gp = GrPoly.from_body(self.n, g)
            num = num.divmod(gp)[0]
            den = den.divmod(gp)[0]
        # monic denominator
        lead = den.leading().body()
        if lead != 1:
            inv = Fraction(1, 1) / lead
            num = num.scale(GrassmannScalar.const(self.n, inv))
            den = den.scale(GrassmannScalar.const(self.n, inv))
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, n, value):
        return cls(GrPoly.const(n, value))

    @classmethod
    def zero(cls, n):
        return cls(GrPoly.zero(n))

    @classmethod
    def one(cls, n):
        return cls(GrPoly.one(n))

    @classmethod
    def z(cls, n):
        return cls(GrPoly.z(n))

    @classmethod
    def from_fracs(cls, n, num, den=(1,)):
        return cls(GrPoly.from_body(n, [Fraction(c) for c in num]),
                   GrPoly.from_body(n, [Fraction(c) for c in den]))

    # -- queries ------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_body_only(self):
        return self.num.is_body_only()

    def theta_flip(self):
        return RationalFunction(self.num.theta_flip(), self.den,
                                _normalized=True)

    def body(self):
        """Rational function over Q obtained by dropping the soul."""
        return RationalFunction(self.num.body_part(), self.den)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash((self.n, self.num, self.den))

    def __repr__(self):
        return "Rat(%r / %r)" % (self.num, self.den)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, GrassmannScalar)):
            return RationalFunction.const(self.n, other)
        if isinstance(other, GrPoly):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den,
            self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise NotInvertible("zero rational function")
        if self.num.body_part().is_zero():
            # purely nilpotent numerator: no rational inverse
            raise NotInvertible("numerator has identically zero body")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def derivative(self):
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den)

    # -- evaluation / substitution ------------------------------------

    def eval_scalar(self, x):
        dv = self.den.eval_scalar(x)
        return self.num.eval_scalar(x) * dv.inverse()

    def substitute(self, inner):
        """self(inner(z)) for another RationalFunction."""
        p, q = inner.num, inner.den
        dp, dq = max(self.num.degree(), 0), max(self.den.degree(), 0)
        d = max(dp, dq)
        num = self.num.eval_homogenized(p, q)
        den = self.den.eval_homogenized(p, q)
        if d > dp:
            num = num * _poly_pow(q, d - dp)
        if d > dq:
            den = den * _poly_pow(q, d - dq)
        return RationalFunction(num, den)

    # -- local analysis -----------------------------------------------

    def pole_order(self, z0):
        """Order of the pole at a rational point (0 if regular)."""
        if self.num.is_zero():
            return 0
        m = self.den.root_multiplicity(z0)
        if m == 0:
            return 0
        k = self.num.root_multiplicity(z0)
        return max(m - min(k, m), 0)

    def is_regular_at(self, z0):
        return self.pole_order(z0) == 0

    def laurent_coefficient(self, z0, k):
        """Coefficient of (z - z0)^k in the local Laurent expansion."""
        if self.num.is_zero():
            return GrassmannScalar.zero(self.n)
        num = self.num.shift(z0)
        den = self.den.shift(z0)
        m = den.root_multiplicity(0)
        dred = den.divmod(_t_power(self.n, m))[0]
        # series of num / dred up to power k + m
        need = k + m
        if need < 0:
            return GrassmannScalar.zero(self.n)
        inv0 = dred[0].inverse()
        series = []
        for j in range(need + 1):
            s = num[j]
            for i in range(j):
                s = s - series[i] * dred[j - i]
            series.append(s * inv0)
        return series[need]

    def to_laurent(self, z0, kmax):
        """Expansion around z0 with coefficients up to (z-z0)^kmax."""
        if self.num.is_zero():
            return TruncatedLaurent(self.n, 0, [], kmax, point=z0)
        num = self.num.shift(z0)
        den = self.den.shift(z0)
        m = den.root_multiplicity(0)
        dred = den.divmod(_t_power(self.n, m))[0]
        kmin = -m
        need = kmax - kmin
        inv0 = dred[0].inverse()
        series = []
        for j in range(need + 1):
            s = num[j]
            for i in range(j):
                s = s - series[i] * dred[j - i]
            series.append(s * inv0)
        return TruncatedLaurent(self.n, kmin, series, kmax, point=z0)

    def to_json(self):
        return {"rational": {
            "num": [c.to_json() for c in self.num.coeffs],
            "den": [c.to_json() for c in self.den.coeffs]}}


def _poly_pow(p, k):
    acc = GrPoly.one(p.n)
    for _ in range(k):
        acc = acc * p
    return acc


def _t_power(n, m):
    return GrPoly(n, [GrassmannScalar.zero(n)] * m + [GrassmannScalar.one(n)])


class TruncatedLaurent:
    """Laurent series sum_{k=kmin}^{order} c_k t^k around a named point;
    coefficients above ``order`` are unknown and tracked as such."""

    __slots__ = ("n", "kmin", "coeffs", "order", "point")

    def __init__(self, n, kmin, coeffs, order, point=0):
        cs = list(coeffs)
        # strip leading zeros to keep kmin tight (order unchanged)
        while cs and cs[0].is_zero():
            cs.pop(0)
            kmin += 1
        if len(cs) > order - kmin + 1:
            cs = cs[:max(order - kmin + 1, 0)]
        self.n = n
        self.kmin = kmin if cs else 0
        self.coeffs = tuple(cs)
        self.order = order
        self.point = point

    @classmethod
    def const(cls, n, value, order=12, point=0):
        v = value if isinstance(value, GrassmannScalar) \
            else GrassmannScalar.const(n, value)
        return cls(n, 0, [v], order, point=point)

    @classmethod
    def zero(cls, n, order=12, point=0):
        return cls(n, 0, [], order, point=point)

    @classmethod
    def one(cls, n, order=12, point=0):
        return cls.const(n, 1, order, point=point)

    @classmethod
    def var(cls, n, order=12, point=0):
        return cls(n, 1, [GrassmannScalar.one(n)], order, point=point)

    def __getitem__(self, k):
        if self.kmin <= k < self.kmin + len(self.coeffs):
            return self.coeffs[k - self.kmin]
        if k > self.order:
            raise TruncationUnderflow(
                "coefficient %d beyond tracked order %d" % (k, self.order))
        return GrassmannScalar.zero(self.n)

    def is_zero(self):
        return not self.coeffs

    def theta_flip(self):
        return TruncatedLaurent(self.n, self.kmin,
                                [c.theta_flip() for c in self.coeffs],
                                self.order, point=self.point)

    def _coerce(self, other):
        if isinstance(other, TruncatedLaurent):
            if other.point != self.point:
                raise ValueError("laurent series around different points")
            return other
        if isinstance(other, (int, Fraction, GrassmannScalar)):
            return TruncatedLaurent.const(self.n, other, self.order,
                                          point=self.point)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        if self.is_zero() and other.is_zero():
            return TruncatedLaurent.zero(self.n, order, self.point)
        kmin = min([self.kmin] * (not self.is_zero()) +
                   [other.kmin] * (not other.is_zero()) or [0])
        cs = [self[k] + other[k] for k in range(kmin, order + 1)]
        return TruncatedLaurent(self.n, kmin, cs, order, point=self.point)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedLaurent(self.n, self.kmin,
                                [-c for c in self.coeffs],
                                self.order, point=self.point)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return TruncatedLaurent.zero(
                self.n, min(self.order, other.order), self.point)
        kmin = self.kmin + other.kmin
        order = min(self.order + other.kmin, other.order + self.kmin)
        if order < kmin:
            raise TruncationUnderflow("no representable coefficients left")
        cs = [GrassmannScalar.zero(self.n)] * (order - kmin + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k < len(cs):
                    cs[k] = cs[k] + a * b
        return TruncatedLaurent(self.n, kmin, cs, order, point=self.point)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise NotInvertible("zero series")
        lead = self.coeffs[0]
        if lead.body() == 0:
            raise NotInvertible("leading series coefficient has zero body")
        inv0 = lead.inverse()
        m = self.order - self.kmin
        out = []
        for j in range(m + 1):
            if j == 0:
                out.append(inv0)
                continue
            s = GrassmannScalar.zero(self.n)
            for i in range(j):
                s = s - out[i] * self[self.kmin + j - i]
            out.append(s * inv0)
        return TruncatedLaurent(self.n, -self.kmin, out,
                                -self.kmin + m, point=self.point)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def derivative(self):
        if self.is_zero():
            return TruncatedLaurent.zero(self.n, self.order - 1, self.point)
        cs = []
        kmin = self.kmin - 1
        for k in range(self.kmin, self.order + 1):
            cs.append(self[k] * k)
        return TruncatedLaurent(self.n, kmin, cs, self.order - 1,
                                point=self.point)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        order = min(self.order, other.order)
        lo = min(self.kmin, other.kmin)
        return all(self[k] == other[k] for k in range(lo, order + 1))

    def __hash__(self):
        return hash((self.n, self.kmin, self.coeffs, self.order, self.point))

    def __repr__(self):
        return "Laurent(kmin=%d, order=%d, %r)" % (
            self.kmin, self.order, list(self.coeffs))

    def to_json(self):
        return {"laurent": {
            "kmin": self.kmin,
            "order": self.order,
            "coeffs": [c.to_json() for c in self.coeffs]}}
