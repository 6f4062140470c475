"""Dense polynomials in one variable over the Grassmann scalar ring.

Coefficient index = power of z.  Used as building block for rational
functions; also provides exact gcd over the rational "body" coefficients,
which is what makes cancellation in rational arithmetic cheap.
"""

from __future__ import annotations

from fractions import Fraction

from .grassmann import GrassmannScalar, GrassmannError


class GrPoly:
    """Polynomial with GrassmannScalar coefficients, trailing zeros stripped."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.n = n
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, n, value):
        if isinstance(value, GrassmannScalar):
            return cls(n, [value])
        return cls(n, [GrassmannScalar.const(n, value)])

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def one(cls, n):
        return cls.const(n, 1)

    @classmethod
    def z(cls, n):
        return cls(n, [GrassmannScalar.zero(n), GrassmannScalar.one(n)])

    @classmethod
    def from_body(cls, n, fracs):
        return cls(n, [GrassmannScalar.const(n, f) for f in fracs])

    # -- queries ------------------------------------------------------

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return GrassmannScalar.zero(self.n)

    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def body_coeffs(self):
        return [c.body() for c in self.coeffs]

    def is_body_only(self):
        return all(c.soul().is_zero() for c in self.coeffs)

    def soul_part(self):
        return GrPoly(self.n, [c.soul() for c in self.coeffs])

    def body_part(self):
        return GrPoly(self.n, [GrassmannScalar.const(self.n, c.body())
                               for c in self.coeffs])

    def theta_flip(self):
        return GrPoly(self.n, [c.theta_flip() for c in self.coeffs])

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GrPoly):
            return other
        if isinstance(other, (int, Fraction, GrassmannScalar)):
            return GrPoly.const(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return GrPoly(self.n, [self[k] + other[k] for k in range(m)])

    __radd__ = __add__

    def __neg__(self):
        return GrPoly(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return GrPoly.zero(self.n)
        out = [GrassmannScalar.zero(self.n)] * (
            len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return GrPoly(self.n, out)

    __rmul__ = __mul__

    def scale(self, s):
        return GrPoly(self.n, [c * s for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GrassmannScalar)):
            other = GrPoly.const(self.n, other)
        if not isinstance(other, GrPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __repr__(self):
        return "GrPoly(%r)" % (list(self.coeffs),)

    def derivative(self):
        return GrPoly(self.n, [self[k] * k
                               for k in range(1, len(self.coeffs))])

    def divmod(self, other):
        """Euclidean division; divisor leading coefficient must have
        invertible body."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = other.leading().inverse()
        rem = list(self.coeffs)
        d = other.degree()
        qlen = len(rem) - d
        if qlen <= 0:
            return GrPoly.zero(self.n), GrPoly(self.n, rem)
        quot = [GrassmannScalar.zero(self.n)] * qlen
        for k in range(qlen - 1, -1, -1):
            c = rem[k + d] * lead_inv
            quot[k] = c
            if not c.is_zero():
                for j in range(d + 1):
                    rem[k + j] = rem[k + j] - c * other[j]
        return GrPoly(self.n, quot), GrPoly(self.n, rem)

    def divides_exactly(self, divisor):
        q, r = self.divmod(divisor)
        return (q, True) if r.is_zero() else (None, False)

    # -- evaluation / substitution ------------------------------------

    def eval_scalar(self, x):
        """Horner evaluation at a GrassmannScalar (or rational) point."""
        if not isinstance(x, GrassmannScalar):
            x = GrassmannScalar.const(self.n, x)
        acc = GrassmannScalar.zero(self.n)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_homogenized(self, p, q):
        """p, q polynomials: returns sum c_k p^k q^(deg-k), i.e. the
        numerator of self(p/q) over q^deg."""
        d = self.degree()
        if d < 0:
            return GrPoly.zero(self.n)
        acc = GrPoly.zero(self.n)
        p_pow = GrPoly.one(self.n)
        q_pows = [GrPoly.one(self.n)]
        for _ in range(d):
            q_pows.append(q_pows[-1] * q)
        for k in range(d + 1):
            if not self[k].is_zero():
                acc = acc + p_pow.scale(self[k]) * q_pows[d - k]
            if k < d:
                p_pow = p_pow * p
        return acc

    def compose(self, inner):
        acc = GrPoly.zero(self.n)
        for c in reversed(self.coeffs):
            acc = acc * inner + GrPoly.const(self.n, c)
        return acc

    def shift(self, c):
        """self(z + c) for a scalar c."""
        if not isinstance(c, GrassmannScalar):
            c = GrassmannScalar.const(self.n, c)
        inner = GrPoly(self.n, [c, GrassmannScalar.one(self.n)])
        return self.compose(inner)

    def root_multiplicity(self, z0):
        """Largest k with (z - z0)^k dividing self exactly."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        lin = GrPoly(self.n, [GrassmannScalar.const(self.n, z0) * -1,
                              GrassmannScalar.one(self.n)])
        k = 0
        cur = self
        while not cur.is_zero():
            q, r = cur.divmod(lin)
            if not r.is_zero():
                break
            cur = q
            k += 1
        return k


# -- exact gcd over Q (body polynomials) ------------------------------

def q_gcd(a, b):
    """Monic gcd of two Fraction-coefficient polynomials (lists)."""
    a = _q_trim(list(a))
    b = _q_trim(list(b))
    while b:
        a, b = b, _q_mod(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _q_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _q_mod(a, b):
    a = list(a)
    d = len(b) - 1
    lead = b[-1]
    for k in range(len(a) - 1 - d, -1, -1):
        c = a[k + d] / lead
        if c:
            for j in range(d + 1):
                a[k + j] -= c * b[j]
    return _q_trim(a[:d] if len(a) > d else a)


def content_gcd(polys):
    """Monic gcd over Q of the per-monomial component polynomials of a
    collection of GrPolys.  Returns a Fraction list ('1' if trivial)."""
    comps = []
    for p in polys:
        masks = set()
        for c in p.coeffs:
            masks.update(c.terms)
        for m in masks:
            comps.append([c.terms.get(m, Fraction(0)) for c in p.coeffs])
    if not comps:
        return [Fraction(1)]
    g = comps[0]
    for c in comps[1:]:
        g = q_gcd(g, c)
        if len(g) == 1:
            break
    return g if g else [Fraction(1)]
