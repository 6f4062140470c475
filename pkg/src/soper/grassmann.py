"""Exact arithmetic in the Grassmann (exterior) algebra over the rationals.

An element is a finite sum of monomials ``c * t_{i1} t_{i2} ... t_{ik}``
with strictly increasing generator indices and exact rational coefficients.
The number of generators N is fixed per element and never coerced; mixing
elements from different contexts raises GeneratorCountMismatch.

Monomials are stored as bitmasks, so products reduce to bitwise operations
plus a transposition-count sign.
"""

from __future__ import annotations

from fractions import Fraction


class GrassmannError(Exception):
    pass


class GeneratorCountMismatch(GrassmannError):
    pass


class NotInvertible(GrassmannError):
    pass


def _merge_sign(a_mask, b_mask):
    """Sign of t_A * t_B when reordering into increasing index order.

    Counts, for each generator in b_mask, how many generators of a_mask
    lie strictly above it (each such pair contributes one transposition).
    """
    swaps = 0
    rest = a_mask
    b = b_mask
    while b:
        low = b & -b
        # generators of a above this bit
        swaps += (rest & ~(low | (low - 1))).bit_count()
        b ^= low
    return -1 if swaps & 1 else 1


class GrassmannScalar:
    """Element of the exterior algebra with ``n`` anticommuting generators.

    Immutable value type; ``terms`` maps bitmask -> nonzero Fraction.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        if not (0 <= n <= 63):
            raise GrassmannError("generator count must be in 0..63")
        clean = {}
        if terms:
            for mask, coeff in terms.items():
                if mask >> n:
                    raise GrassmannError(
                        "monomial uses generator >= %d" % n)
                c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
                if c != 0:
                    clean[mask] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("GrassmannScalar is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, n, value):
        return cls(n, {0: Fraction(value)})

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def one(cls, n):
        return cls.const(n, 1)

    @classmethod
    def generator(cls, n, i):
        if not 0 <= i < n:
            raise GrassmannError("generator index out of range")
        return cls(n, {1 << i: Fraction(1)})

    @classmethod
    def monomial(cls, n, indices, coeff=1):
        mask = 0
        for i in indices:
            if not 0 <= i < n:
                raise GrassmannError("generator index out of range")
            bit = 1 << i
            if mask & bit:
                return cls.zero(n)
            mask |= bit
        return cls(n, {mask: Fraction(coeff)})

    # -- basic queries ------------------------------------------------

    def body(self):
        return self.terms.get(0, Fraction(0))

    def soul(self):
        return GrassmannScalar(
            self.n, {m: c for m, c in self.terms.items() if m})

    def is_zero(self):
        return not self.terms

    def parity(self):
        """'even', 'odd', or 'mixed' by monomial degree mod 2."""
        if not self.terms:
            return "even"
        pars = {m.bit_count() & 1 for m in self.terms}
        if pars == {0}:
            return "even"
        if pars == {1}:
            return "odd"
        return "mixed"

    def theta_flip(self):
        """Main automorphism: negate every odd-degree monomial."""
        return GrassmannScalar(
            self.n,
            {m: (-c if m.bit_count() & 1 else c)
             for m, c in self.terms.items()})

    def _check(self, other):
        if self.n != other.n:
            raise GeneratorCountMismatch(
                "generator counts differ: %d vs %d" % (self.n, other.n))

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return GrassmannScalar(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannScalar(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        self._check(other)
        acc = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue
                sign = _merge_sign(ma, mb)
                m = ma | mb
                s = acc.get(m, Fraction(0)) + sign * ca * cb
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return GrassmannScalar(self.n, acc)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, GrassmannScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return GrassmannScalar.const(self.n, other)
        return NotImplemented

    def inverse(self):
        """Exact inverse via the finite geometric series in the soul."""
        b = self.body()
        if b == 0:
            raise NotInvertible("zero body")
        s = self.soul() * Fraction(1, b)
        # (b(1+s))^-1 = b^-1 * sum (-s)^k ; s is nilpotent
        acc = GrassmannScalar.one(self.n)
        term = GrassmannScalar.one(self.n)
        while True:
            term = term * (-s)
            if term.is_zero():
                break
            acc = acc + term
        return acc * Fraction(1, b)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    # -- comparisons / misc -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GrassmannScalar.const(self.n, other)
        if not isinstance(other, GrassmannScalar):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "Gr[0]"
        bits = []
        for m in sorted(self.terms):
            c = self.terms[m]
            if m == 0:
                bits.append(str(c))
            else:
                gens = "".join(
                    "t%d" % i for i in range(self.n) if m >> i & 1)
                bits.append("%s*%s" % (c, gens))
        return "Gr[%s]" % " + ".join(bits)

    # -- serialization ------------------------------------------------

    def to_json(self):
        out = []
        for m in sorted(self.terms):
            idx = [i for i in range(self.n) if m >> i & 1]
            out.append([idx, str(self.terms[m])])
        return {"n": self.n, "terms": out}

    @classmethod
    def from_json(cls, obj):
        n = obj["n"]
        acc = cls.zero(n)
        for idx, coeff in obj["terms"]:
            prev = None
            for i in idx:
                if prev is not None and i <= prev:
                    raise GrassmannError(
                        "index list must be strictly increasing")
                prev = i
            acc = acc + cls.monomial(n, idx, Fraction(coeff))
        return acc
