"""The Lie superalgebra osp(2|1) in its 2|1 defining representation.

Row/column grading is fixed to (even, odd, even): the odd basis vector
sits in the middle slot.  Matrices carry superfield (or constant) entries;
entry multiplication lives in an honest associative ring, so plain matrix
products are already sign-correct.  The parity involution ``sigma`` is the
only extra piece of bookkeeping needed for super-Leibniz formulas.
"""

from __future__ import annotations

from fractions import Fraction

from .grassmann import GrassmannScalar
from .superfield import Superfield

GRADING = (0, 1, 0)


class SuperMatrixError(Exception):
    pass


class SuperMatrix:
    """3x3 matrix over Superfield entries."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise SuperMatrixError("expected a 3x3 matrix")
        self.n = rows[0][0].n
        self.rows = rows

    @classmethod
    def from_entries(cls, n, entries, scale=1):
        """Build from a 3x3 nest of ints/Fractions/GrassmannScalars/
        Superfields; plain numbers become constant superfields."""
        out = []
        for r in entries:
            row = []
            for e in r:
                if isinstance(e, Superfield):
                    f = e
                else:
                    f = Superfield.const(n, e, parity=None)
                if scale != 1:
                    f = f * scale
                row.append(f)
            out.append(row)
        return cls(out)

    @classmethod
    def zero(cls, n):
        return cls.from_entries(n, [[0] * 3] * 3)

    @classmethod
    def identity(cls, n):
        return cls.from_entries(n, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @classmethod
    def diag(cls, d1, d2, d3):
        n = d1.n
        z = Superfield.zero(n)
        return cls([[d1, z, z], [z, d2, z], [z, z, d3]])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_zero(self):
        return all(e.is_zero() for r in self.rows for e in r)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return all(self.rows[i][j] == other.rows[i][j]
                   for i in range(3) for j in range(3))

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "SuperMatrix(%r)" % (self.rows,)

    def map_entries(self, fn):
        return SuperMatrix([[fn(e) for e in r] for r in self.rows])

    # -- algebra -------------------------------------------------------

    def __add__(self, other):
        return SuperMatrix([[self.rows[i][j] + other.rows[i][j]
                             for j in range(3)] for i in range(3)])

    def __sub__(self, other):
        return SuperMatrix([[self.rows[i][j] - other.rows[i][j]
                             for j in range(3)] for i in range(3)])

    def __neg__(self):
        return self.map_entries(lambda e: -e)

    def __mul__(self, other):
        if isinstance(other, SuperMatrix):
            return SuperMatrix(
                [[sum((self.rows[i][k] * other.rows[k][j]
                       for k in range(3)),
                      Superfield.zero(self.n, parity=None))
                  for j in range(3)] for i in range(3)])
        return self.map_entries(lambda e: e * other)

    def __rmul__(self, other):
        return self.map_entries(lambda e: other * e)

    def d_theta(self):
        return self.map_entries(lambda e: e.d_theta())

    def sigma(self):
        """Entrywise total-parity involution."""
        return self.map_entries(lambda e: e.sigma())

    def parity_twist(self):
        """Conjugation by diag(1,-1,1) (the grading sign matrix)."""
        return SuperMatrix(
            [[self.rows[i][j] *
              (-1 if (GRADING[i] + GRADING[j]) % 2 else 1)
              for j in range(3)] for i in range(3)])

    def matrix_parity(self):
        """'even'/'odd' if every entry parity matches p + g_i + g_j for a
        single p, else 'mixed'."""
        seen = set()
        for i in range(3):
            for j in range(3):
                e = self.rows[i][j]
                if e.is_zero():
                    continue
                p = _entry_parity(e)
                if p is None:
                    return "mixed"
                seen.add((p + GRADING[i] + GRADING[j]) % 2)
        if len(seen) > 1:
            return "mixed"
        if not seen:
            return "even"
        return "odd" if seen.pop() else "even"

    def supertrace(self):
        return self.rows[0][0] - self.rows[1][1] + self.rows[2][2]

    def substitute(self, m):
        return self.map_entries(lambda e: e.substitute(m))

    def inverse_triangular(self):
        """Inverse of an upper/lower triangular matrix with invertible
        diagonal entries, by forward/back substitution."""
        lower = all(self.rows[i][j].is_zero()
                    for i in range(3) for j in range(i + 1, 3))
        upper = all(self.rows[i][j].is_zero()
                    for i in range(3) for j in range(i))
        if not (lower or upper):
            raise SuperMatrixError("only triangular matrices are inverted")
        dinv = [self.rows[i][i].inverse() for i in range(3)]
        x = [[Superfield.zero(self.n, parity=None) for _ in range(3)]
             for _ in range(3)]
        order = range(3) if lower else range(2, -1, -1)
        for j in range(3):
            ej = [Superfield.const(self.n, 1 if i == j else 0, None)
                  for i in range(3)]
            for i in order:
                s = ej[i]
                for k in range(3):
                    if k != i and not self.rows[i][k].is_zero():
                        s = s - self.rows[i][k] * x[k][j]
                x[i][j] = dinv[i] * s
        return SuperMatrix(x)

    def to_json(self):
        return {"entries": [[e.to_json() for e in r] for r in self.rows],
                "parity": self.matrix_parity()}


def _entry_parity(e):
    ps = set()
    for fn, shift in ((e.f0, 0), (e.f1, 1)):
        coeffs = fn.num.coeffs if hasattr(fn, "num") else fn.coeffs
        for c in coeffs:
            if c.is_zero():
                continue
            p = c.parity()
            if p == "mixed":
                return None
            ps.add((0 if p == "even" else 1) ^ shift)
    if len(ps) > 1:
        return None
    return ps.pop() if ps else 0


# -- fixed basis ------------------------------------------------------

def basis_e(n):
    """chi_1: odd raising element."""
    return SuperMatrix.from_entries(n, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])


def basis_f(n):
    """chi_-1: odd lowering element of the defining representation."""
    return SuperMatrix.from_entries(n, [[0, 0, 0], [-1, 0, 0], [0, 1, 0]])


def basis_h(n):
    """Cartan element diag(1, 0, -1)."""
    return SuperMatrix.from_entries(n, [[1, 0, 0], [0, 0, 0], [0, 0, -1]])


def basis_E(n):
    """e^2 = matrix unit (1,3)."""
    return SuperMatrix.from_entries(n, [[0, 0, 1], [0, 0, 0], [0, 0, 0]])


def basis_F(n):
    """f^2 = -matrix unit (3,1)."""
    return SuperMatrix.from_entries(n, [[0, 0, 0], [0, 0, 0], [-1, 0, 0]])


def super_bracket(x, y):
    """XY - (-1)^{|X||Y|} YX for parity-homogeneous X, Y."""
    px = x.matrix_parity()
    py = y.matrix_parity()
    if "mixed" in (px, py):
        raise SuperMatrixError("super bracket needs homogeneous inputs")
    yx = y * x
    if px == "odd" and py == "odd":
        return x * y + yx
    return x * y - yx


def supertrace(x):
    return x.supertrace()


def exp_nilpotent(x, max_terms=40):
    """Exact exp of a nilpotent matrix by its (terminating) series."""
    n = x.n
    acc = SuperMatrix.identity(n)
    term = SuperMatrix.identity(n)
    for k in range(1, max_terms + 1):
        term = term * x
        term = term.map_entries(lambda e: e * Fraction(1, k))
        if term.is_zero():
            return acc
        acc = acc + term
    raise SuperMatrixError("matrix is not nilpotent within %d terms"
                           % max_terms)
