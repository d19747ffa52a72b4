# exact.py - exact number types and matrices: rationals, Z[i], Z[w], epsilon numbers
"""
Exact arithmetic kernel.

Rational is the standard library Fraction. GaussianInt and EisensteinInt are
immutable value types that mix freely with Python ints. EpsNumber carries a
first-order symbolic infinitesimal and compares lexicographically. Matrix is a
small immutable row-major matrix over any of these rings.

No floating point is used anywhere in this module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

Rational = Fraction


class ExactArithmeticError(ValueError):
    """Base error for the exact arithmetic kernel"""


class ZeroDivisorError(ExactArithmeticError, ZeroDivisionError):
    """Division by a zero ring element"""


class DimensionMismatchError(ExactArithmeticError):
    """Matrix shapes do not fit the operation"""


def as_rational(value):
    """
    Convert an int, Fraction or fraction string to a Fraction.

    Examples:
        as_rational("3/4") -> Fraction(3, 4)
        as_rational(2) -> Fraction(2, 1)
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def _round_half(num, den):
    """Candidates for the nearest integer(s) to num/den (two on a tie)"""
    q, r = divmod(num, den)
    twice = 2 * r
    if twice < den:
        return [q]
    if twice > den:
        return [q + 1]
    return [q, q + 1]


# ------------------------------------------------------------
# Gaussian integers
# ------------------------------------------------------------

_GAUSS_RE = re.compile(r'[+-]?\d+|(?:[+-]?\d+)?[+-]?\d*i')
_EPS_RE = re.compile(r'[+-]?\d+(?:/\d+)?|(?:[+-]?\d+(?:/\d+)?)?[+-]?(?:\d+(?:/\d+)?\*?)?e')


def _split_trailing_term(body):
    """Split "a+b" into ("a", "+b") at the last sign that is not leading"""
    k = max(body.rfind('+'), body.rfind('-'))
    if k <= 0:
        return '', body
    return body[:k], body[k:]


def _unit_coefficient(text, kind):
    """Coefficient of a trailing unit symbol: "", "+" and "-" mean 1, 1 and -1"""
    text = text.rstrip('*')
    if text in ('', '+'):
        return kind(1)
    if text == '-':
        return kind(-1)
    return kind(text)


@dataclass(frozen=True, slots=True)
class GaussianInt:
    """re + im*i with i^2 = -1"""

    re: int
    im: int = 0

    @classmethod
    def coerce(cls, value):
        if isinstance(value, GaussianInt):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls(value, 0)
        return NotImplemented

    @classmethod
    def parse(cls, text):
        """
        Parse "a+bi" notation.

        Examples:
            GaussianInt.parse("1-i") -> GaussianInt(1, -1)
            GaussianInt.parse("-2i") -> GaussianInt(0, -2)
        """
        s = str(text).replace(' ', '')
        if not _GAUSS_RE.fullmatch(s):
            raise ExactArithmeticError(f"not a Gaussian integer: {text!r}")
        if not s.endswith('i'):
            return cls(int(s), 0)
        real, imag = _split_trailing_term(s[:-1])
        return cls(int(real) if real else 0, _unit_coefficient(imag, int))

    def __add__(self, other):
        other = GaussianInt.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussianInt.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = GaussianInt.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = GaussianInt.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianInt(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = GaussianInt.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def conj(self):
        return GaussianInt(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __divmod__(self, other):
        """
        Division with remainder by nearest-lattice-point rounding.

        Ties go to the remainder of smaller norm, then to the
        lexicographically smallest (re, im) quotient.
        """
        d = GaussianInt.coerce(other)
        if d is NotImplemented:
            return NotImplemented
        if not d:
            raise ZeroDivisorError("division by zero Gaussian integer")
        num = self * d.conj()
        n = d.norm()
        best = None
        for qa in _round_half(num.re, n):
            for qb in _round_half(num.im, n):
                q = GaussianInt(qa, qb)
                r = self - q * d
                key = (r.norm(), qa, qb)
                if best is None or key < best[0]:
                    best = (key, q, r)
        return best[1], best[2]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        """Quotient when other divides self exactly, else ExactArithmeticError"""
        q, r = divmod(self, other)
        if r:
            raise ExactArithmeticError(f"{other} does not divide {self}")
        return q

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        im = {1: 'i', -1: '-i'}.get(self.im, f"{self.im}i")
        if self.re == 0:
            return im
        sign = '' if im.startswith('-') else '+'
        return f"{self.re}{sign}{im}"


def gauss_divides(d, x):
    """
    True iff x = d*q for some Gaussian integer q.

    Examples:
        gauss_divides(GaussianInt(1, -1), GaussianInt(-2)) -> True
        gauss_divides(GaussianInt(1, -1), GaussianInt(1)) -> False
    """
    d = GaussianInt.coerce(d)
    x = GaussianInt.coerce(x)
    if not d:
        raise ZeroDivisorError("divisibility by zero is undefined")
    return not (x % d)


I = GaussianInt(0, 1)


# ------------------------------------------------------------
# Eisenstein integers
# ------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class EisensteinInt:
    """a + b*w with w^2 + w + 1 = 0"""

    a: int
    b: int = 0

    @classmethod
    def coerce(cls, value):
        if isinstance(value, EisensteinInt):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls(value, 0)
        return NotImplemented

    def __add__(self, other):
        other = EisensteinInt.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return EisensteinInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __sub__(self, other):
        other = EisensteinInt.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = EisensteinInt.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = EisensteinInt.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # w^2 = -1 - w
        ac = self.a * other.a
        bd = self.b * other.b
        return EisensteinInt(ac - bd, self.a * other.b + self.b * other.a - bd)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = EisensteinInt.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash(('w', self.a, self.b))

    def __bool__(self):
        return bool(self.a or self.b)

    def conj(self):
        # conj(w) = -1 - w
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self):
        return self.a * self.a - self.a * self.b + self.b * self.b

    def __divmod__(self, other):
        d = EisensteinInt.coerce(other)
        if d is NotImplemented:
            return NotImplemented
        if not d:
            raise ZeroDivisorError("division by zero Eisenstein integer")
        num = self * d.conj()
        n = d.norm()
        best = None
        for qa in _round_half(num.a, n):
            for qb in _round_half(num.b, n):
                q = EisensteinInt(qa, qb)
                r = self - q * d
                key = (r.norm(), qa, qb)
                if best is None or key < best[0]:
                    best = (key, q, r)
        return best[1], best[2]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        """Quotient when other divides self exactly, else ExactArithmeticError"""
        d = EisensteinInt.coerce(other)
        if not d:
            raise ZeroDivisorError("division by zero Eisenstein integer")
        num = self * d.conj()
        n = d.norm()
        if num.a % n or num.b % n:
            raise ExactArithmeticError(f"{d} does not divide {self}")
        return EisensteinInt(num.a // n, num.b // n)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        w = {1: 'w', -1: '-w'}.get(self.b, f"{self.b}w")
        if self.a == 0:
            return w
        sign = '' if w.startswith('-') else '+'
        return f"{self.a}{sign}{w}"


OMEGA = EisensteinInt(0, 1)


def conjugate(x):
    """Complex conjugate of a ring element; identity on int and Fraction"""
    if isinstance(x, (GaussianInt, EisensteinInt)):
        return x.conj()
    return x


# ------------------------------------------------------------
# Epsilon numbers
# ------------------------------------------------------------

@total_ordering
@dataclass(frozen=True, slots=True)
class EpsNumber:
    """
    const + eps*e for a positive infinitesimal e.

    Ordering is lexicographic on (const, eps), which is the meaning of
    "for all sufficiently small e > 0". Only addition and scaling by
    rationals are supported.
    """

    const: Fraction
    eps: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 'const', as_rational(self.const))
        object.__setattr__(self, 'eps', as_rational(self.eps))

    @classmethod
    def coerce(cls, value):
        if isinstance(value, EpsNumber):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls(Fraction(value), Fraction(0))
        return NotImplemented

    @classmethod
    def parse(cls, text):
        """
        Parse "1/4+e", "1/9+3e", "2", "-e" style text.

        Examples:
            EpsNumber.parse("1/4+e") -> EpsNumber(1/4, 1)
        """
        s = str(text).replace(' ', '').replace('ε', 'e')
        if not _EPS_RE.fullmatch(s):
            raise ExactArithmeticError(f"not an epsilon number: {text!r}")
        if not s.endswith('e'):
            return cls(Fraction(s), Fraction(0))
        const, eps = _split_trailing_term(s[:-1])
        return cls(Fraction(const) if const else Fraction(0), _unit_coefficient(eps, Fraction))

    def __add__(self, other):
        other = EpsNumber.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return EpsNumber(self.const + other.const, self.eps + other.eps)

    __radd__ = __add__

    def __neg__(self):
        return EpsNumber(-self.const, -self.eps)

    def __sub__(self, other):
        other = EpsNumber.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return EpsNumber(self.const - other.const, self.eps - other.eps)

    def __rsub__(self, other):
        other = EpsNumber.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, EpsNumber):
            if other.eps == 0:
                other = other.const
            elif self.eps == 0:
                return other * self.const
            else:
                raise ExactArithmeticError("product of two infinitesimal terms is not first order")
        if isinstance(other, bool) or not isinstance(other, (int, Fraction)):
            return NotImplemented
        return EpsNumber(self.const * other, self.eps * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, bool) or not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisorError("division of an epsilon number by zero")
        return EpsNumber(self.const / other, self.eps / other)

    def _key(self):
        return (self.const, self.eps)

    def __eq__(self, other):
        other = EpsNumber.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        other = EpsNumber.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash(self.const) if self.eps == 0 else hash(self._key())

    def value_at(self, eps):
        """Substitute a concrete rational for e"""
        return self.const + self.eps * as_rational(eps)

    def is_positive(self):
        return self > 0

    def __str__(self):
        if self.eps == 0:
            return str(self.const)
        coeff = '' if abs(self.eps) == 1 else str(abs(self.eps))
        if self.const == 0:
            return f"{'-' if self.eps < 0 else ''}{coeff}ε"
        sign = '-' if self.eps < 0 else '+'
        return f"{self.const}{sign}{coeff}ε"


def eps_sum(values):
    """Sum of a collection of EpsNumber or rationals as an EpsNumber"""
    total = EpsNumber(0)
    for v in values:
        total = total + v
    return total


# ------------------------------------------------------------
# Matrices
# ------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """
    Immutable row-major matrix over int, Fraction, GaussianInt or EisensteinInt.

    Equality is entry-wise exact; ints compare equal to the matching ring
    elements, so identity matrices built from ints work everywhere.
    """

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(entries)}")
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, ())
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatchError("ragged rows")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n, one=1, zero=0):
        return cls(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows, cols, zero=0):
        return cls(rows, cols, (zero,) * (rows * cols))

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self):
        return self.rows == self.cols

    def map(self, fn):
        return Matrix(self.rows, self.cols, tuple(fn(x) for x in self.entries))

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("cannot add matrices of different shapes")
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("cannot subtract matrices of different shapes")
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return self.map(lambda x: -x)

    def scale(self, c):
        return self.map(lambda x: c * x)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        other_cols = [other.column(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for col in other_cols:
                acc = 0
                for a, b in zip(r, col):
                    acc = acc + a * b
                out.append(acc)
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, vector):
        """Matrix times a column vector given as a sequence"""
        if len(vector) != self.cols:
            raise DimensionMismatchError("vector length does not match column count")
        out = []
        for i in range(self.rows):
            acc = 0
            for a, b in zip(self.row(i), vector):
                acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def transpose(self):
        return Matrix(self.cols, self.rows,
                      tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def conj(self):
        return self.map(conjugate)

    def conj_transpose(self):
        return self.transpose().conj()

    def __pow__(self, k):
        if not self.is_square:
            raise DimensionMismatchError("only square matrices have powers")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def is_zero(self):
        return not any(self.entries)

    def determinant(self):
        """
        Determinant by fraction-free Bareiss elimination.

        Divisions are exact in every supported ring; Fraction entries are
        handled by the same recurrence.
        """
        if not self.is_square:
            raise DimensionMismatchError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if not a[k][k]:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0 * a[0][0]
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = _exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
            prev = a[k][k]
        return a[n - 1][n - 1] if sign == 1 else -a[n - 1][n - 1]

    def rref(self):
        """
        Reduced row echelon form over the rationals.

        Returns:
            (rref matrix with Fraction entries, tuple of pivot columns)
        """
        a = [[as_rational(x) for x in self.row(i)] for i in range(self.rows)]
        pivots = []
        r = 0
        for c in range(self.cols):
            p = next((i for i in range(r, self.rows) if a[i][c] != 0), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            inv = 1 / a[r][c]
            a[r] = [x * inv for x in a[r]]
            for i in range(self.rows):
                if i != r and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix.from_rows(a) if a else Matrix(0, self.cols, ()), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def nullspace(self):
        """Basis of the right kernel over the rationals, as tuples"""
        reduced, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for row_index, pc in enumerate(pivots):
                v[pc] = -reduced[row_index, f]
            basis.append(tuple(v))
        return basis

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))


def _exact_div(x, y):
    if isinstance(x, (GaussianInt, EisensteinInt)):
        return x.exact_div(y)
    if isinstance(y, (GaussianInt, EisensteinInt)):
        return y.coerce(x).exact_div(y)
    if isinstance(x, Fraction) or isinstance(y, Fraction):
        return Fraction(x) / y
    q, r = divmod(x, y)
    if r:
        raise ExactArithmeticError(f"{y} does not divide {x}")
    return q


def gaussian_matrix(rows):
    """Build a Matrix of GaussianInt from nested lists of ints, GaussianInt or "a+bi" strings"""
    def conv(x):
        if isinstance(x, str):
            return GaussianInt.parse(x)
        return GaussianInt.coerce(x)
    return Matrix.from_rows([[conv(x) for x in r] for r in rows])


def eisenstein_matrix(rows):
    """Build a Matrix of EisensteinInt from nested lists of ints or EisensteinInt"""
    return Matrix.from_rows([[EisensteinInt.coerce(x) for x in r] for r in rows])


def conj_transpose(m):
    """Conjugate transpose of a Gaussian or Eisenstein matrix (plain transpose over Q)"""
    return m.conj_transpose()


if __name__ == "__main__":
    alpha = gaussian_matrix([[-1, "-1+i"], [0, 1]])
    print("alpha* =")
    print(alpha.conj_transpose())
    print("1/9 + e scaled by 12:", EpsNumber(Fraction(1, 9), 1) * 12)
