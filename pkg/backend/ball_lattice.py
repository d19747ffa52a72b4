# ball_lattice.py - Hermitian forms over Z[i] and Z[w], unitary groups and triflections
"""
Hermitian lattices behind the ball quotients.

Forms are square Matrix objects over GaussianInt or EisensteinInt (ints are
accepted and compare equal to ring elements). h(v, w) = conj(v)^t H w.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from backend.app_logging import get_logger
from backend.config import get_group_cap
from backend.exact import (
    OMEGA,
    DimensionMismatchError,
    EisensteinInt,
    ExactArithmeticError,
    GaussianInt,
    I,
    Matrix,
    as_rational,
    conjugate,
    eisenstein_matrix,
    gauss_divides,
    gaussian_matrix,
)

logger = get_logger(__name__)


class LatticeError(ValueError):
    """Base error for lattice computations"""


class GroupClosureError(LatticeError):
    """Closure grew past the cap"""


class TriflectionError(LatticeError):
    """r.r != -3, or the reflection is not integral"""


def _entries_of(m):
    return m.matrix if isinstance(m, (HermitianForm, SkewForm)) else m


@dataclass(frozen=True)
class HermitianForm:
    matrix: Matrix

    def __post_init__(self):
        if not self.matrix.is_square:
            raise LatticeError("a Hermitian form needs a square matrix")
        if self.matrix.conj_transpose() != self.matrix:
            raise LatticeError("matrix is not Hermitian")

    @property
    def dim(self):
        return self.matrix.rows

    def pair(self, v, w):
        """conj(v)^t H w"""
        hw = self.matrix.apply(w)
        acc = 0
        for a, b in zip(v, hw):
            acc = acc + conjugate(a) * b
        return acc

    def norm(self, v):
        return self.pair(v, v)

    def determinant(self):
        return self.matrix.determinant()

    def __neg__(self):
        return HermitianForm(-self.matrix)

    def __eq__(self, other):
        if not isinstance(other, HermitianForm):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


@dataclass(frozen=True)
class SkewForm:
    matrix: Matrix

    def __post_init__(self):
        if not self.matrix.is_square or self.matrix.transpose() != -self.matrix:
            raise LatticeError("matrix is not skew-symmetric")

    @property
    def dim(self):
        return self.matrix.rows

    def pair(self, v, w):
        """v^t Q w"""
        return sum(a * b for a, b in zip(v, self.matrix.apply(w)))


@dataclass(frozen=True)
class UnitaryMatrix:
    """A matrix together with the form it preserves"""

    matrix: Matrix
    form: HermitianForm
    on_rows: bool = False

    def __post_init__(self):
        if not preserves_form(self.matrix, self.form, on_rows=self.on_rows):
            raise LatticeError("matrix does not preserve the form")

    def __matmul__(self, other):
        return UnitaryMatrix(self.matrix @ other.matrix, self.form, self.on_rows)


def dm_form_h():
    """
    The 6x6 form with -2 on the diagonal, 1-i above and 1+i below it.

    Examples:
        dm_form_h().matrix[0, 1] -> 1-i
    """
    n = 6
    rows = [[GaussianInt(-2) if i == j else (GaussianInt(1, -1) if i < j else GaussianInt(1, 1))
             for j in range(n)] for i in range(n)]
    return HermitianForm(Matrix.from_rows(rows))


def prym_form():
    """[[-2, 1-i], [1+i, -2]]"""
    return HermitianForm(gaussian_matrix([[-2, "1-i"], ["1+i", -2]]))


def intersection_skew():
    """Intersection form on the basis a1, a2, b1, b2"""
    return SkewForm(Matrix.from_rows([
        [0, -1, 2, -1],
        [1, 0, -1, 2],
        [-2, 1, 0, 1],
        [1, -2, -1, 0],
    ]))


# rho(a_j) = b_j, rho(b_j) = -a_j; column k is the image of basis vector k
DEFAULT_RHO = Matrix.from_rows([
    [0, 0, -1, 0],
    [0, 0, 0, -1],
    [1, 0, 0, 0],
    [0, 1, 0, 0],
])


def form_from_intersection(q=None, rho=None):
    """
    Hermitian form h(v, w) = Q(v, rho w) - i Q(v, w) on the Z[i]-basis
    formed by the first half of the Z-basis.

    With the stored intersection form this is the negative of prym_form().
    """
    q = q or intersection_skew()
    rho = rho or DEFAULT_RHO
    if q.dim % 2 or rho.rows != q.dim:
        raise DimensionMismatchError("need an even-rank skew form and a matching rho")
    n = q.dim // 2

    def unit(k):
        return tuple(1 if i == k else 0 for i in range(q.dim))

    rows = []
    for j in range(n):
        row = []
        for k in range(n):
            rho_k = rho.column(k)
            row.append(GaussianInt(q.pair(unit(j), rho_k), -q.pair(unit(j), unit(k))))
        rows.append(row)
    return HermitianForm(Matrix.from_rows(rows))


# ------------------------------------------------------------
# Signature
# ------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    zero: int

    def as_tuple(self):
        return (self.positive, self.negative, self.zero)

    def is_hyperbolic(self):
        """Exactly one direction of one sign, all others of the opposite sign"""
        return self.zero == 0 and 1 in (self.positive, self.negative) and self.positive + self.negative >= 2

    def __str__(self):
        return f"({self.positive}, {self.negative}, {self.zero})"


def _real_part(x):
    if isinstance(x, GaussianInt):
        return Fraction(x.re)
    if isinstance(x, EisensteinInt):
        return Fraction(2 * x.a - x.b, 2)
    return as_rational(x)


def _unit_of(matrix):
    if any(isinstance(x, GaussianInt) for x in matrix.entries):
        return GaussianInt(1), I
    if any(isinstance(x, EisensteinInt) for x in matrix.entries):
        return EisensteinInt(1), OMEGA
    return None


def real_realization(h):
    """
    Real symmetric matrix of Re h on the Q-basis e_k, u*e_k (u = i or w).

    For a Gaussian entry a+bi the block is [[a, -b], [b, a]].

    Returns:
        (rational symmetric matrix, 2), or (the form itself, 1) for rational forms
    """
    m = _entries_of(h)
    units = _unit_of(m)
    if units is None:
        return m.map(as_rational), 1
    basis = units
    n = m.rows
    rows = [[None] * (2 * n) for _ in range(2 * n)]
    for j in range(n):
        for k in range(n):
            for s, cs in enumerate(basis):
                for t, ct in enumerate(basis):
                    rows[2 * j + s][2 * k + t] = _real_part(conjugate(cs) * m[j, k] * ct)
    return Matrix.from_rows(rows), 2


def inertia(s):
    """
    (positive, negative, zero) of a rational symmetric matrix by symmetric
    Gaussian elimination.

    A zero pivot is replaced by swapping in a later nonzero diagonal entry,
    or by adding a row/column with a nonzero off-diagonal entry.
    """
    a = [[as_rational(x) for x in s.row(i)] for i in range(s.rows)]
    n = len(a)
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise LatticeError("matrix is not symmetric")
    pos = neg = zero = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    zero += 1
                    continue
                a[k] = [x + y for x, y in zip(a[k], a[j])]
                for row in a:
                    row[k] = row[k] + row[j]
        pivot = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                for row in a:
                    row[i] = row[i] - f * row[k]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg, zero


def signature(h):
    """
    Inertia of a Hermitian form, computed on its real realization and halved.

    Examples:
        signature(prym_form()) -> (0, 2, 0)
        signature(dm_form_h()) -> one of one sign, five of the other
    """
    real, factor = real_realization(h)
    pos, neg, zero = inertia(real)
    if pos % factor or neg % factor or zero % factor:
        raise LatticeError(f"real inertia ({pos}, {neg}, {zero}) is not divisible by {factor}")
    return Signature(pos // factor, neg // factor, zero // factor)


# ------------------------------------------------------------
# Unitary groups
# ------------------------------------------------------------

def preserves_form(g, h, on_rows=False):
    """
    conj(g)^t H g == H, or g H conj(g)^t == H with on_rows=True.
    """
    m = _entries_of(h)
    if not g.is_square or g.rows != m.rows:
        raise DimensionMismatchError(f"{g.rows}x{g.cols} matrix does not act on a rank {m.rows} form")
    if on_rows:
        return g @ m @ g.conj_transpose() == m
    return g.conj_transpose() @ m @ g == m


def congruence_level(g, delta):
    """Whether g = I mod delta entrywise"""
    diff = g - Matrix.identity(g.rows)
    return all(gauss_divides(delta, x) for x in diff.entries)


def reflection_alpha():
    return gaussian_matrix([[-1, "-1+i"], [0, 1]])


def reflection_beta():
    return gaussian_matrix([[1, 0], ["-1-i", -1]])


def reflection_gamma():
    return gaussian_matrix([["i", "1+i"], ["1-i", "-i"]])


def r_generators():
    return [reflection_alpha(), reflection_beta(), reflection_gamma()]


@dataclass(frozen=True)
class GroupClosure:
    elements: tuple
    census: dict

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in set(self.elements)


def element_order(g, cap=None):
    """Smallest k >= 1 with g^k = I"""
    cap = cap or get_group_cap()
    ident = Matrix.identity(g.rows)
    power = g
    for k in range(1, cap + 1):
        if power == ident:
            return k
        power = power @ g
    raise GroupClosureError(f"no finite order found below {cap}")


def element_orders(elements, cap=None):
    """Census {order: count} over a finite set of matrices"""
    census = Counter(element_order(g, cap) for g in elements)
    return dict(sorted(census.items()))


def generate_group(gens, cap=None):
    """
    Closure of finitely many invertible matrices under multiplication.

    Args:
        gens: matrices (or UnitaryMatrix) of one size
        cap: maximal closure size, [compute] group_cap by default

    Raises:
        GroupClosureError when the closure exceeds cap
    """
    gens = [g.matrix if isinstance(g, UnitaryMatrix) else g for g in gens]
    if not gens:
        raise LatticeError("no generators")
    cap = cap or get_group_cap()
    n = gens[0].rows
    ident = Matrix.identity(n)
    seen = {ident}
    elements = [ident]
    queue = [ident]
    while queue:
        g = queue.pop(0)
        for s in gens:
            h = g @ s
            if h not in seen:
                seen.add(h)
                elements.append(h)
                queue.append(h)
                if len(elements) > cap:
                    raise GroupClosureError(f"closure exceeded {cap} elements")
    census = element_orders(elements, cap)
    logger.debug(f"Generated group of order {len(elements)} from {len(gens)} generators, orders {census}")
    return GroupClosure(tuple(elements), census)


def is_closed(elements):
    pool = set(elements)
    return all(a @ b in pool for a in elements for b in elements)


def center(elements):
    return [z for z in elements if all(z @ g == g @ z for g in elements)]


def scalar_subgroup(n=2):
    """{I, -I, iI, -iI}"""
    ident = Matrix.identity(n)
    return [ident.map(lambda x: GaussianInt.coerce(x) * u) for u in (1, -1, I, -I)]


def _rank_at_most_one(m):
    rows = m.to_rows()
    for i in range(m.rows):
        for k in range(i + 1, m.rows):
            for j in range(m.cols):
                for l in range(j + 1, m.cols):
                    if rows[i][j] * rows[k][l] - rows[i][l] * rows[k][j]:
                        return False
    return True


def reflections_of(elements):
    """Elements of order 2 fixing a hyperplane pointwise (g - I of rank one)"""
    out = []
    for g in elements:
        ident = Matrix.identity(g.rows)
        diff = g - ident
        if diff.is_zero() or g @ g != ident:
            continue
        if _rank_at_most_one(diff):
            out.append(g)
    return out


# ------------------------------------------------------------
# Triflections
# ------------------------------------------------------------

def triflection(r, form):
    """
    x -> x - (1 - w) (x.r / r.r) r for r.r = -3, with x.r = conj(r)^t L x.

    Returns:
        Matrix over EisensteinInt acting on column vectors

    Raises:
        TriflectionError if r.r != -3 or an entry is not integral
    """
    m = _entries_of(form)
    r = tuple(EisensteinInt.coerce(x) for x in r)
    if len(r) != m.rows:
        raise DimensionMismatchError("vector length does not match the form")
    rr = form.pair(r, r) if isinstance(form, HermitianForm) else HermitianForm(m).pair(r, r)
    if rr != -3:
        raise TriflectionError(f"r.r = {rr}, expected -3")
    row = [0] * m.rows
    for j in range(m.rows):
        acc = 0
        for i in range(m.rows):
            acc = acc + conjugate(r[i]) * m[i, j]
        row[j] = acc
    one_minus_w = EisensteinInt(1, -1)
    rows = []
    for i in range(m.rows):
        out = []
        for j in range(m.rows):
            num = EisensteinInt.coerce(one_minus_w * r[i] * row[j])
            try:
                q = num.exact_div(3)
            except ExactArithmeticError as e:
                raise TriflectionError(f"entry ({i}, {j}) is not integral: {num}/3") from e
            out.append(q + (1 if i == j else 0))
        rows.append(out)
    return eisenstein_matrix(rows)


def parse_gaussian_matrix(text):
    """
    Matrix from JSON nested arrays of "a+bi" strings or ints.

    Examples:
        parse_gaussian_matrix('[["-2", "1-i"], ["1+i", "-2"]]')
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise LatticeError(f"not JSON: {e}") from e
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise LatticeError("expected a JSON array of rows")
    for row in data:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, str)):
                raise LatticeError(f"entry {x!r} is not an integer or an \"a+bi\" string")
    try:
        return gaussian_matrix(data)
    except ExactArithmeticError as e:
        raise LatticeError(str(e)) from e


if __name__ == "__main__":
    print("signature [h]:", signature(dm_form_h()))
    r = generate_group(r_generators())
    print("|R| =", r.order, "orders", r.census)
