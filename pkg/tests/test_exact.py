# test_exact.py - rings, epsilon numbers and matrices
import random
from fractions import Fraction

import pytest

from backend.exact import (
    OMEGA, DimensionMismatchError, EisensteinInt, EpsNumber, ExactArithmeticError, GaussianInt, I, Matrix,
    ZeroDivisorError, as_rational, conj_transpose, eps_sum, gauss_divides, gaussian_matrix,
)


def _gauss(rng, r=20):
    return GaussianInt(rng.randint(-r, r), rng.randint(-r, r))


def _eis(rng, r=20):
    return EisensteinInt(rng.randint(-r, r), rng.randint(-r, r))


# ------------------------------------------------------------
# Gaussian integers
# ------------------------------------------------------------

@pytest.mark.parametrize("text,expected", [
    ("1-i", GaussianInt(1, -1)),
    ("-2i", GaussianInt(0, -2)),
    ("i", I),
    ("-i", GaussianInt(0, -1)),
    ("3", GaussianInt(3)),
    ("-1+i", GaussianInt(-1, 1)),
    (" 2 + 5i ", GaussianInt(2, 5)),
])
def test_gaussian_parse(text, expected):
    assert GaussianInt.parse(text) == expected


@pytest.mark.parametrize("text", ["", "i+1", "1+2j", "1.5", "ii"])
def test_gaussian_parse_rejects(text):
    with pytest.raises(ExactArithmeticError):
        GaussianInt.parse(text)


@pytest.mark.parametrize("value", [GaussianInt(1, -1), GaussianInt(0, -2), I, GaussianInt(-3, 4), GaussianInt(7)])
def test_gaussian_str_parses_back(value):
    assert GaussianInt.parse(str(value)) == value


def test_gaussian_ring_axioms(seed):
    rng = random.Random(seed)
    for _ in range(200):
        a, b, c = _gauss(rng), _gauss(rng), _gauss(rng)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a * b).norm() == a.norm() * b.norm()
        assert a - a == 0


def test_i_squared():
    assert I * I == -1
    assert I.conj() == GaussianInt(0, -1)
    assert GaussianInt(3, 4).norm() == 25


def test_gaussian_divmod_remainder_is_small(seed):
    rng = random.Random(seed)
    for _ in range(300):
        x, d = _gauss(rng, 50), _gauss(rng, 9)
        if not d:
            continue
        q, r = divmod(x, d)
        assert q * d + r == x
        assert 2 * r.norm() <= d.norm()


def test_gaussian_divmod_by_zero():
    with pytest.raises(ZeroDivisorError):
        divmod(GaussianInt(1, 1), GaussianInt(0))
    with pytest.raises(ZeroDivisionError):
        GaussianInt(1, 1) // 0


def test_exact_div():
    assert GaussianInt(-2).exact_div(GaussianInt(1, -1)) == GaussianInt(-1, -1)
    with pytest.raises(ExactArithmeticError):
        GaussianInt(1).exact_div(GaussianInt(1, -1))


def test_gauss_divides_examples():
    assert gauss_divides(GaussianInt(1, -1), GaussianInt(-2))
    assert not gauss_divides(GaussianInt(1, -1), GaussianInt(1))
    with pytest.raises(ZeroDivisorError):
        gauss_divides(0, GaussianInt(1))


def test_one_minus_i_divides_exactly_even_coordinate_sums():
    d = GaussianInt(1, -1)
    for a in range(-10, 11):
        for b in range(-10, 11):
            x = GaussianInt(a, b)
            by_search = any(d * GaussianInt(p, q) == x for p in range(-11, 12) for q in range(-11, 12))
            assert gauss_divides(d, x) == by_search == ((a + b) % 2 == 0)


# ------------------------------------------------------------
# Eisenstein integers
# ------------------------------------------------------------

def test_omega_is_a_primitive_cube_root():
    assert OMEGA * OMEGA + OMEGA + 1 == 0
    assert OMEGA * OMEGA * OMEGA == 1
    assert OMEGA.conj() == OMEGA * OMEGA
    assert OMEGA.norm() == 1
    assert (1 - OMEGA).norm() == 3


def test_eisenstein_ring_axioms(seed):
    rng = random.Random(seed)
    for _ in range(200):
        a, b, c = _eis(rng), _eis(rng), _eis(rng)
        assert a * (b * c) == (a * b) * c
        assert a * (b + c) == a * b + a * c
        assert (a * b).norm() == a.norm() * b.norm()
        assert (a * a.conj()) == a.norm()


def test_eisenstein_divmod(seed):
    rng = random.Random(seed)
    for _ in range(300):
        x, d = _eis(rng, 50), _eis(rng, 9)
        if not d:
            continue
        q, r = divmod(x, d)
        assert q * d + r == x
        assert r.norm() < d.norm()


def test_eisenstein_exact_div():
    three = EisensteinInt(3)
    assert three.exact_div(1 - OMEGA) * (1 - OMEGA) == three
    with pytest.raises(ExactArithmeticError):
        EisensteinInt(1).exact_div(1 - OMEGA)
    with pytest.raises(ZeroDivisorError):
        three.exact_div(0)


def test_eisenstein_str():
    assert str(OMEGA) == "w"
    assert str(EisensteinInt(2, -1)) == "2-w"
    assert str(EisensteinInt(-4)) == "-4"


# ------------------------------------------------------------
# Epsilon numbers
# ------------------------------------------------------------

@pytest.mark.parametrize("text,const,coeff", [
    ("1/4+e", Fraction(1, 4), 1),
    ("1/9+3e", Fraction(1, 9), 3),
    ("2", 2, 0),
    ("-e", 0, -1),
    ("1/2-1/3e", Fraction(1, 2), Fraction(-1, 3)),
    ("1/9+ε", Fraction(1, 9), 1),
])
def test_eps_parse(text, const, coeff):
    assert EpsNumber.parse(text) == EpsNumber(const, coeff)


def test_eps_ordering_is_lexicographic(eps):
    assert eps(0, 1) > 0
    assert eps(0, 1000) < Fraction(1, 10 ** 9)
    assert eps(2, -1) < 2 < eps(2, 1)
    assert sorted([eps(1, 2), eps(1, -1), eps(0, 5)]) == [eps(0, 5), eps(1, -1), eps(1, 2)]


def test_eps_arithmetic(eps):
    c = eps("1/9")
    assert c * 12 == eps("4/3", 12)
    assert 3 * c == eps("1/3", 3)
    assert 1 + 4 * eps("1/4") == eps(2, 4)
    assert eps_sum([c, c, 1]) == eps("11/9", 2)
    assert (c * 9 - 1) == eps(0, 9)
    assert (eps(1, 2) / 2) == eps("1/2", 1)
    assert eps("1/4").value_at(Fraction(1, 100)) == Fraction(26, 100)


def test_eps_product_of_infinitesimals_rejected(eps):
    with pytest.raises(ExactArithmeticError):
        eps(1) * eps(1)
    assert eps(1) * EpsNumber(3) == eps(3, 3)


def test_eps_str(eps):
    assert str(eps("1/4")) == "1/4+ε"
    assert str(eps("4/3", 12)) == "4/3+12ε"
    assert str(eps(0, -1)) == "-ε"
    assert str(EpsNumber(2)) == "2"


def test_as_rational():
    assert as_rational("3/4") == Fraction(3, 4)
    assert as_rational(2) == 2
    with pytest.raises(TypeError):
        as_rational(True)
    with pytest.raises(TypeError):
        as_rational(0.5)


# ------------------------------------------------------------
# Matrices
# ------------------------------------------------------------

def test_conj_transpose():
    assert Matrix.identity(3).conj_transpose() == Matrix.identity(3)
    assert gaussian_matrix([["i"]]).conj_transpose() == gaussian_matrix([["-i"]])
    alpha = gaussian_matrix([[-1, "-1+i"], [0, 1]])
    assert alpha.conj_transpose() == gaussian_matrix([[-1, 0], ["-1-i", 1]])
    assert conj_transpose(alpha) == alpha.conj_transpose()


def test_conj_transpose_is_an_involution(seed):
    rng = random.Random(seed)
    m = Matrix.from_rows([[_gauss(rng) for _ in range(3)] for _ in range(4)])
    assert m.conj_transpose().conj_transpose() == m
    assert (m.conj_transpose().rows, m.conj_transpose().cols) == (3, 4)


def test_matmul_and_power():
    a = Matrix.from_rows([[1, 1], [0, 1]])
    assert a ** 5 == Matrix.from_rows([[1, 5], [0, 1]])
    assert a ** 0 == Matrix.identity(2)
    with pytest.raises(DimensionMismatchError):
        a @ Matrix.identity(3)


def test_ragged_rows_rejected():
    with pytest.raises(DimensionMismatchError):
        Matrix.from_rows([[1, 2], [3]])


def test_determinant_agrees_with_cofactor_expansion(seed):
    rng = random.Random(seed)

    def cofactor(rows):
        if len(rows) == 1:
            return rows[0][0]
        return sum((-1) ** j * rows[0][j] * cofactor([r[:j] + r[j + 1:] for r in rows[1:]])
                   for j in range(len(rows)))

    for n in (1, 2, 3, 4):
        rows = [[_gauss(rng, 5) for _ in range(n)] for _ in range(n)]
        assert Matrix.from_rows(rows).determinant() == cofactor(rows)
        ints = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        assert Matrix.from_rows(ints).determinant() == cofactor(ints)


def test_determinant_with_zero_pivot():
    m = Matrix.from_rows([[0, 1, 2], [1, 0, 3], [4, -3, 8]])
    assert m.determinant() == -2
    assert Matrix.from_rows([[0, 0], [0, 5]]).determinant() == 0


def test_rref_rank_nullspace():
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    reduced, pivots = m.rref()
    assert pivots == (0, 1)
    assert m.rank() == 2
    (v,) = m.nullspace()
    assert m.apply(v) == (0, 0, 0)
    assert v == (Fraction(-1), Fraction(-1), Fraction(1))
