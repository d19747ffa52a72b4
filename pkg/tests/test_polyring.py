# test_polyring.py - polynomial arithmetic, Groebner bases, intersections and Hilbert polynomials
import random
from fractions import Fraction
from pathlib import Path

import pytest

from backend.polyring import (
    GREVLEX, LEX, HilbertPolynomial, HilbertStabilizationError, Ideal, NonHomogeneousError, Poly, PolyError,
    PolyParseError, RingMismatchError, buchberger, default_degree_bound, format_poly, groebner, hilbert_function,
    hilbert_polynomial, ideal_contains, ideal_intersect, ideal_power, ideal_sum, ideals_equal, intersect_all,
    jacobian_smoothness, line_arrangement_genus, line_arrangement_hilbert_polynomial, normal_form, parse_poly,
    read_ideal_file,
)

IDEALS_DIR = Path(__file__).resolve().parent.parent / "scripts" / "ideals"

x0, x1, x2, x3 = Poly.variables(4)


def twisted_cubic():
    return Ideal.of(x0 * x2 - x1 ** 2, x1 * x3 - x2 ** 2, x0 * x3 - x1 * x2)


QUADRATIC_MONOMIALS = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)]


def permute(p, perm):
    return Poly(p.nvars, {tuple(e[perm[i]] for i in range(p.nvars)): c for e, c in p.terms.items()})


# ------------------------------------------------------------
# Polynomials and parsing
# ------------------------------------------------------------

def test_arithmetic():
    assert (x0 + x1) ** 2 == x0 ** 2 + 2 * x0 * x1 + x1 ** 2
    assert (x0 - x0).is_zero()
    assert (x0 * 3) / 3 == x0
    assert 1 - x0 == -(x0 - 1)
    assert Poly.constant(4, 5) == 5
    assert (x0 ** 2 * x3).degree() == 3
    assert Poly(4).degree() == -1


def test_ring_mismatch():
    y0 = Poly.variable(2, 0)
    with pytest.raises(RingMismatchError):
        x0 + y0


def test_partial_and_evaluate():
    f = x0 ** 3 + 2 * x0 * x1 * x2
    assert f.partial(0) == 3 * x0 ** 2 + 2 * x1 * x2
    assert f.partial(3).is_zero()
    assert f.evaluate((1, 2, Fraction(1, 2), 7)) == 3


def test_substitute():
    f = x0 * x1 + x2
    assert f.substitute({1: x3, 2: 5}) == x0 * x3 + 5


def test_leading_monomial_orders():
    f = x0 * x3 ** 2 + x1 ** 3
    # grevlex: equal degree, the smaller power of the last variable wins
    assert f.leading_monomial(GREVLEX) == (0, 3, 0, 0)
    assert f.leading_monomial(LEX) == (1, 0, 0, 2)


@pytest.mark.parametrize("text,expected", [
    ("3/2*x0^2*x3 - x1*x2", "3/2*x0^2*x3 - x1*x2"),
    ("x1*x2 - 3/2*x0^2*x3", "3/2*x0^2*x3 - x1*x2"),
    ("x0**2", "x0^2"),
    ("(x0 + x1)^2", "x0^2 + 2*x0*x1 + x1^2"),
    ("-x3 + 2*x0", "2*x0 - x3"),
    ("0", "0"),
])
def test_parse_and_format(text, expected):
    assert format_poly(parse_poly(text, 4)) == expected


def test_parse_ring_size():
    assert parse_poly("x1").nvars == 2
    assert parse_poly("x1", 4).nvars == 4
    assert parse_poly("7").nvars == 1


@pytest.mark.parametrize("text", ["", "x0 +", "x10", "x0/x1", "2^x0", "x0 $", "(x0", "x0 x1", "x1/0"])
def test_parse_rejects(text):
    with pytest.raises(PolyParseError):
        parse_poly(text)


def test_parse_rejects_variables_outside_the_ring():
    with pytest.raises(PolyParseError):
        parse_poly("x5", 4)


# ------------------------------------------------------------
# Groebner bases
# ------------------------------------------------------------

def test_groebner_of_a_basis_is_itself():
    gb = buchberger(Ideal.of(x0, x3))
    assert set(gb.basis) == {x0, x3}


def test_groebner_linear():
    gb = buchberger(Ideal.of(x0 + x1, x0 - x1))
    assert set(gb.basis) == {x0, x1}


def test_groebner_lex_unit_ideal():
    x, y = Poly.variables(2)
    gb = buchberger(Ideal.of(x ** 2, x * y + 1), LEX)
    assert gb.basis == (Poly.constant(2, 1),)


def test_groebner_lex_eliminates():
    x, y = Poly.variables(2)
    gb = buchberger(Ideal.of(x ** 2 - y, x * y - 1), LEX)
    # the last element is a polynomial in y alone
    assert all(e[0] == 0 for e in gb.basis[-1].terms)
    assert gb.basis[-1] == y ** 3 - 1


def test_groebner_is_reduced_and_monic():
    gb = groebner(twisted_cubic())
    lms = gb.leading_monomials()
    for g, lm in zip(gb.basis, lms):
        assert g.terms[lm] == 1
        for other in lms:
            if other != lm:
                assert not any(all(a <= b for a, b in zip(other, e)) for e in g.terms)


def _sympy_basis(ideal, order):
    sympy = pytest.importorskip("sympy")
    gens = sympy.symbols(f"x0:{ideal.nvars}")
    exprs = []
    for g in ideal.generators:
        expr = 0
        for e, c in g.terms.items():
            term = sympy.Rational(c.numerator, c.denominator)
            for v, k in zip(gens, e):
                term = term * v ** k
            expr = expr + term
        exprs.append(expr)
    out = set()
    for p in sympy.groebner(exprs, *gens, order=order).polys:
        terms = {e: Fraction(int(c.p), int(c.q)) for e, c in p.terms()}
        out.add(Poly(ideal.nvars, terms).monic(GREVLEX if order == "grevlex" else LEX))
    return out


@pytest.mark.parametrize("make", [
    lambda: twisted_cubic(),
    lambda: Ideal.of(x0 ** 2 - x1 * x2, x1 ** 2 - x0 * x2, x2 ** 2 - x0 * x1),
    lambda: Ideal.of(x0 * x1 - x2 * x3, x0 + x1 + x2 + x3),
    lambda: Ideal.of(x0 ** 2 - x1 * x3, x1 ** 2 - Fraction(1, 2) * x0 * x2),
])
@pytest.mark.parametrize("order", ["grevlex", "lex"])
def test_groebner_matches_sympy(make, order):
    ideal = make()
    mine = buchberger(ideal, order)
    assert set(mine.basis) == _sympy_basis(ideal, order)


def test_groebner_random_binomials_match_sympy(seed):
    rng = random.Random(seed)
    for _ in range(3):
        gens = []
        for _ in range(3):
            a, b = rng.sample(QUADRATIC_MONOMIALS, 2)
            gens.append(Poly(3, {a: 1}) - Poly(3, {b: rng.randint(1, 3)}))
        ideal = Ideal(tuple(gens), 3)
        assert set(buchberger(ideal).basis) == _sympy_basis(ideal, "grevlex")


@pytest.mark.parametrize("order", [GREVLEX, LEX])
def test_reduced_basis_ignores_generator_order(seed, order):
    rng = random.Random(seed)
    gens = list(twisted_cubic().generators)
    base = buchberger(Ideal(tuple(gens), 4), order).basis
    for _ in range(5):
        rng.shuffle(gens)
        # a redundant combination must not change the reduced basis either
        extra = gens[0] * x3 + 2 * gens[1]
        assert buchberger(Ideal(tuple(gens) + (extra,), 4), order).basis == base


def test_normal_form_and_membership():
    ideal = Ideal.of(x0, x3)
    gb = groebner(ideal)
    assert normal_form(x0 ** 2 * x3 + x1, gb) == x1
    assert ideal_contains(ideal, x0 * x1 + x3 ** 2)
    assert not ideal_contains(ideal, x1)


def test_ideals_equal():
    assert ideals_equal(Ideal.of(x0 + x1, x0 - x1), Ideal.of(x0, x1))
    assert not ideals_equal(Ideal.of(x0), Ideal.of(x1))


def test_ideal_power():
    sq = ideal_power(Ideal.of(x0, x1), 2)
    assert ideal_contains(sq, x0 * x1)
    assert not ideal_contains(sq, x0)
    with pytest.raises(PolyError):
        ideal_power(sq, 0)


# ------------------------------------------------------------
# Intersections
# ------------------------------------------------------------

def test_intersect_coordinate_hyperplanes():
    assert ideals_equal(ideal_intersect(Ideal.of(x0), Ideal.of(x1)), Ideal.of(x0 * x1))


def test_intersect_two_meeting_lines():
    meet = ideal_intersect(Ideal.of(x0, x3), Ideal.of(x1, x3))
    assert ideals_equal(meet, Ideal.of(x3, x0 * x1))


def test_intersection_membership(seed):
    rng = random.Random(seed)
    a = Ideal.of(x0, x3 ** 2)
    b = Ideal.of(x1, x3)
    meet = ideal_intersect(a, b)
    for g in meet.generators:
        assert ideal_contains(a, g) and ideal_contains(b, g)
    for _ in range(5):
        f = rng.randint(1, 5) * x0 + rng.randint(1, 5) * x3 ** 2
        g = rng.randint(1, 5) * x1 + rng.randint(1, 5) * x3
        assert ideal_contains(meet, f * g)


def test_intersect_all_balanced_agrees():
    parts = [Ideal.of(x0, x1), Ideal.of(x1, x2), Ideal.of(x2, x3), Ideal.of(x0, x3)]
    assert ideals_equal(intersect_all(parts), intersect_all(parts, balanced=True))
    with pytest.raises(PolyError):
        intersect_all([])


def test_ideal_sum_requires_one_ring():
    with pytest.raises(RingMismatchError):
        ideal_sum(Ideal.of(x0), Ideal.of(Poly.variable(2, 0)))


# ------------------------------------------------------------
# Hilbert functions and polynomials
# ------------------------------------------------------------

def test_hilbert_function():
    assert hilbert_function(Ideal((), 4), 2) == 10
    line = Ideal.of(x0, x3)
    assert [hilbert_function(line, m) for m in range(6)] == [1, 2, 3, 4, 5, 6]
    assert hilbert_function(line, -1) == 0


def test_hilbert_function_requires_homogeneous():
    with pytest.raises(NonHomogeneousError):
        hilbert_function(Ideal.of(x0 + 1), 3)


@pytest.mark.parametrize("make,coeffs,text", [
    (lambda: Ideal.of(x0, x3), (1, 1), "m + 1"),
    (lambda: twisted_cubic(), (1, 3), "3*m + 1"),
    (lambda: Ideal((), 4), (1, Fraction(11, 6), 1, Fraction(1, 6)), "1/6*m^3 + m^2 + 11/6*m + 1"),
    (lambda: Ideal.of(x0 * x1, x2, x3), (2,), "2"),
    (lambda: Ideal.of(x3, x0 * x1 * x2), (0, 3), "3*m"),
])
def test_hilbert_polynomial(make, coeffs, text):
    hp = hilbert_polynomial(make())
    assert hp == HilbertPolynomial(coeffs)
    assert str(hp) == text


def test_hilbert_polynomial_is_permutation_invariant(seed):
    rng = random.Random(seed)
    base = hilbert_polynomial(twisted_cubic())
    for _ in range(4):
        perm = list(range(4))
        rng.shuffle(perm)
        permuted = Ideal(tuple(permute(g, perm) for g in twisted_cubic().generators), 4)
        assert hilbert_polynomial(permuted) == base


def test_hilbert_polynomial_regularity_index():
    hp = hilbert_polynomial(Ideal.of(Poly.variable(2, 0) ** 5))
    assert hp == HilbertPolynomial((5,))
    assert hp.regularity_index == 4
    assert hp(4) == 5


def test_hilbert_stabilization_error_carries_diagnostics():
    ideal = Ideal.of(Poly.variable(2, 0) ** 5)
    with pytest.raises(HilbertStabilizationError) as info:
        hilbert_polynomial(ideal, degree_bound=3)
    assert info.value.bound == 3
    assert info.value.values[5] == 5


def test_default_degree_bound_uses_the_generators():
    x, y, _ = Poly.variables(3)
    # x*y^5 is redundant; its degree still sets the bound
    ideal = Ideal.of(x, x * y ** 5)
    assert default_degree_bound(ideal) == 16
    hp = hilbert_polynomial(ideal)
    assert hp.bound == 16
    assert hp == HilbertPolynomial((1, 1))


@pytest.mark.parametrize("name", ["cayley_hyperplane_section.txt", "triangle_of_lines.txt"])
def test_sample_ideal_files(name):
    ideal = read_ideal_file(IDEALS_DIR / name)
    assert ideal.nvars == 4
    assert hilbert_polynomial(ideal) == HilbertPolynomial((0, 3))


def test_read_ideal_file(tmp_path):
    path = tmp_path / "ideal.txt"
    path.write_text("# two lines\nx0*x1  # product\n\nx3\n", encoding='utf-8')
    ideal = read_ideal_file(path)
    assert ideal.generators == (x0 * x1, x3)
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n", encoding='utf-8')
    with pytest.raises(PolyParseError):
        read_ideal_file(empty)


def test_line_arrangement_bookkeeping():
    assert line_arrangement_genus(27, 135) == 109
    hp = line_arrangement_hilbert_polynomial(27, 135)
    assert hp == HilbertPolynomial((-108, 27))
    assert str(hp) == "27*m - 108"
    assert hp(10) == 162
    # a triangle of lines
    assert line_arrangement_hilbert_polynomial(3, 3) == hilbert_polynomial(Ideal.of(x3, x0 * x1 * x2))
    with pytest.raises(PolyError):
        line_arrangement_genus(4, 2)


def test_jacobian_smoothness():
    assert jacobian_smoothness(x0 ** 3 + x1 ** 3 + x2 ** 3 + x3 ** 3)
    assert not jacobian_smoothness(x0 * x1 * x2)
    with pytest.raises(NonHomogeneousError):
        jacobian_smoothness(x0 ** 3 + x1)
