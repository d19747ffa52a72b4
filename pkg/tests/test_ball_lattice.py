# test_ball_lattice.py - Hermitian forms, signature, the group R and triflections
import pytest

from backend.ball_lattice import (
    GroupClosureError, HermitianForm, LatticeError, SkewForm, TriflectionError, UnitaryMatrix, center,
    congruence_level, dm_form_h, element_order, form_from_intersection, generate_group, inertia,
    intersection_skew, is_closed, parse_gaussian_matrix, preserves_form, prym_form, r_generators,
    reflection_alpha, reflection_beta, reflection_gamma, reflections_of, scalar_subgroup, signature,
    triflection,
)
from backend.config import set_group_cap
from backend.exact import OMEGA, DimensionMismatchError, GaussianInt, Matrix, eisenstein_matrix, gaussian_matrix


# ------------------------------------------------------------
# Forms
# ------------------------------------------------------------

def test_dm_form_h_entries():
    h = dm_form_h()
    assert h.dim == 6
    assert h.matrix[0, 1] == GaussianInt(1, -1)
    assert h.matrix[4, 2] == GaussianInt(1, 1)
    assert h.matrix[3, 3] == -2


def test_pair_and_norm():
    h = prym_form()
    assert h.norm((1, 0)) == -2
    assert h.pair((1, 0), (0, 1)) == GaussianInt(1, -1)
    assert h.pair((0, 1), (1, 0)) == GaussianInt(1, 1)
    assert h.determinant() == 2


def test_form_from_intersection_is_minus_prym():
    assert form_from_intersection() == -prym_form()


def test_intersection_form_is_skew():
    q = intersection_skew()
    assert q.dim == 4
    assert q.pair((1, 0, 0, 0), (0, 0, 1, 0)) == 2
    assert q.pair((0, 0, 1, 0), (1, 0, 0, 0)) == -2


@pytest.mark.parametrize("rows", [
    [[1, "i"], ["i", 1]],
    [["i", 0], [0, 1]],
])
def test_non_hermitian_matrix_is_rejected(rows):
    with pytest.raises(LatticeError):
        HermitianForm(gaussian_matrix(rows))


def test_non_square_form_is_rejected():
    with pytest.raises(LatticeError):
        HermitianForm(gaussian_matrix([[1, 0, 0]]))


def test_skew_form_rejects_symmetric_matrix():
    with pytest.raises(LatticeError):
        SkewForm(Matrix.from_rows([[0, 1], [1, 0]]))


def test_form_from_intersection_needs_even_rank():
    odd = SkewForm(Matrix.from_rows([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))
    with pytest.raises(DimensionMismatchError):
        form_from_intersection(odd, Matrix.identity(3))


# ------------------------------------------------------------
# Signature
# ------------------------------------------------------------

def test_signature_of_dm_form_h():
    sig = signature(dm_form_h())
    assert sig.as_tuple() == (1, 5, 0)
    assert sig.is_hyperbolic()
    assert str(sig) == "(1, 5, 0)"


def test_prym_form_is_negative_definite():
    sig = signature(prym_form())
    assert sig.as_tuple() == (0, 2, 0)
    assert not sig.is_hyperbolic()
    assert signature(form_from_intersection()).as_tuple() == (2, 0, 0)


def test_all_ones_vector_is_positive_for_h():
    assert dm_form_h().norm((1,) * 6) == 18


@pytest.mark.parametrize("rows,expected", [
    ([[0, 1], [1, 0]], (1, 1, 0)),
    ([[1, 2], [2, 4]], (1, 0, 1)),
    ([[0, 0], [0, -3]], (0, 1, 1)),
    ([[2, 1, 0], [1, 2, 1], [0, 1, 2]], (3, 0, 0)),
])
def test_inertia(rows, expected):
    assert inertia(Matrix.from_rows(rows)) == expected


def test_inertia_rejects_asymmetric():
    with pytest.raises(LatticeError):
        inertia(Matrix.from_rows([[1, 2], [3, 4]]))


def test_signature_of_eisenstein_form():
    h = HermitianForm(eisenstein_matrix([[-3, 0], [0, 1]]))
    assert signature(h).as_tuple() == (1, 1, 0)


# ------------------------------------------------------------
# The group R
# ------------------------------------------------------------

@pytest.mark.parametrize("g", [reflection_alpha(), reflection_beta(), reflection_gamma()])
def test_generators_preserve_the_form_on_rows(g):
    assert preserves_form(g, prym_form(), on_rows=True)
    assert element_order(g) == 2
    UnitaryMatrix(g, prym_form(), on_rows=True)


def test_alpha_times_beta_squares_to_minus_identity():
    ab = reflection_alpha() @ reflection_beta()
    assert ab @ ab == Matrix.identity(2).map(lambda x: -x)
    assert element_order(ab) == 4


def test_non_unitary_matrix_is_rejected():
    with pytest.raises(LatticeError):
        UnitaryMatrix(gaussian_matrix([[2, 0], [0, 1]]), prym_form())


def test_preserves_form_checks_size():
    with pytest.raises(DimensionMismatchError):
        preserves_form(Matrix.identity(3), prym_form())


def test_group_r():
    r = generate_group(r_generators())
    assert r.order == 16
    assert r.census == {1: 1, 2: 7, 4: 8}
    assert is_closed(r.elements)
    assert reflection_gamma() in r
    assert all(preserves_form(g, prym_form(), on_rows=True) for g in r.elements)


def test_center_of_r_is_the_scalars():
    r = generate_group(r_generators())
    assert set(center(r.elements)) == set(scalar_subgroup())


def test_reflections_of_r():
    r = generate_group(r_generators())
    refl = reflections_of(r.elements)
    assert len(refl) == 6
    for g in r_generators():
        assert g in refl


def test_generation_stops_at_cap():
    with pytest.raises(GroupClosureError):
        generate_group(r_generators(), cap=8)
    with pytest.raises(GroupClosureError):
        generate_group([Matrix.from_rows([[1, 1], [0, 1]])], cap=20)


def test_group_cap_comes_from_config():
    set_group_cap(10)
    with pytest.raises(GroupClosureError):
        generate_group(r_generators())


def test_element_order_of_infinite_order_matrix():
    with pytest.raises(GroupClosureError):
        element_order(Matrix.from_rows([[1, 1], [0, 1]]), cap=12)


def test_generate_group_needs_generators():
    with pytest.raises(LatticeError):
        generate_group([])


def test_congruence_level():
    alpha = reflection_alpha()
    assert congruence_level(alpha, GaussianInt(1, 1))
    assert not congruence_level(alpha, GaussianInt(2))
    assert congruence_level(Matrix.identity(2), GaussianInt(3))


# ------------------------------------------------------------
# Triflections
# ------------------------------------------------------------

def test_triflection_multiplies_by_omega():
    form = HermitianForm(eisenstein_matrix([[-3, 0], [0, 1]]))
    t = triflection((1, 0), form)
    assert t == eisenstein_matrix([[OMEGA, 0], [0, 1]])
    assert element_order(t) == 3
    assert preserves_form(t, form)


def test_triflection_needs_norm_minus_three():
    form = HermitianForm(eisenstein_matrix([[-3, 0], [0, 1]]))
    with pytest.raises(TriflectionError):
        triflection((1, 1), form)


def test_non_integral_triflection_is_rejected():
    form = HermitianForm(eisenstein_matrix([[1, 0], [0, -1]]))
    with pytest.raises(TriflectionError):
        triflection((1, 2), form)


def test_triflection_vector_length():
    form = HermitianForm(eisenstein_matrix([[-3]]))
    with pytest.raises(DimensionMismatchError):
        triflection((1, 0), form)


# ------------------------------------------------------------
# Parsing
# ------------------------------------------------------------

def test_parse_gaussian_matrix():
    m = parse_gaussian_matrix('[["-2", "1-i"], ["1+i", "-2"]]')
    assert HermitianForm(m) == prym_form()
    assert parse_gaussian_matrix("[[1, 0], [0, 1]]") == Matrix.identity(2)


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    "[1, 2]",
    "[[true]]",
    '[["1+x"]]',
    "[[1, 2], [3]]",
    "[[1.5]]",
])
def test_parse_gaussian_matrix_rejects(text):
    with pytest.raises(LatticeError):
        parse_gaussian_matrix(text)
