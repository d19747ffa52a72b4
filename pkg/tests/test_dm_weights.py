# test_dm_weights.py - parsing, INT / Sigma-INT classification and the builtin tables
from fractions import Fraction

import pytest

from backend.dm_weights import (
    EISENSTEIN, GAUSSIAN, INT, AmbiguousSymmetrizationError, CollisionError, DMClassification, WeightParseError,
    TableRow, WeightRangeError, WeightSumError, WeightSystem, builtin_tables, classify, collide_embed, collision_map,
    format_weights, parse_weights, render_markdown_rows, verify_tables,
)

F = Fraction


def test_parse_exponent_notation():
    ws = parse_weights("(1/2)(1/3)^4(1/6)")
    assert ws.weights == (F(1, 2), F(1, 3), F(1, 3), F(1, 3), F(1, 3), F(1, 6))
    assert ws.n == 6
    assert ws.common_denominator() == 6


def test_parse_sorts_and_ignores_whitespace():
    ws = parse_weights(" (1/4) ^ 6 (1/2) ")
    assert ws.weights == (F(1, 2),) + (F(1, 4),) * 6


def test_parse_integer_group():
    with pytest.raises(WeightRangeError):
        parse_weights("(1)(1/2)^2")


@pytest.mark.parametrize("text,error", [
    ("", WeightParseError),
    ("1/2 1/2", WeightParseError),
    ("(1/2)^0(1/4)^8", WeightParseError),
    ("(1/0)", WeightParseError),
    ("(1/3)^3", WeightSumError),
    ("(1/4)^9", WeightSumError),
    ("(3/2)(1/2)", WeightRangeError),
])
def test_parse_rejects(text, error):
    with pytest.raises(error):
        parse_weights(text)


def test_sum_error_carries_total():
    with pytest.raises(WeightSumError) as info:
        parse_weights("(1/3)^3")
    assert info.value.total == 1


@pytest.mark.parametrize("text", ["(1/2)(1/3)^4(1/6)", "(1/4)^8", "(5/6)(2/3)(1/6)^3", "(3/4)(1/2)(1/4)^3"])
def test_format_inverts_parse(text):
    assert format_weights(parse_weights(text)) == text


@pytest.mark.parametrize("text,expected", [
    ("(1/3)^6", INT),
    ("(1/6)^12", DMClassification("SigmaINT", m=12)),
    ("(1/4)^8", INT),
    ("(1/2)^2(1/3)^2(1/6)^2", DMClassification("SigmaINT", m=2)),
    ("(5/6)(1/6)^7", DMClassification("SigmaINT", m=7)),
    ("(1/2)(1/3)^4(1/6)", INT),
])
def test_classify(text, expected):
    assert classify(parse_weights(text)) == expected


def test_classify_reports_failing_pairs():
    result = classify(parse_weights("(1/5)^10"))
    assert result.verdict == "Fails"
    assert len(result.witnesses) == 45
    assert result.as_dict()["witnesses"][0] == [0, 1]
    assert str(result) == "Fails(45 witness pairs)"


def test_classify_only_failing_pairs_are_witnesses():
    # 2/5 + 1/5 leaves 2/5; the other pairs are integral or sum to at least 1
    ws = WeightSystem((F(4, 5), F(2, 5), F(2, 5), F(1, 5), F(1, 5)))
    result = classify(ws)
    assert result.verdict == "Fails"
    assert all(ws.weights[i] + ws.weights[j] < 1 for i, j in result.witnesses)


def test_ambiguous_symmetrization_message():
    err = AmbiguousSymmetrizationError([(F(1, 6), 4), (F(3, 10), 2)])
    assert "1/6 (x4)" in str(err)
    assert err.classes[1] == (F(3, 10), 2)


def test_builtin_tables():
    rows = builtin_tables()
    assert len(rows) == 42
    assert sum(1 for r in rows if r.ring == EISENSTEIN) == 36
    assert sum(1 for r in rows if r.ring == GAUSSIAN) == 6
    by_source = {r.source: r for r in rows}
    assert by_source["(5/6)(1/6)^7"].expected == DMClassification("SigmaINT", m=7)
    assert by_source["(5/6)(1/6)^7"].ring == EISENSTEIN
    assert by_source["(3/4)(1/2)(1/4)^3"].expected == INT
    assert by_source["(3/4)(1/2)(1/4)^3"].ring == GAUSSIAN


def test_every_table_row_matches():
    report = verify_tables()
    assert len(report) == 42
    assert [e["input"] for e in report if not e["match"]] == []
    assert all(e["sum"] == "2" for e in report)


def test_verify_tables_flags_a_wrong_row():
    rows = builtin_tables()[:2]
    wrong = TableRow(rows[0].weights, INT, rows[0].ring, rows[0].source)
    report = verify_tables([wrong, rows[1]])
    assert [e["match"] for e in report] == [False, True]
    assert report[0]["verdict"] == "SigmaINT"


def test_verify_tables_checks_ring_denominators():
    row = builtin_tables()[0]
    relabelled = TableRow(row.weights, row.expected, GAUSSIAN, row.source)
    (entry,) = verify_tables([relabelled])
    assert entry["denominator"] == 6
    assert not entry["denominator_ok"]
    assert not entry["match"]


def test_collide_embed_full_split():
    ws = parse_weights("(1/3)^6")
    assert format_weights(collide_embed(ws, [(0, 1), (2, 3), (4, 5)])) == "(1/6)^12"


def test_collide_embed_identity_and_partial():
    ws = parse_weights("(1/4)^8")
    assert collide_embed(ws, []) == ws
    assert format_weights(collide_embed(parse_weights("(1/2)^2(1/4)^4"), [(0, 1)])) == "(1/4)^8"


def test_collision_map_pairs_i_with_i_plus_n():
    ws = parse_weights("(1/3)^6")
    assert collision_map(ws, [(0, 1), (2, 3), (4, 5)]) == [(k, k + 6) for k in range(1, 7)]


@pytest.mark.parametrize("pairing", [[(0, 5)], [(1, 2), (2, 3)], [(1, 1)], [(1, 9)], [(1, 2, 3)]])
def test_collide_embed_rejects_bad_pairings(pairing):
    with pytest.raises(CollisionError):
        collide_embed(parse_weights("(1/2)(1/3)^4(1/6)"), pairing)


def test_render_markdown_rows():
    text = render_markdown_rows(verify_tables())
    assert "### Eisenstein cases" in text
    assert "### Gaussian cases" in text
    assert "| 12 | (1/6)^12 | 12 | pass |" in text
    assert "| 8 | (1/4)^8 |  | pass |" in text


def test_two_relaxed_classes_fail_on_their_cross_pair():
    # 3/10 and 1/6 each pass only the relaxed condition; 3/10 + 1/6 leaves 8/15
    ws = parse_weights("(9/10)(3/10)^2(1/6)^3")
    result = classify(ws)
    assert result.verdict == "Fails"
    assert {(ws.weights[i], ws.weights[j]) for i, j in result.witnesses} == {(F(3, 10), F(1, 6))}
