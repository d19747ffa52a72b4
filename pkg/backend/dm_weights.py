# dm_weights.py - Deligne-Mostow INT / Sigma-INT classification of weight systems
"""
Weight systems are n rational weights 0 < w_i < 1 summing to 2, written in
exponent notation such as "(1/2)(1/3)^4(1/6)".

A pair i != j with w_i + w_j < 1 is integral when 1/(1 - w_i - w_j) is an
integer. A pair of equal weights may instead satisfy the relaxed condition
2/(1 - 2w) integral; an equal-weight class that needs the relaxation makes
the system Sigma-INT with m equal to the size of that class.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from backend.app_logging import get_logger
from backend.file_paths import get_dm_tables_file

logger = get_logger(__name__)

EISENSTEIN = "Eisenstein"
GAUSSIAN = "Gaussian"

# Common denominators allowed for each ring tag
RING_DENOMINATORS = {
    EISENSTEIN: {2, 3, 6},
    GAUSSIAN: {2, 4},
}


class WeightSystemError(ValueError):
    """Base error for weight systems"""


class WeightParseError(WeightSystemError):
    """Malformed exponent notation"""


class WeightSumError(WeightSystemError):
    """Weights do not add up to 2"""

    def __init__(self, total):
        self.total = total
        super().__init__(f"weights sum to {total}, not 2")


class WeightRangeError(WeightSystemError):
    """A weight outside the open interval (0, 1)"""


class AmbiguousSymmetrizationError(WeightSystemError):
    """More than one equal-weight class needs the relaxed condition"""

    def __init__(self, classes):
        self.classes = classes
        listed = ", ".join(f"{w} (x{k})" for w, k in classes)
        super().__init__(f"several equal-weight classes need symmetrization: {listed}")


class CollisionError(WeightSystemError):
    """Invalid pairing for collide_embed"""


@dataclass(frozen=True)
class WeightSystem:
    """Sorted, validated weight list"""

    weights: tuple

    def __post_init__(self):
        ws = tuple(sorted((Fraction(w) for w in self.weights), reverse=True))
        object.__setattr__(self, 'weights', ws)
        for w in ws:
            if not 0 < w < 1:
                raise WeightRangeError(f"weight {w} is outside (0,1)")
        total = sum(ws, Fraction(0))
        if total != 2:
            raise WeightSumError(total)

    @property
    def n(self):
        return len(self.weights)

    def common_denominator(self):
        return common_denominator(self.weights)

    def groups(self):
        """(weight, multiplicity) in non-increasing weight order"""
        out = []
        for w in self.weights:
            if out and out[-1][0] == w:
                out[-1] = (w, out[-1][1] + 1)
            else:
                out.append((w, 1))
        return out

    def __str__(self):
        return format_weights(self)


@dataclass(frozen=True)
class DMClassification:
    """
    verdict is "INT", "SigmaINT" or "Fails".

    m is set for SigmaINT, witnesses (pairs of 0-based indices) for Fails.
    """

    verdict: str
    m: int | None = None
    witnesses: tuple = field(default=())

    def as_dict(self):
        out = {"verdict": self.verdict}
        if self.m is not None:
            out["m"] = self.m
        if self.witnesses:
            out["witnesses"] = [list(p) for p in self.witnesses]
        return out

    def __str__(self):
        if self.verdict == "SigmaINT":
            return f"SigmaINT(m={self.m})"
        if self.verdict == "Fails":
            return f"Fails({len(self.witnesses)} witness pairs)"
        return "INT"


INT = DMClassification("INT")


def common_denominator(weights):
    """Least d with every w_i = m_i/d"""
    return math.lcm(*(Fraction(w).denominator for w in weights))


_GROUP_RE = re.compile(r'\(\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?\)\s*(?:\^\s*([+-]?\d+))?')


def parse_weights(text):
    """
    Parse exponent notation into a WeightSystem.

    Grammar: WS := GROUP+ ; GROUP := "(" FRACTION ")" ("^" INT)?
    Whitespace is ignored.

    Examples:
        parse_weights("(1/2)(1/3)^4(1/6)").weights -> (1/2, 1/3, 1/3, 1/3, 1/3, 1/6)
        parse_weights("(1/3)^3") -> WeightSumError (sum is 1)
    """
    s = text.strip()
    if not s:
        raise WeightParseError("empty weight system")
    weights = []
    pos = 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _GROUP_RE.match(s, pos)
        if not m:
            raise WeightParseError(f"malformed weight group at position {pos}: {s[pos:pos + 12]!r}")
        num, den, exp = m.groups()
        if den is not None and int(den) == 0:
            raise WeightParseError(f"zero denominator in {m.group(0)!r}")
        w = Fraction(int(num), int(den) if den else 1)
        count = int(exp) if exp is not None else 1
        if count < 1:
            raise WeightParseError(f"exponent must be at least 1, got {count}")
        weights.extend([w] * count)
        pos = m.end()
    return WeightSystem(tuple(weights))


def format_weights(ws):
    """
    Exponent notation for a weight system or weight list.

    Examples:
        format_weights(parse_weights("(1/4)^8")) -> "(1/4)^8"
    """
    if not isinstance(ws, WeightSystem):
        ws = WeightSystem(tuple(ws))
    parts = []
    for w, k in ws.groups():
        parts.append(f"({w})" + (f"^{k}" if k > 1 else ""))
    return "".join(parts)


def _integral(x):
    return x.denominator == 1


def classify(ws):
    """
    Classify a weight system under INT and Sigma-INT.

    Pairs with w_i + w_j >= 1 impose no condition.

    Examples:
        classify(parse_weights("(1/3)^6")) -> INT
        classify(parse_weights("(1/6)^12")) -> SigmaINT(m=12)
    """
    weights = ws.weights
    witnesses = []
    relaxed = {}
    for i, j in combinations(range(len(weights)), 2):
        wi, wj = weights[i], weights[j]
        gap = 1 - wi - wj
        if gap <= 0:
            continue
        if _integral(1 / gap):
            continue
        if wi == wj and _integral(2 / gap):
            relaxed.setdefault(wi, set()).update((i, j))
            continue
        witnesses.append((i, j))

    if witnesses:
        return DMClassification("Fails", witnesses=tuple(witnesses))
    if not relaxed:
        return INT

    classes = [(w, weights.count(w)) for w in sorted(relaxed, reverse=True)]
    if len(classes) > 1:
        raise AmbiguousSymmetrizationError(classes)
    return DMClassification("SigmaINT", m=classes[0][1])


@dataclass(frozen=True)
class TableRow:
    weights: WeightSystem
    expected: DMClassification
    ring: str
    source: str


def builtin_tables(path=None):
    """
    The 36 Eisenstein and 6 Gaussian rows of the Deligne-Mostow tables.

    Returns:
        list of TableRow in table order
    """
    path = path or get_dm_tables_file()
    with open(path, encoding='utf-8') as f:
        data = json.load(f)
    rows = []
    for entry in data["rows"]:
        ws = parse_weights(entry["weights"])
        m = entry.get("m")
        expected = INT if m is None else DMClassification("SigmaINT", m=int(m))
        rows.append(TableRow(ws, expected, entry["ring"], entry["weights"]))
    return rows


def verify_tables(rows=None):
    """
    Classify every builtin row and compare with the tabulated m.

    Each report entry is a dict {input, verdict, m?, expected, match} plus
    the ring tag, common denominator and range checks. Mismatches are report
    content, never exceptions.
    """
    rows = builtin_tables() if rows is None else rows
    report = []
    for row in rows:
        entry = {"input": row.source, "ring": row.ring}
        try:
            got = classify(row.weights)
            entry.update({"verdict": got.verdict})
            if got.m is not None:
                entry["m"] = got.m
        except AmbiguousSymmetrizationError as e:
            got = None
            entry["verdict"] = "Ambiguous"
            entry["error"] = str(e)
        entry["expected"] = row.expected.as_dict()
        d = row.weights.common_denominator()
        entry["denominator"] = d
        entry["denominator_ok"] = d in RING_DENOMINATORS.get(row.ring, set())
        entry["n_ok"] = 5 <= row.weights.n <= 12
        entry["sum"] = str(sum(row.weights.weights, Fraction(0)))
        entry["match"] = (got is not None and got.verdict == row.expected.verdict
                          and got.m == row.expected.m
                          and entry["denominator_ok"] and entry["n_ok"])
        if not entry["match"]:
            logger.warning(f"Table row {row.source} does not match: {entry}")
        report.append(entry)
    matched = sum(1 for e in report if e["match"])
    logger.info(f"Deligne-Mostow tables: {matched}/{len(report)} rows match")
    return report


def _check_pairing(ws, pairing):
    seen = set()
    for pair in pairing:
        if len(pair) != 2:
            raise CollisionError(f"{pair} is not a pair")
        i, j = pair
        for k in (i, j):
            if not 0 <= k < ws.n:
                raise CollisionError(f"index {k} out of range for n={ws.n}")
            if k in seen:
                raise CollisionError(f"index {k} appears in more than one pair")
            seen.add(k)
        if i == j:
            raise CollisionError(f"pair {pair} repeats an index")
        if ws.weights[i] != ws.weights[j]:
            raise CollisionError(
                f"pair {pair} has unequal weights {ws.weights[i]} and {ws.weights[j]}")


def _split_items(ws, pairing):
    """Weight items (weight, origin, half) in a stable order before sorting"""
    split = sorted({k for pair in pairing for k in pair})
    kept = [(w, k, 0) for k, w in enumerate(ws.weights) if k not in split]
    firsts = [(ws.weights[k] / 2, k, 1) for k in split]
    seconds = [(ws.weights[k] / 2, k, 2) for k in split]
    items = kept + firsts + seconds
    # stable sort keeps firsts ahead of seconds among equal weights
    return sorted(items, key=lambda item: -item[0])


def collide_embed(ws, pairing):
    """
    Split every point of each equal-weight pair into two points of half weight.

    Applied to all six points of (1/3)^6 this gives (1/6)^12, the system
    whose colliding pairs p_i = p_(i+6) recover the original one.

    Args:
        ws: WeightSystem
        pairing: disjoint pairs of 0-based indices with equal weights

    Returns:
        WeightSystem with n + 2*len(pairing) points
    """
    _check_pairing(ws, pairing)
    if not pairing:
        return ws
    return WeightSystem(tuple(w for w, _, _ in _split_items(ws, pairing)))


def collision_map(ws, pairing):
    """
    1-based index pairs of the split system that collide back to one point.

    Examples:
        collision_map(parse_weights("(1/3)^6"), [(0, 1), (2, 3), (4, 5)])
            -> [(1, 7), (2, 8), (3, 9), (4, 10), (5, 11), (6, 12)]
    """
    _check_pairing(ws, pairing)
    positions = {}
    for pos, (_, origin, half) in enumerate(_split_items(ws, pairing), start=1):
        if half:
            positions.setdefault(origin, []).append(pos)
    return sorted(tuple(p) for p in positions.values())


def render_markdown_rows(report):
    """Markdown table rows mirroring the published layout: n, weights, m"""
    lines = []
    for ring in (EISENSTEIN, GAUSSIAN):
        lines.append(f"### {ring} cases")
        lines.append("")
        lines.append("| Number of points | Weights | m | status |")
        lines.append("|---|---|---|---|")
        for e in report:
            if e["ring"] != ring:
                continue
            ws = parse_weights(e["input"])
            m = e.get("m", "")
            lines.append(f"| {ws.n} | {e['input']} | {m} | {'pass' if e['match'] else 'FAIL'} |")
        lines.append("")
    return "\n".join(lines)


if __name__ == "__main__":
    for row in verify_tables():
        print(f"{row['input']:28} {row['verdict']:9} {row.get('m', ''):>3}  {'ok' if row['match'] else 'MISMATCH'}")
