# hassett_curves.py - weighted stable rational curves, reduction morphisms, boundary census
"""
Combinatorial model of weighted pointed stable curves of genus 0.

A configuration is a tree of components (the dual graph), plus an assignment
of marked indices 1..n to components. Points on one component that coincide
form a coincidence class, named by its smallest member.

Weights are EpsNumber values (rationals are accepted and coerced), so "1/4+e"
means a weight slightly above 1/4 with e a positive infinitesimal.

Config text format:
    "A,B; A-B; {1,2,3}@A 4@B 5@B 6@B 7@B 8@B"
    components ; nodes ; assignments
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from backend.app_logging import get_logger
from backend.exact import EpsNumber, eps_sum

logger = get_logger(__name__)

COINCIDENCE_OVERWEIGHT = "CoincidenceOverweight"
COMPONENT_UNDERWEIGHT = "ComponentUnderweight"


class CurveConfigError(ValueError):
    """Malformed or invalid curve configuration"""


class WeightRangeError(CurveConfigError):
    """A weight outside (0, 1]"""


class WallCrossingError(CurveConfigError):
    """The reduction morphism does not reach a stable curve for the target weights"""

    def __init__(self, reason, config=None):
        self.reason = reason
        self.config = config
        super().__init__(reason)


class CensusError(CurveConfigError):
    """Unsupported point count for the boundary census"""


@dataclass(frozen=True)
class StableCurveConfig:
    """
    Genus-0 nodal curve with marked points.

    components: sorted component ids
    nodes: sorted pairs (A, B) with A < B
    assignment: sorted triples (index, component, class id)
    """

    components: tuple
    nodes: tuple
    assignment: tuple

    def __post_init__(self):
        comps = tuple(sorted(set(self.components)))
        if len(comps) != len(tuple(self.components)):
            raise CurveConfigError("duplicate component id")
        nodes = tuple(sorted(tuple(sorted(pair)) for pair in self.nodes))
        assignment = tuple(sorted(tuple(a) for a in self.assignment))
        object.__setattr__(self, 'components', comps)
        object.__setattr__(self, 'nodes', nodes)
        object.__setattr__(self, 'assignment', assignment)
        self._validate()

    def _validate(self):
        comps = set(self.components)
        if not comps:
            raise CurveConfigError("a curve needs at least one component")
        for a, b in self.nodes:
            if a == b:
                raise CurveConfigError(f"node {a}-{b} joins a component to itself")
            if a not in comps or b not in comps:
                raise CurveConfigError(f"node {a}-{b} uses an unknown component")
        if len(set(self.nodes)) != len(self.nodes):
            raise CurveConfigError("repeated node")
        if len(self.nodes) != len(comps) - 1 or not _connected(comps, self.nodes):
            raise CurveConfigError("dual graph is not a tree")

        indices = [a[0] for a in self.assignment]
        if len(set(indices)) != len(indices):
            raise CurveConfigError("a marked index is assigned twice")
        if sorted(indices) != list(range(1, len(indices) + 1)):
            raise CurveConfigError("marked indices must be exactly 1..n")
        classes = defaultdict(set)
        for index, comp, cls in self.assignment:
            if comp not in comps:
                raise CurveConfigError(f"point {index} lies on unknown component {comp}")
            classes[cls].add((index, comp))
        for cls, members in classes.items():
            if len({c for _, c in members}) != 1:
                raise CurveConfigError(f"coincidence class {cls} spans several components")
            if cls != min(i for i, _ in members):
                raise CurveConfigError(f"coincidence class {cls} is not named by its smallest member")

    @property
    def n(self):
        return len(self.assignment)

    def degree(self, component):
        """Number of nodes on a component"""
        return sum(component in pair for pair in self.nodes)

    def neighbours(self, component):
        return sorted(b if a == component else a for a, b in self.nodes if component in (a, b))

    def points_on(self, component):
        return sorted(index for index, comp, _ in self.assignment if comp == component)

    def classes(self):
        """Coincidence classes as {class id: (component, sorted members)}"""
        out = {}
        for index, comp, cls in self.assignment:
            out.setdefault(cls, (comp, []))[1].append(index)
        return {cls: (comp, sorted(members)) for cls, (comp, members) in out.items()}

    def __str__(self):
        return format_config(self)


def _connected(comps, nodes):
    adj = defaultdict(set)
    for a, b in nodes:
        adj[a].add(b)
        adj[b].add(a)
    start = next(iter(comps))
    seen = {start}
    stack = [start]
    while stack:
        c = stack.pop()
        for d in adj[c]:
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return seen == set(comps)


def make_config(components, nodes, classes):
    """
    Build a config from coincidence classes.

    Args:
        components: iterable of component ids
        nodes: iterable of (A, B) pairs
        classes: iterable of (component, members) with members an iterable of indices
    """
    assignment = []
    for comp, members in classes:
        members = sorted(members)
        for index in members:
            assignment.append((index, comp, members[0]))
    return StableCurveConfig(tuple(components), tuple(nodes), tuple(assignment))


_ASSIGN_RE = re.compile(r'^(?:\{([\d,\s]+)\}|(\d+))@(\w+)$')


def parse_config(text):
    """
    Parse "A,B; A-B; {1,2,3}@A 4@B ..." into a StableCurveConfig.

    Examples:
        parse_config("A; ; 1@A 2@A 3@A").n -> 3
    """
    parts = [p.strip() for p in text.split(';')]
    if len(parts) != 3:
        raise CurveConfigError("config text needs three ';'-separated sections: components; nodes; points")
    comp_text, node_text, point_text = parts
    components = [c.strip() for c in comp_text.split(',') if c.strip()]
    nodes = []
    for token in re.split(r'[\s,]+', node_text):
        if not token:
            continue
        ends = token.split('-')
        if len(ends) != 2 or not all(ends):
            raise CurveConfigError(f"malformed node {token!r}, expected A-B")
        nodes.append((ends[0], ends[1]))
    classes = []
    # tokens are separated by whitespace outside braces
    for token in re.findall(r'\{[^}]*\}@\w+|\S+', point_text):
        m = _ASSIGN_RE.match(token)
        if not m:
            raise CurveConfigError(f"malformed point assignment {token!r}")
        if m.group(1) is not None:
            members = [int(x) for x in re.split(r'[,\s]+', m.group(1).strip()) if x]
        else:
            members = [int(m.group(2))]
        if not members:
            raise CurveConfigError(f"empty coincidence class in {token!r}")
        classes.append((m.group(3), members))
    return make_config(components, nodes, classes)


def format_config(cfg):
    """Inverse of parse_config"""
    comps = ",".join(cfg.components)
    nodes = " ".join(f"{a}-{b}" for a, b in cfg.nodes)
    tokens = []
    for cls, (comp, members) in sorted(cfg.classes().items()):
        if len(members) == 1:
            tokens.append(f"{members[0]}@{comp}")
        else:
            tokens.append("{" + ",".join(str(i) for i in members) + "}@" + comp)
    return f"{comps}; {nodes}; {' '.join(tokens)}"


def uniform_weights(n, eps_coeff=1):
    """(2/n + e)^n as EpsNumber weights"""
    return [EpsNumber(Fraction(2, n), eps_coeff)] * n


_WEIGHT_GROUP_RE = re.compile(r'\(([^()]+)\)(?:\^(\d+))?')


def parse_weight_list(text):
    """
    Weights as "(1/4+e)^8", "(1/2)^2(1/3+e)^3" or a comma-separated list.

    Examples:
        parse_weight_list("(1/4+e)^2") -> [1/4+e, 1/4+e]
        parse_weight_list("1, 1/2, 1/3+2e") -> [1, 1/2, 1/3+2e]
    """
    s = text.replace(' ', '')
    if not s:
        raise CurveConfigError("empty weight list")
    if not s.startswith('('):
        return [EpsNumber.parse(w) for w in s.split(',')]
    weights = []
    pos = 0
    while pos < len(s):
        m = _WEIGHT_GROUP_RE.match(s, pos)
        if not m:
            raise CurveConfigError(f"malformed weight group at position {pos}: {s[pos:pos + 12]!r}")
        count = int(m.group(2)) if m.group(2) else 1
        if count < 1:
            raise CurveConfigError("exponent must be at least 1")
        weights.extend([EpsNumber.parse(m.group(1))] * count)
        pos = m.end()
    return weights


def _coerce_weights(cfg, b):
    weights = []
    for w in b:
        if isinstance(w, str):
            w = EpsNumber.parse(w)
        weights.append(EpsNumber.coerce(w) if not isinstance(w, EpsNumber) else w)
    if len(weights) != cfg.n:
        raise CurveConfigError(f"{len(weights)} weights for {cfg.n} marked points")
    for i, w in enumerate(weights, start=1):
        if not (w > 0 and w <= 1):
            raise WeightRangeError(f"weight b_{i} = {w} is outside (0,1]")
    return weights


@dataclass(frozen=True)
class Violation:
    kind: str
    location: tuple
    value: EpsNumber

    def as_dict(self):
        return {"kind": self.kind, "location": list(self.location), "value": str(self.value)}


@dataclass(frozen=True)
class StabilityVerdict:
    violations: tuple = field(default=())

    @property
    def ok(self):
        return not self.violations

    def as_dict(self):
        return {"ok": self.ok, "violations": [v.as_dict() for v in self.violations]}


def is_weighted_stable(config, b):
    """
    Check both weighted stability conditions and report every violation.

    (3) every coincidence class has total weight <= 1
    (4) every component C has N(C) + (weight of points on C) > 2

    Examples:
        two components {1,2,3} | {4..8} with b = (1/4+e)^8
            -> ComponentUnderweight on the 3-point tail
    """
    weights = _coerce_weights(config, b)
    violations = []
    for cls, (comp, members) in sorted(config.classes().items()):
        total = eps_sum(weights[i - 1] for i in members)
        if total > 1:
            violations.append(Violation(COINCIDENCE_OVERWEIGHT, tuple(members), total))
    for comp in config.components:
        total = eps_sum(weights[i - 1] for i in config.points_on(comp)) + config.degree(comp)
        if not total > 2:
            violations.append(Violation(COMPONENT_UNDERWEIGHT, (comp,), total))
    return StabilityVerdict(tuple(violations))


def _contract_leaf(cfg, leaf):
    """Collapse a tail onto its neighbour; all its points become one class"""
    (target,) = cfg.neighbours(leaf)
    members = cfg.points_on(leaf)
    classes = [(comp, ms) for comp, ms in cfg.classes().values() if comp != leaf]
    if members:
        classes.append((target, members))
    comps = [c for c in cfg.components if c != leaf]
    nodes = [pair for pair in cfg.nodes if leaf not in pair]
    return make_config(comps, nodes, classes), target, members


def _contract_bridge(cfg, comp):
    """Remove a pointless component with two nodes, joining its neighbours"""
    left, right = cfg.neighbours(comp)
    comps = [c for c in cfg.components if c != comp]
    nodes = [pair for pair in cfg.nodes if comp not in pair] + [(left, right)]
    classes = list(cfg.classes().values())
    return make_config(comps, nodes, classes)


def reduction_image(config, b_from, b_to):
    """
    Image of a b_from-stable curve under the reduction morphism to b_to.

    Components failing condition (4) under b_to are contracted, tails first
    in component-id order. A contracted tail's points become one coincidence
    class at the attaching point. A pointless bridge with two nodes is
    removed and its neighbours are joined.

    Raises:
        WallCrossingError when a merged class breaks condition (3), when the
        total weight does not exceed 2, or when no contraction is possible
    """
    src = _coerce_weights(config, b_from)
    dst = _coerce_weights(config, b_to)
    if any(t > s for s, t in zip(src, dst)):
        raise CurveConfigError("reduction needs b_to <= b_from entrywise")
    if not is_weighted_stable(config, src).ok:
        raise CurveConfigError(f"{format_config(config)} is not stable for the source weights")
    total = eps_sum(dst)
    if not total > 2:
        raise WallCrossingError(
            f"total target weight {total} does not exceed 2: no stable model exists", config)

    cfg = config
    while True:
        verdict = is_weighted_stable(cfg, dst)
        if verdict.ok:
            return cfg
        overweight = [v for v in verdict.violations if v.kind == COINCIDENCE_OVERWEIGHT]
        if overweight:
            v = overweight[0]
            raise WallCrossingError(
                f"coincidence class {list(v.location)} has weight {v.value} > 1", cfg)
        underweight = sorted(v.location[0] for v in verdict.violations)
        leaves = [c for c in underweight if cfg.degree(c) <= 1]
        if leaves:
            leaf = leaves[0]
            if cfg.degree(leaf) == 0:
                raise WallCrossingError(f"component {leaf} is unstable and cannot be contracted", cfg)
            cfg, target, members = _contract_leaf(cfg, leaf)
            logger.debug(f"Contracted tail {leaf} onto {target}, class {members}")
            continue
        comp = underweight[0]
        if cfg.degree(comp) == 2 and not cfg.points_on(comp):
            cfg = _contract_bridge(cfg, comp)
            logger.debug(f"Contracted bridge {comp}")
            continue
        raise WallCrossingError(f"component {comp} cannot be contracted", cfg)


def _one_node_split(n, side):
    other = [i for i in range(1, n + 1) if i not in side]
    return make_config(("A", "B"), [("A", "B")],
                       [("A", [i]) for i in side] + [("B", [i]) for i in other])


def git_wall_check(n):
    """
    At b = (2/n)^n exactly the n/2 + n/2 splitting is not stable and cannot
    be reduced: both tails fail condition (4) and contracting either one
    leaves a component of total weight 2.
    """
    if n % 2 or n < 4:
        raise CensusError(f"balanced splitting needs even n >= 4, got {n}")
    cfg = _one_node_split(n, range(1, n // 2 + 1))
    wall = [Fraction(2, n)] * n
    if is_weighted_stable(cfg, wall).ok:
        return False
    try:
        reduction_image(cfg, uniform_weights(n), wall)
    except WallCrossingError:
        return True
    return False


def codim1_strata_census(n, weights=None):
    """
    Count boundary divisors of the weighted space at (2/n + e)^n.

    typeA: pairs of colliding points, C(n, 2)
    typeB: balanced one-node splittings up to swapping sides, C(n, n/2)/2

    Examples:
        codim1_strata_census(8) -> {"typeA": 28, "typeB": 35}
    """
    if n < 6:
        raise CensusError(f"census needs n >= 6, got {n}")
    if n % 2:
        raise CensusError(f"census needs an even number of points, got {n}")
    if weights is not None:
        expected = uniform_weights(n)
        if [EpsNumber.coerce(w) if not isinstance(w, EpsNumber) else w for w in weights] != expected:
            raise CensusError("census is defined for the uniform weights 2/n + e")
    return {"typeA": comb(n, 2), "typeB": comb(n, n // 2) // 2}


def census_bruteforce(n):
    """
    Enumerate every codimension-one degeneration and keep the stable ones.

    Candidates are one-node splittings S | S^c with 2 <= |S| <= n-2 (each
    unordered splitting once) and single colliding pairs on one component.
    """
    weights = uniform_weights(n)
    type_a = 0
    for pair in combinations(range(1, n + 1), 2):
        classes = [("A", list(pair))] + [("A", [i]) for i in range(1, n + 1) if i not in pair]
        if is_weighted_stable(make_config(("A",), (), classes), weights).ok:
            type_a += 1
    type_b = 0
    for size in range(2, n - 1):
        for side in combinations(range(1, n + 1), size):
            if 1 not in side:
                continue
            if is_weighted_stable(_one_node_split(n, side), weights).ok:
                type_b += 1
    return {"typeA": type_a, "typeB": type_b}


if __name__ == "__main__":
    tail = parse_config("A,B; A-B; 1@A 2@A 3@A 4@B 5@B 6@B 7@B 8@B")
    print(is_weighted_stable(tail, uniform_weights(8)).as_dict())
    print(format_config(reduction_image(tail, [1] * 8, uniform_weights(8))))
    print(codim1_strata_census(8), census_bruteforce(8))
