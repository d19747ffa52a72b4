# cubic_pairs.py - Naruki cubic family, limit lines and stability of (S, (1/9+e)B)
"""
Cubic surfaces with their 27 lines weighted by 1/9 + e.

Boundary fibers come in two kinds: irreducible cubics with one to four
ordinary double points (explicit rational models whose lines are all
defined over Q), and the union of three coordinate planes x0*x1*x2 = 0
whose lines are the limits of the 27 lines as rho -> 0, merged into
multiplicities when parameters specialize.

A pair is stable when it is log canonical at every point where two or
more branches meet and its log canonical divisor has positive degree.
Both are decided exactly, with e a formal positive infinitesimal.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations

from backend.app_logging import get_logger
from backend.exact import EpsNumber, Matrix, as_rational, eps_sum
from backend.file_paths import (
    get_cayley_labels_file,
    get_nodal_models_file,
    get_stratum_census_file,
    get_tritangents_file,
)
from backend.polyring import (
    Ideal,
    Poly,
    format_poly,
    hilbert_polynomial,
    ideal_intersect,
    ideal_sum,
    intersect_all,
    parse_poly,
)

logger = get_logger(__name__)

KSBA_COEFFICIENT = EpsNumber(Fraction(1, 9), 1)
LC_BOUND = 2
LINE_COUNT = 27
LINES_PER_PLANE = 9

SMOOTH = "Smooth"
IRREDUCIBLE_STRATA = ("Smooth", "A1", "A1^2", "A1^3", "A1^4")
THREE_PLANE_STRATA = ("N", "A1-N", "A1^2-N", "A1^3-N")
STRATA = IRREDUCIBLE_STRATA + THREE_PLANE_STRATA

GENERIC_PARAMETERS = (Fraction(2), Fraction(3), Fraction(5), Fraction(7))


class CubicPairsError(ValueError):
    """Base error for cubic surface pairs"""


class UnknownTritangentError(CubicPairsError):
    """Tritangent without a stored equation"""


class StratumError(CubicPairsError):
    """Unknown stratum, or parameters outside it"""


class IncidenceError(CubicPairsError):
    """Lines, points and surface do not fit together"""


class UnsupportedConfigurationError(CubicPairsError):
    """No configuration ideal is defined for this stratum"""


class CrossRatioError(CubicPairsError):
    """Points coincide or are not collinear"""


# ------------------------------------------------------------
# Strata and parameters
# ------------------------------------------------------------

_SUPERSCRIPTS = str.maketrans({'²': '2', '³': '3', '⁴': '4'})
_PAIR_RE = re.compile(r'\(?(a1(?:\^?[234])?),n\)?')


def normalize_stratum(name):
    """
    Canonical stratum name.

    Examples:
        normalize_stratum("(A1^3,N)") -> "A1^3-N"
        normalize_stratum("a1²") -> "A1^2"
    """
    s = str(name).strip().replace(' ', '').translate(_SUPERSCRIPTS).lower()
    s = re.sub(r'^a1\^?([234])', r'a1^\1', s)
    m = _PAIR_RE.fullmatch(s)
    if m:
        s = re.sub(r'^a1\^?([234])', r'a1^\1', m.group(1)) + '-n'
    for canonical in STRATA:
        if canonical.lower() == s:
            return canonical
    raise StratumError(f"unknown stratum {name!r}; expected one of {', '.join(STRATA)}")


@dataclass(frozen=True)
class NarukiParams:
    """Torus coordinates (lambda, mu, nu, rho)"""

    lam: Fraction
    mu: Fraction
    nu: Fraction
    rho: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ('lam', 'mu', 'nu', 'rho'):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    def as_tuple(self):
        return (self.lam, self.mu, self.nu, self.rho)

    def __str__(self):
        return f"(lambda, mu, nu, rho) = ({self.lam}, {self.mu}, {self.nu}, {self.rho})"


# Which of lambda, mu, nu vanish on each type N stratum
_VANISHING = {
    "N": (),
    "A1-N": ("lam",),
    "A1^2-N": ("lam", "mu"),
    "A1^3-N": ("lam", "mu", "nu"),
}


def stratum_parameters(stratum):
    """
    Default parameters of a stratum.

    Type N strata sit over rho = 0 with lambda, mu, nu either 0 or generic
    (2, 3, 5). Smooth uses the generic point (2, 3, 5, 7). Nodal strata use
    explicit models and return None.
    """
    s = normalize_stratum(stratum)
    if s == SMOOTH:
        return NarukiParams(*GENERIC_PARAMETERS)
    if s not in _VANISHING:
        return None
    values = dict(zip(('lam', 'mu', 'nu'), GENERIC_PARAMETERS[:3]))
    for name in _VANISHING[s]:
        values[name] = Fraction(0)
    return NarukiParams(values['lam'], values['mu'], values['nu'], Fraction(0))


def validate_parameters(stratum, params):
    """Raise StratumError unless params lie on the given type N stratum"""
    s = normalize_stratum(stratum)
    if s not in _VANISHING:
        raise StratumError(f"{s} is not a type N stratum")
    if params.rho != 0:
        raise StratumError(f"{s} lies over rho = 0, got rho = {params.rho}")
    for name in ('lam', 'mu', 'nu'):
        value = getattr(params, name)
        if name in _VANISHING[s]:
            if value != 0:
                raise StratumError(f"{s} needs {name} = 0, got {value}")
        elif value in (0, 1):
            raise StratumError(f"{s} needs {name} outside {{0, 1}}, got {value}")


# ------------------------------------------------------------
# The Naruki family and two tritangents
# ------------------------------------------------------------

def _naruki_expression(x, lam, mu, nu, rho):
    x0, x1, x2, x3 = x
    k = (rho - 1) * (lam * mu * nu * rho - 1)
    inner = (lam * x0 ** 2 + mu * x1 ** 2 + nu * x2 ** 2 + k ** 2 * x3 ** 2
             + (mu * nu + 1) * x1 * x2 + (lam * nu + 1) * x0 * x2 + (lam * mu + 1) * x0 * x1
             - k * x3 * ((lam + 1) * x0 + (mu + 1) * x1 + (nu + 1) * x2))
    return rho * x3 * inner + x0 * x1 * x2


def naruki_cubic(params):
    """
    The fiber of the Naruki family over (lambda, mu, nu, rho).

    Examples:
        naruki_cubic(NarukiParams(2, 3, 5, 0)) -> x0*x1*x2
    """
    return _naruki_expression(Poly.variables(4), *params.as_tuple())


def naruki_cubic_symbolic():
    """The whole family in Q[x0..x3, lambda, mu, nu, rho], parameters as x4..x7"""
    v = Poly.variables(8)
    return _naruki_expression(v[:4], *v[4:])


TRITANGENTS = ("p,", "theta")
_TRITANGENT_ALIASES = {
    "p,": "p,", "(p,)": "p,", "p": "p,",
    "theta": "theta", "(theta)": "theta", "θ": "theta", "(θ)": "theta",
}


def _tritangent_name(name):
    key = str(name).strip().replace(' ', '').lower()
    if key not in _TRITANGENT_ALIASES:
        raise UnknownTritangentError(f"no equation stored for tritangent {name!r}; known: (p,), (theta)")
    return _TRITANGENT_ALIASES[key]


def _tritangent_expression(name, x, lam, mu, nu, rho):
    x0, x1, x2, x3 = x
    if name == "p,":
        return (x0 + mu * rho * x1 + nu * rho * x2
                - rho * (rho - 1) * (lam * mu * nu * rho + mu * nu - mu - mu) * x3)
    return (lam * x0 + mu * x1 + nu * x2
            - ((rho - 1) * (lam * mu * nu * rho - 1) - rho * (lam - 1) * (mu - 1) * (nu - 1)) * x3)


def tritangent_plane(name, params):
    """Linear form of the tritangent (p,) or (theta) on the fiber over params"""
    return _tritangent_expression(_tritangent_name(name), Poly.variables(4), *params.as_tuple())


def tritangent_plane_symbolic(name):
    v = Poly.variables(8)
    return _tritangent_expression(_tritangent_name(name), v[:4], *v[4:])


def tritangent_limit(name, params):
    """
    The tritangent at rho = 0.

    Examples:
        (p,)    -> x0
        (theta) -> lambda*x0 + mu*x1 + nu*x2 - x3
    """
    return tritangent_plane(name, replace(params, rho=Fraction(0)))


def linear_coefficients(form):
    """Coefficient vector of a linear form in x0..x3"""
    if form.degree() > 1 or form.constant_term():
        raise IncidenceError(f"{format_poly(form)} is not a linear form")
    coeffs = [Fraction(0)] * form.nvars
    for e, c in form.terms.items():
        coeffs[e.index(1)] = c
    return tuple(coeffs)


# ------------------------------------------------------------
# Lines in P^3
# ------------------------------------------------------------

def normalize_point(v):
    """Projective point scaled so its first nonzero coordinate is 1"""
    v = tuple(as_rational(x) for x in v)
    lead = next((x for x in v if x != 0), None)
    if lead is None:
        raise IncidenceError("the zero vector is not a projective point")
    return tuple(x / lead for x in v)


def format_point(p):
    return "[" + ":".join(str(x) for x in p) + "]"


def _dot(f, p):
    return sum((a * b for a, b in zip(f, p)), Fraction(0))


@dataclass(frozen=True, eq=False)
class Line3:
    """
    A line given by two independent linear forms and two spanning points.

    Both descriptions are kept and checked against each other. Equality
    compares the spanned line.
    """

    forms: tuple
    points: tuple

    def __post_init__(self):
        forms = tuple(tuple(as_rational(c) for c in f) for f in self.forms)
        points = tuple(normalize_point(p) for p in self.points)
        object.__setattr__(self, 'forms', forms)
        object.__setattr__(self, 'points', points)
        if len(forms) != 2 or len(points) != 2:
            raise IncidenceError("a line needs two forms and two points")
        if Matrix.from_rows(list(forms)).rank() != 2:
            raise IncidenceError("the two forms are dependent")
        if Matrix.from_rows(list(points)).rank() != 2:
            raise IncidenceError("the two points coincide")
        for f in forms:
            for p in points:
                if _dot(f, p) != 0:
                    raise IncidenceError(f"point {format_point(p)} is not on the plane {f}")

    @classmethod
    def from_forms(cls, f, g):
        f = tuple(as_rational(c) for c in f)
        g = tuple(as_rational(c) for c in g)
        if Matrix.from_rows([f, g]).rank() != 2:
            raise IncidenceError("the two forms are dependent")
        return cls((f, g), tuple(Matrix.from_rows([f, g]).nullspace()))

    @classmethod
    def through(cls, p, q):
        p = normalize_point(p)
        q = normalize_point(q)
        m = Matrix.from_rows([p, q])
        if m.rank() != 2:
            raise IncidenceError(f"{format_point(p)} and {format_point(q)} coincide")
        return cls(tuple(m.nullspace()), (p, q))

    def key(self):
        reduced, _ = Matrix.from_rows(list(self.points)).rref()
        return reduced.entries

    def __eq__(self, other):
        if not isinstance(other, Line3):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def contains(self, point):
        return all(_dot(f, point) == 0 for f in self.forms)

    def meet(self, other):
        """Intersection point, None for skew lines"""
        kernel = Matrix.from_rows(list(self.forms) + list(other.forms)).nullspace()
        if len(kernel) == 0:
            return None
        if len(kernel) == 1:
            return normalize_point(kernel[0])
        raise IncidenceError("the lines coincide")

    def form_polys(self):
        return tuple(Poly.linear(f) for f in self.forms)

    def parametrized(self, s, t):
        p, q = self.points
        return tuple(s * a + t * b for a, b in zip(p, q))

    def __str__(self):
        return f"{format_point(self.points[0])}-{format_point(self.points[1])}"


def naruki_line_a1():
    """The line x0 = x3 = 0, which lies on every fiber"""
    return Line3.from_forms((1, 0, 0, 0), (0, 0, 0, 1))


def line_on_surface(poly, line):
    """A cubic vanishing at four points of a line contains it"""
    return all(poly.evaluate(line.parametrized(s, t)) == 0 for s, t in ((1, 0), (0, 1), (1, 1), (1, 2)))


# ------------------------------------------------------------
# Limit lines on x0*x1*x2 = 0
# ------------------------------------------------------------

# point family -> coordinate carrying it; plane x_a = 0 -> the two families on it
_FAMILY_COORD = {"A": 0, "B": 1, "C": 2}
_PLANE_FAMILIES = {0: ("B", "C"), 1: ("A", "C"), 2: ("A", "B")}


def limit_points(lam, mu, nu):
    """
    A_i = [1:0:0:a_i], B_j = [0:1:0:b_j], C_k = [0:0:1:c_k] with
    (a, b, c) values (0, 1, lambda), (0, 1, mu), (0, 1, nu).
    """
    values = {"A": (0, 1, as_rational(lam)), "B": (0, 1, as_rational(mu)), "C": (0, 1, as_rational(nu))}
    points = {}
    for family, coord in _FAMILY_COORD.items():
        for i, v in enumerate(values[family], start=1):
            p = [Fraction(0)] * 4
            p[coord] = Fraction(1)
            p[3] = Fraction(v)
            points[f"{family}{i}"] = tuple(p)
    return points


@dataclass(frozen=True)
class LimitLine:
    label: str
    plane: int
    line: Line3
    ends: tuple


def plane_of(label):
    """Plane index of a limit line label such as "A2C3" (x1 = 0 -> 1)"""
    families = (label[0], label[2])
    for plane, fams in _PLANE_FAMILIES.items():
        if fams == families:
            return plane
    raise IncidenceError(f"{label!r} is not a limit line label")


def limit_lines(lam, mu, nu):
    """
    The nine lines on each plane x_a = 0.

    On x0 = 0 the line through B_i and C_j is x3 - b_i*x1 - c_j*x2 = 0, and
    likewise on x1 = 0 (A, C) and x2 = 0 (A, B).

    Returns:
        {plane index: [LimitLine, ...]} with nine lines per plane
    """
    points = limit_points(lam, mu, nu)
    out = {}
    for plane, (u, v) in _PLANE_FAMILIES.items():
        plane_form = tuple(Fraction(1 if k == plane else 0) for k in range(4))
        lines = []
        for i in range(1, 4):
            for j in range(1, 4):
                pu, pv = points[f"{u}{i}"], points[f"{v}{j}"]
                form = [Fraction(0)] * 4
                form[3] = Fraction(1)
                form[_FAMILY_COORD[u]] = -pu[3]
                form[_FAMILY_COORD[v]] = -pv[3]
                line = Line3.from_forms(plane_form, tuple(form))
                lines.append(LimitLine(f"{u}{i}{v}{j}", plane, line, (f"{u}{i}", f"{v}{j}")))
        out[plane] = lines
    return out


# ------------------------------------------------------------
# Labels and tritangent combinatorics
# ------------------------------------------------------------

def cayley_labels(path=None):
    """Cayley label -> limit line label, e.g. "a1" -> "B1C1" """
    with open(path or get_cayley_labels_file(), encoding='utf-8') as f:
        return dict(json.load(f)["labels"])


@dataclass(frozen=True)
class Tritangent:
    schlafli: str
    cayley: str
    lines: tuple


def tritangent_partition(path=None):
    """The nine tritangent planes that together contain every line once"""
    with open(path or get_tritangents_file(), encoding='utf-8') as f:
        data = json.load(f)
    return [Tritangent(t["schlafli"], t["cayley"], tuple(t["lines"])) for t in data["tritangents"]]


def schlafli_labels():
    """a1..a6, b1..b6 and c_ij for i < j"""
    return ([f"a{i}" for i in range(1, 7)] + [f"b{i}" for i in range(1, 7)]
            + [f"c{i}{j}" for i, j in combinations(range(1, 7), 2)])


_SCHLAFLI_RE = re.compile(r'([ab])([1-6])|c([1-6])([1-6])')


def _parse_schlafli(label):
    m = _SCHLAFLI_RE.fullmatch(label)
    if not m or (m.group(3) and m.group(3) >= m.group(4)):
        raise IncidenceError(f"{label!r} is not a Schlafli label")
    if m.group(1):
        return m.group(1), {int(m.group(2))}
    return "c", {int(m.group(3)), int(m.group(4))}


def schlafli_meets(l1, l2):
    """
    Whether two distinct lines of a smooth cubic meet.

    a_i meets b_j for i != j; a_i and b_i meet c_jk when i is in {j, k};
    c_ij meets c_kl when the index pairs are disjoint.
    """
    k1, s1 = _parse_schlafli(l1)
    k2, s2 = _parse_schlafli(l2)
    if l1 == l2:
        return False
    if k1 > k2:
        k1, s1, k2, s2 = k2, s2, k1, s1
    if k1 == k2 and k1 in "ab":
        return False
    if (k1, k2) == ("a", "b"):
        return s1 != s2
    if k2 == "c" and k1 in "ab":
        return s1 <= s2
    return not (s1 & s2)


# ------------------------------------------------------------
# Surfaces and weighted configurations
# ------------------------------------------------------------

@dataclass(frozen=True)
class IrreducibleCubic:
    poly: Poly
    nodes: tuple = ()

    kind = "irreducible"

    def __post_init__(self):
        object.__setattr__(self, 'nodes', tuple(normalize_point(p) for p in self.nodes))


@dataclass(frozen=True)
class ThreePlanes:
    """x0*x1*x2 = 0; plane a is x_a = 0"""

    planes: tuple = (0, 1, 2)

    kind = "three-planes"

    @property
    def poly(self):
        x = Poly.variables(4)
        return x[0] * x[1] * x[2]

    def conductor(self, plane):
        """Double lines x_a = x_b = 0 lying on plane a"""
        unit = [tuple(Fraction(1 if k == a else 0) for k in range(4)) for a in range(4)]
        return [Line3.from_forms(unit[plane], unit[b]) for b in self.planes if b != plane]


@dataclass(frozen=True)
class WeightedLine:
    label: str
    multiplicity: int
    line: Line3 | None = None
    plane: int | None = None


@dataclass(frozen=True)
class PairConfig:
    """
    A surface with weighted lines and the coefficient c of the boundary.

    Lines without geometry (line=None) belong to the smooth stratum, whose
    incidence follows the Schlafli rule.
    """

    stratum: str
    surface: object
    lines: tuple
    coefficient: EpsNumber = KSBA_COEFFICIENT

    def __post_init__(self):
        object.__setattr__(self, 'lines', tuple(self.lines))
        object.__setattr__(self, 'coefficient', EpsNumber.coerce(self.coefficient))
        for wl in self.lines:
            if not isinstance(wl.multiplicity, int) or wl.multiplicity < 1:
                raise IncidenceError(f"line {wl.label} has multiplicity {wl.multiplicity!r}")
        if isinstance(self.surface, IrreducibleCubic):
            for p in self.surface.nodes:
                if self.surface.poly.evaluate(p) != 0:
                    raise IncidenceError(f"node {format_point(p)} is not on the surface")
            for wl in self.lines:
                if wl.line is not None and not line_on_surface(self.surface.poly, wl.line):
                    raise IncidenceError(f"line {wl.label} = {wl.line} is not on the surface")
        elif isinstance(self.surface, ThreePlanes):
            for wl in self.lines:
                if wl.plane not in self.surface.planes or wl.line is None:
                    raise IncidenceError(f"line {wl.label} has no plane")
                unit = tuple(Fraction(1 if k == wl.plane else 0) for k in range(4))
                if not all(_dot(unit, p) == 0 for p in wl.line.points):
                    raise IncidenceError(f"line {wl.label} does not lie on x{wl.plane} = 0")

    @property
    def is_combinatorial(self):
        return any(wl.line is None for wl in self.lines)

    def total_multiplicity(self):
        return sum(wl.multiplicity for wl in self.lines)

    def census(self):
        """{multiplicity: number of lines}"""
        return dict(sorted(Counter(wl.multiplicity for wl in self.lines).items(), reverse=True))

    def plane_lines(self, plane):
        return [wl for wl in self.lines if wl.plane == plane]

    def plane_census(self, plane):
        return dict(sorted(Counter(wl.multiplicity for wl in self.plane_lines(plane)).items(), reverse=True))

    def line(self, label):
        for wl in self.lines:
            if wl.label == label:
                return wl
        raise IncidenceError(f"no line labelled {label!r}")

    def with_coefficient(self, c):
        return replace(self, coefficient=EpsNumber.coerce(c) if not isinstance(c, str) else EpsNumber.parse(c))

    def with_multiplicity(self, label, multiplicity):
        """Copy with one line's multiplicity changed"""
        self.line(label)
        lines = tuple(replace(wl, multiplicity=multiplicity) if wl.label == label else wl for wl in self.lines)
        return replace(self, lines=lines)


# ------------------------------------------------------------
# Nodal models
# ------------------------------------------------------------

def _load_models(path=None):
    with open(path or get_nodal_models_file(), encoding='utf-8') as f:
        return json.load(f)["models"]


def load_stratum_census(path=None):
    with open(path or get_stratum_census_file(), encoding='utf-8') as f:
        return json.load(f)


def _one_node_lines(poly, node, directions):
    """
    Lines of a cubic with one node at e0 = [1:0:0:0].

    Writing F = x0*Q(y) + C(y), the six lines through the node point along
    the common zeros y of Q and C. The plane through two of them meets the
    surface in a third line, B*s + c1*u + c2*v = 0 in the coordinates
    s*e0 + u*P + v*Q, with B = Q(P+Q), c1 + c2 = C(P+Q), 2c1 + 4c2 = C(P+2Q).
    """
    if node != (1, 0, 0, 0):
        raise IncidenceError("one-node models must have their node at [1:0:0:0]")
    if any(e[0] > 1 for e in poly.terms):
        raise IncidenceError("the surface is not linear in x0")
    quad = poly.partial(0)
    cubic = poly.substitute({0: 0})

    def lift(y):
        return (Fraction(0),) + tuple(as_rational(c) for c in y)

    dirs = [lift(y) for y in directions]
    for y in dirs:
        if quad.evaluate(y) != 0 or cubic.evaluate(y) != 0:
            raise IncidenceError(f"direction {format_point(y)} is not a line through the node")

    e0 = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    through = [Line3.through(e0, y) for y in dirs]
    residual = []
    for p, q in combinations(dirs, 2):
        pq = tuple(a + b for a, b in zip(p, q))
        p2q = tuple(a + 2 * b for a, b in zip(p, q))
        b = quad.evaluate(pq)
        if b == 0:
            raise IncidenceError(f"the plane through {format_point(p)} and {format_point(q)} is tangent")
        s1, s2 = cubic.evaluate(pq), cubic.evaluate(p2q)
        c2 = (s2 - 2 * s1) / 2
        c1 = s1 - c2
        residual.append(Line3.through((-c1 / b,) + p[1:], (-c2 / b,) + q[1:]))
    return through + residual


@dataclass(frozen=True)
class NodalModel:
    stratum: str
    poly: Poly
    nodes: tuple
    lines: tuple


def nodal_model(stratum, path=None):
    """
    Rational cubic with the stratum's number of nodes and its lines.

    The lines of the one-node model are derived from its node directions;
    the others are read as point pairs.
    """
    s = normalize_stratum(stratum)
    models = _load_models(path)
    if s not in models:
        raise StratumError(f"no nodal model for {s}")
    data = models[s]
    poly = parse_poly(data["surface"], 4)
    nodes = tuple(normalize_point(p) for p in data["nodes"])
    if "node_directions" in data:
        lines = _one_node_lines(poly, nodes[0], data["node_directions"])
    else:
        lines = [Line3.through(p, q) for p, q in data["lines"]]
    if len(set(lines)) != len(lines):
        raise IncidenceError(f"the {s} model lists a line twice")
    return NodalModel(s, poly, nodes, tuple(lines))


def cayley_cubic():
    """x0*x1*x2 + x0*x1*x3 + x0*x2*x3 + x1*x2*x3"""
    return parse_poly("x0*x1*x2 + x0*x1*x3 + x0*x2*x3 + x1*x2*x3", 4)


def _hessian(poly, point):
    n = poly.nvars
    return Matrix.from_rows([[poly.partial(i).partial(j).evaluate(point) for j in range(n)] for i in range(n)])


def verify_singular_points(surface):
    """
    Check every listed node: on the surface, vanishing gradient, and a
    tangent cone of rank 3 (an A1 point).

    Returns:
        list of dicts {point, on_surface, gradient_zero, hessian_rank, ok}
    """
    out = []
    for p in surface.nodes:
        on = surface.poly.evaluate(p) == 0
        grad = all(surface.poly.partial(i).evaluate(p) == 0 for i in range(4))
        rank = _hessian(surface.poly, p).rank()
        out.append({"point": format_point(p), "on_surface": on, "gradient_zero": grad,
                    "hessian_rank": rank, "ok": on and grad and rank == 3})
    return out


def tjurina_total(poly, degree_bound=None):
    """Hilbert polynomial of (F, dF/dx_i): the total Tjurina number for isolated singularities"""
    gens = (poly,) + tuple(poly.partial(i) for i in range(poly.nvars))
    return hilbert_polynomial(Ideal(tuple(g for g in gens if g), poly.nvars), degree_bound)


# ------------------------------------------------------------
# Stratum configurations
# ------------------------------------------------------------

def _smooth_config(coefficient):
    params = stratum_parameters(SMOOTH)
    surface = IrreducibleCubic(naruki_cubic(params))
    lines = tuple(WeightedLine(label, 1) for label in schlafli_labels())
    return PairConfig(SMOOTH, surface, lines, coefficient)


def _nodal_config(stratum, coefficient):
    model = nodal_model(stratum)
    surface = IrreducibleCubic(model.poly, model.nodes)
    lines = []
    for k, line in enumerate(model.lines, start=1):
        on_line = sum(1 for p in model.nodes if line.contains(p))
        lines.append(WeightedLine(f"L{k}", 2 ** on_line, line))
    return PairConfig(model.stratum, surface, tuple(lines), coefficient)


def _three_plane_config(stratum, params, coefficient):
    params = params or stratum_parameters(stratum)
    validate_parameters(stratum, params)
    lines = []
    for plane, plane_lines in limit_lines(params.lam, params.mu, params.nu).items():
        merged = {}
        for ll in plane_lines:
            merged.setdefault(ll.line, []).append(ll.label)
        for line, labels in merged.items():
            lines.append(WeightedLine("+".join(labels), len(labels), line, plane))
    return PairConfig(stratum, ThreePlanes(), tuple(lines), coefficient)


def stratum_config(stratum, params=None, coefficient=KSBA_COEFFICIENT):
    """
    The pair (S0, c*B0) of a boundary stratum.

    Args:
        stratum: one of STRATA (aliases such as "(A1,N)" accepted)
        params: NarukiParams for type N strata, defaults per stratum
        coefficient: c, 1/9 + e unless given

    Raises:
        StratumError for unknown strata or parameters off the stratum
    """
    s = normalize_stratum(stratum)
    if s == SMOOTH:
        cfg = _smooth_config(coefficient)
    elif s in IRREDUCIBLE_STRATA:
        cfg = _nodal_config(s, coefficient)
    else:
        cfg = _three_plane_config(s, params, coefficient)
    logger.debug(f"{s}: {len(cfg.lines)} lines, census {cfg.census()}")
    return cfg


def expected_census(stratum, path=None):
    """Tabulated multiplicity census; per plane for type N strata"""
    s = normalize_stratum(stratum)
    data = load_stratum_census(path)
    if s in data["irreducible"]:
        return {int(k): v for k, v in data["irreducible"][s]["census"].items()}
    return [{int(k): v for k, v in plane.items()} for plane in data["three_planes"][s]["planes"]]


# ------------------------------------------------------------
# Log canonicity
# ------------------------------------------------------------

@dataclass(frozen=True)
class PointCheck:
    """Coefficient sum and discrepancy at one point; ok iff sum <= 2 and no coefficient exceeds 1"""

    kind: str
    coefficients: tuple
    total: EpsNumber
    discrepancy: EpsNumber
    ok: bool
    point: str | None = None
    plane: int | None = None

    def as_dict(self):
        out = {"point": self.point, "kind": self.kind, "sum": str(self.total),
               "discrepancy": str(self.discrepancy), "ok": self.ok,
               "coefficients": [str(c) for c in self.coefficients]}
        if self.plane is not None:
            out["plane"] = self.plane
        return out


def _coefficients(coeffs):
    values = tuple(EpsNumber.coerce(c) if not isinstance(c, str) else EpsNumber.parse(c) for c in coeffs)
    for c in values:
        if c is NotImplemented or not c > 0:
            raise CubicPairsError(f"boundary coefficients must be positive, got {c}")
    return values


def lc_at_smooth_point(coeffs):
    """
    Curves through a smooth point of the surface with coefficients in (0, 1].

    Discrepancy of the blow-up is 1 - sum.

    Examples:
        three lines at 1/9+e -> sum 1/3+3e, ok, discrepancy 2/3-3e
    """
    values = _coefficients(coeffs)
    total = eps_sum(values)
    ok = total <= LC_BOUND and all(c <= 1 for c in values)
    return PointCheck("smooth", values, total, 1 - total, ok)


def lc_at_A1(coeffs):
    """
    Lines through an ordinary double point.

    Discrepancy of the exceptional conic is -sum/2.

    Examples:
        six double lines at 1/9+e -> sum 4/3+12e, ok
    """
    values = _coefficients(coeffs)
    total = eps_sum(values)
    ok = total <= LC_BOUND and all(c <= 1 for c in values)
    return PointCheck("A1", values, total, -total / 2, ok)


@dataclass(frozen=True)
class IncidencePoint:
    point: object
    lines: tuple
    conductor: int = 0
    singular: bool = False
    plane: int | None = None

    @property
    def branches(self):
        return len(self.lines) + self.conductor

    @property
    def name(self):
        return self.point if isinstance(self.point, str) else format_point(self.point)


def _group_points(items, extra=()):
    """Pairwise intersections of (tag, Line3) items plus extra points"""
    found = {}
    for p in extra:
        found[p] = None
    for (_, l1), (_, l2) in combinations(items, 2):
        if l1 == l2:
            raise IncidenceError("two branches share the same line")
        p = l1.meet(l2)
        if p is not None:
            found[p] = None
    return sorted(found)


def incidence_points(cfg):
    """
    Every point where two or more branches of the boundary meet, plus the nodes.

    On three planes each plane is treated separately, and the two double
    lines x_a = x_b = 0 on plane a count as conductor branches.
    """
    if cfg.is_combinatorial:
        labels = [wl.label for wl in cfg.lines]
        return [IncidencePoint(f"{a}.{b}", (a, b)) for a, b in combinations(labels, 2) if schlafli_meets(a, b)]

    out = []
    if isinstance(cfg.surface, ThreePlanes):
        for plane in cfg.surface.planes:
            lines = [(wl.label, wl.line) for wl in cfg.plane_lines(plane)]
            conductor = [("conductor", c) for c in cfg.surface.conductor(plane)]
            for p in _group_points(lines + conductor):
                through = tuple(label for label, line in lines if line.contains(p))
                cond = sum(1 for _, line in conductor if line.contains(p))
                if len(through) + cond >= 2:
                    out.append(IncidencePoint(p, through, cond, False, plane))
        return out

    lines = [(wl.label, wl.line) for wl in cfg.lines]
    nodes = set(cfg.surface.nodes)
    for p in _group_points(lines, cfg.surface.nodes):
        through = tuple(label for label, line in lines if line.contains(p))
        if len(through) >= 2 or p in nodes:
            out.append(IncidencePoint(p, through, 0, p in nodes))
    return out


def multiple_points(cfg):
    """Points with at least three branches, conductor branches included"""
    return [p for p in incidence_points(cfg) if p.branches >= 3]


@dataclass(frozen=True)
class LCVerdict:
    ok: bool
    worst: PointCheck | None
    points: tuple

    def as_dict(self):
        return {"ok": self.ok, "worst": self.worst.as_dict() if self.worst else None,
                "points": [p.as_dict() for p in self.points]}


def log_canonical(cfg):
    """lc check at every incidence point"""
    mult = {wl.label: wl.multiplicity for wl in cfg.lines}
    c = cfg.coefficient
    checks = []
    for ip in incidence_points(cfg):
        coeffs = [c * mult[label] for label in ip.lines] + [EpsNumber(1)] * ip.conductor
        check = lc_at_A1(coeffs) if ip.singular else lc_at_smooth_point(coeffs)
        checks.append(replace(check, point=ip.name, plane=ip.plane))
    worst = max(checks, key=lambda chk: chk.total, default=None)
    return LCVerdict(all(chk.ok for chk in checks), worst, tuple(checks))


def ampleness(cfg):
    """
    Degree of K + c*B in units of the hyperplane class, per component.

    An irreducible cubic has K = -H and B = (sum of multiplicities / 3) H.
    On plane a of three planes K + conductor = -3 + 2 and B has degree
    equal to the plane's multiplicity sum.

    Returns:
        list of (component name, EpsNumber)
    """
    c = cfg.coefficient
    if isinstance(cfg.surface, ThreePlanes):
        out = []
        for plane in cfg.surface.planes:
            total = sum(wl.multiplicity for wl in cfg.plane_lines(plane))
            conductor = len(cfg.surface.conductor(plane))
            out.append((f"H{plane}", -3 + conductor + c * total))
        return out
    return [("S", -1 + c * Fraction(cfg.total_multiplicity(), 3))]


@dataclass(frozen=True)
class PairVerdict:
    stratum: str
    coefficient: EpsNumber
    census: dict
    census_ok: bool
    lc: LCVerdict
    ampleness: tuple
    ample: bool
    stable: bool
    plane_census: tuple = field(default=())

    def as_dict(self, epsilon_report=True):
        fmt = str if epsilon_report else (lambda x: str(x.const) if isinstance(x, EpsNumber) else str(x))
        out = {
            "stratum": self.stratum,
            "coefficient": fmt(self.coefficient),
            "census": {str(k): v for k, v in self.census.items()},
            "census_ok": self.census_ok,
            "lc_points": len(self.lc.points),
            "worst_point": self.lc.worst.point if self.lc.worst else None,
            "worst_sum": fmt(self.lc.worst.total) if self.lc.worst else None,
            "lc": self.lc.ok,
            "ampleness": {name: fmt(deg) for name, deg in self.ampleness},
            "stable": self.stable,
        }
        if self.plane_census:
            out["plane_census"] = [{str(k): v for k, v in pc.items()} for pc in self.plane_census]
        return out


def check_stable_pair(cfg):
    """
    Stability of (S0, c*B0): log canonical at every incidence point,
    positive log canonical degree on every component, and 27 lines counted
    with multiplicity (9 per plane on three planes).

    Raises:
        IncidenceError if a listed node is not an A1 point
    """
    if isinstance(cfg.surface, IrreducibleCubic):
        for node in verify_singular_points(cfg.surface):
            if not node["ok"]:
                raise IncidenceError(f"{node['point']} is not an ordinary double point: {node}")

    census = cfg.census()
    census_ok = cfg.total_multiplicity() == LINE_COUNT
    plane_census = ()
    if isinstance(cfg.surface, ThreePlanes):
        plane_census = tuple(cfg.plane_census(a) for a in cfg.surface.planes)
        census_ok = census_ok and all(
            sum(wl.multiplicity for wl in cfg.plane_lines(a)) == LINES_PER_PLANE for a in cfg.surface.planes)

    lc = log_canonical(cfg)
    amp = tuple(ampleness(cfg))
    ample = all(deg > 0 for _, deg in amp)
    stable = lc.ok and ample and census_ok
    verdict = PairVerdict(cfg.stratum, cfg.coefficient, census, census_ok, lc, amp, ample, stable, plane_census)
    if stable:
        logger.info(f"{cfg.stratum} with c = {cfg.coefficient}: stable ({len(lc.points)} points checked)")
    else:
        logger.warning(f"{cfg.stratum} with c = {cfg.coefficient}: not stable "
                       f"(lc={lc.ok}, ample={ample}, census={census_ok})")
    return verdict


DEFAULT_AMPLENESS_SAMPLES = (
    Fraction(1, 9) + Fraction(1, 1000),
    Fraction(1, 9) + Fraction(1, 100),
    Fraction(1, 6),
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(1),
)


@dataclass(frozen=True)
class AmplenessRange:
    samples: tuple
    first_failure: Fraction | None

    @property
    def ok(self):
        return self.first_failure is None


def ampleness_range(cfg, samples=DEFAULT_AMPLENESS_SAMPLES):
    """
    Stability of the pair for concrete rational coefficients c.

    Returns:
        AmplenessRange with (c, stable) per sample and the first failing c
    """
    results = []
    first = None
    for c in samples:
        c = as_rational(c)
        stable = check_stable_pair(cfg.with_coefficient(c)).stable
        results.append((c, stable))
        if not stable and first is None:
            first = c
    return AmplenessRange(tuple(results), first)


# ------------------------------------------------------------
# Configuration ideals of the maximal degenerations
# ------------------------------------------------------------

def cayley_configuration_ideal():
    """
    (I_S + I_H) n I_D where I_S is the Cayley cubic, I_H the intersection
    of the doubled coordinate planes and I_D = I_S + (x0+x1+x2+x3).
    """
    xs = Poly.variables(4)
    i_h = intersect_all([Ideal.of(x ** 2) for x in xs])
    i_s = Ideal.of(cayley_cubic())
    i_d = ideal_sum(i_s, Ideal.of(sum(xs)))
    return ideal_intersect(ideal_sum(i_s, i_h), i_d)


def three_plane_configuration_ideal(cfg):
    """
    Intersection of (x_a, l^k) over the merged lines: k-th powers for
    multiplicity k, intersected within each multiplicity and then across.
    """
    if not isinstance(cfg.surface, ThreePlanes):
        raise UnsupportedConfigurationError(f"{cfg.stratum} is not a three-plane configuration")
    groups = {}
    for wl in cfg.lines:
        plane_form, other = wl.line.form_polys()
        groups.setdefault(wl.multiplicity, []).append(Ideal.of(plane_form, other ** wl.multiplicity))
    parts = [intersect_all(groups[k]) for k in sorted(groups, reverse=True)]
    return intersect_all(parts)


def config_ideal(cfg):
    """
    Ideal of the 27 limit lines with multiplicities for the two maximal
    degenerations, A1^4 (Cayley cubic) and A1^3-N (three planes).
    """
    if cfg.stratum == "A1^4":
        return cayley_configuration_ideal()
    if cfg.stratum == "A1^3-N":
        return three_plane_configuration_ideal(cfg)
    raise UnsupportedConfigurationError(f"no configuration ideal for {cfg.stratum}")


# ------------------------------------------------------------
# Cross-ratio
# ------------------------------------------------------------

def _line_coordinates(point, basis):
    """Coordinates (s, t) of a point s*p + t*q on the line spanned by basis (p, q)"""
    p, q = basis
    for i, j in combinations(range(len(p)), 2):
        det = p[i] * q[j] - p[j] * q[i]
        if det:
            s = (point[i] * q[j] - point[j] * q[i]) / det
            t = (p[i] * point[j] - p[j] * point[i]) / det
            return (s, t)
    raise CrossRatioError("basis points coincide")


def cross_ratio(p1, p2, p3, p4, basis=None):
    """
    Cross-ratio det(p3,p1)det(p4,p2) / (det(p3,p2)det(p4,p1)) of four
    distinct collinear points, determinants taken in coordinates on the line.

    In an affine coordinate z this is (z3-z1)(z4-z2) / ((z3-z2)(z4-z1)).

    Args:
        basis: two points of the line used as coordinates, p1 and p2 by default
    """
    pts = [tuple(as_rational(c) for c in p) for p in (p1, p2, p3, p4)]
    for a, b in combinations(range(4), 2):
        if Matrix.from_rows([pts[a], pts[b]]).rank() < 2:
            raise CrossRatioError(f"points {a + 1} and {b + 1} coincide")
    if Matrix.from_rows(pts).rank() != 2:
        raise CrossRatioError("the four points are not collinear")
    basis = tuple(tuple(as_rational(c) for c in p) for p in (basis or pts[:2]))
    if Matrix.from_rows(list(pts) + list(basis)).rank() != 2:
        raise CrossRatioError("basis points are not on the line")
    z = [_line_coordinates(p, basis) for p in pts]

    def det(u, v):
        return u[0] * v[1] - u[1] * v[0]

    return det(z[2], z[0]) * det(z[3], z[1]) / (det(z[2], z[1]) * det(z[3], z[0]))


def b1c1_quadruple(nu):
    """Four points on the line x0 = x3 = 0 whose cross-ratio separates values of nu"""
    nu = as_rational(nu)
    return ((0, 1, 0, 0), (0, 0, 1, 0), (0, -1, 1, 0), (0, -nu, 1, 0))


if __name__ == "__main__":
    for name in STRATA:
        v = check_stable_pair(stratum_config(name))
        print(f"{name:8} census={v.census} stable={v.stable} worst={v.lc.worst.total if v.lc.worst else '-'}")
