# suites.py - named verification suites and the concurrent check runner
"""
A suite is a list of checks; each check is a callable returning
(status, detail, data). Checks run on a thread pool bounded by --jobs, and
the report is ordered by check id whatever the completion order.

Suites:
    dm-tables         Deligne-Mostow tables, collision embedding
    hassett-strata    weighted stability examples, boundary census
    cubic-pairs       Naruki family, limit lines, stability of every stratum
    hilbert-flatness  Hilbert polynomials of the maximal degenerations
    lattice           Hermitian forms, the group R, triflections
    all               every check of the suites above
"""

import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

from backend import ball_lattice as bl
from backend import cubic_pairs as cp
from backend import dm_weights as dm
from backend import hassett_curves as hc
from backend.app_logging import get_logger
from backend.config import get_degree_bound, get_epsilon_report, get_jobs, get_seed
from backend.exact import EisensteinInt, EpsNumber, GaussianInt, Matrix, eisenstein_matrix
from backend.models import FAIL, PASS, SKIP, CheckResult, Report
from backend.polyring import (
    HilbertPolynomial,
    Poly,
    hilbert_polynomial,
    jacobian_smoothness,
    line_arrangement_hilbert_polynomial,
)

logger = get_logger(__name__)

ALL = "all"
# Brute-force census enumerates 2^n splittings
BRUTEFORCE_MAX_N = 14
FLAT_HILBERT = HilbertPolynomial((Fraction(-108), Fraction(27)))


class SuiteError(ValueError):
    """Base error for suite selection and options"""


class UnknownSuiteError(SuiteError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown suite {name!r}; choose from {', '.join(suite_names())}")


class SuiteOptionError(SuiteError):
    """Option value out of range"""


@dataclass(frozen=True)
class SuiteOptions:
    degree_bound: int | None = None
    seed: int = 20240611
    jobs: int = 1
    n: int = 8
    epsilon_report: bool = False

    def __post_init__(self):
        if self.jobs < 1:
            raise SuiteOptionError(f"jobs must be at least 1, got {self.jobs}")
        if self.degree_bound is not None and self.degree_bound < 1:
            raise SuiteOptionError(f"degree bound must be positive, got {self.degree_bound}")
        if self.n < 6 or self.n % 2:
            raise SuiteOptionError(f"--n must be even and at least 6, got {self.n}")

    @classmethod
    def from_config(cls, **overrides):
        """Stored settings with the non-None overrides applied"""
        values = {
            "degree_bound": get_degree_bound(),
            "seed": get_seed(),
            "jobs": get_jobs(),
            "epsilon_report": get_epsilon_report(),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Check:
    id: str
    description: str
    fn: object


def _result(ok, detail="", **data):
    return (PASS if ok else FAIL), detail, (data or None)


def _eps(value, options):
    """Render an EpsNumber with or without its e coefficient"""
    if isinstance(value, EpsNumber) and not options.epsilon_report:
        return str(value.const)
    return str(value)


# ------------------------------------------------------------
# dm-tables
# ------------------------------------------------------------

def _dm_row_check(entry):
    def run(options):
        got = entry["verdict"] + (f"(m={entry['m']})" if "m" in entry else "")
        want = entry["expected"]["verdict"] + (f"(m={entry['expected']['m']})" if "m" in entry["expected"] else "")
        return _result(entry["match"], f"{entry['input']}: {got}, table {want}, d={entry['denominator']}", **entry)
    return run


def _dm_checks(options):
    report = dm.verify_tables()
    checks = []
    counters = {}
    for entry in report:
        ring = entry["ring"].lower()
        counters[ring] = counters.get(ring, 0) + 1
        checks.append(Check(f"dm-tables/{ring}-{counters[ring]:02d}",
                            f"{entry['ring']} table row {entry['input']}", _dm_row_check(entry)))

    def row_count(options):
        rings = [r["ring"] for r in report]
        e, g = rings.count(dm.EISENSTEIN), rings.count(dm.GAUSSIAN)
        return _result((e, g) == (36, 6), f"{e} Eisenstein + {g} Gaussian rows")

    def sums(options):
        bad = [r["input"] for r in report if r["sum"] != "2"]
        return _result(not bad, "every row sums to 2" if not bad else f"bad sums: {bad}")

    def collide(options):
        sixth = dm.parse_weights("(1/3)^6")
        split = dm.collide_embed(sixth, [(0, 1), (2, 3), (4, 5)])
        pairs = dm.collision_map(sixth, [(0, 1), (2, 3), (4, 5)])
        half = dm.collide_embed(dm.parse_weights("(1/2)^2(1/4)^4"), [(0, 1)])
        ok = (dm.format_weights(split) == "(1/6)^12" and pairs == [(i, i + 6) for i in range(1, 7)]
              and dm.format_weights(half) == "(1/4)^8" and dm.classify(split).m == 12)
        return _result(ok, f"(1/3)^6 -> {split}, collisions {pairs}; (1/2)^2(1/4)^4 -> {half}")

    checks += [
        Check("dm-tables/row-count", "36 Eisenstein and 6 Gaussian rows", row_count),
        Check("dm-tables/sum", "weights of every row sum to 2", sums),
        Check("dm-tables/collide-embed", "splitting (1/3)^6 gives (1/6)^12 with p_i = p_(i+6)", collide),
    ]
    return checks


# ------------------------------------------------------------
# hassett-strata
# ------------------------------------------------------------

TAIL_123 = "A,B; A-B; 1@A 2@A 3@A 4@B 5@B 6@B 7@B 8@B"
SPLIT_44 = "A,B; A-B; 1@A 2@A 3@A 4@A 5@B 6@B 7@B 8@B"
COLLIDING_4 = "A; ; {1,2,3,4}@A 5@A 6@A 7@A 8@A"
DISTINCT_8 = "A; ; 1@A 2@A 3@A 4@A 5@A 6@A 7@A 8@A"


def _kinds(verdict):
    return sorted({(v.kind, tuple(v.location)) for v in verdict.violations})


def _hassett_checks(options):
    n = options.n
    b8 = hc.uniform_weights(8)

    def census(options):
        got = hc.codim1_strata_census(n)
        want = {"typeA": math.comb(n, 2), "typeB": math.comb(n, n // 2) // 2}
        return _result(got == want, f"n={n}: typeA={got['typeA']}, typeB={got['typeB']}", n=n, **got)

    def bruteforce(options):
        if n > BRUTEFORCE_MAX_N:
            return SKIP, f"brute force skipped for n={n} > {BRUTEFORCE_MAX_N}", None
        got = hc.census_bruteforce(n)
        return _result(got == hc.codim1_strata_census(n), f"enumeration gives {got}", **got)

    def distinct(options):
        v = hc.is_weighted_stable(hc.parse_config(DISTINCT_8), b8)
        return _result(v.ok, "8 distinct points on P1 are stable at (1/4+e)^8")

    def tail(options):
        cfg = hc.parse_config(TAIL_123)
        heavy = hc.is_weighted_stable(cfg, [1] * 8)
        light = hc.is_weighted_stable(cfg, b8)
        ok = heavy.ok and _kinds(light) == [(hc.COMPONENT_UNDERWEIGHT, ("A",))]
        total = light.violations[0].value if light.violations else None
        return _result(ok, f"stable at b=1; tail weight {_eps(total, options)} at (1/4+e)^8",
                       violations=[v.as_dict() for v in light.violations])

    def colliding(options):
        v = hc.is_weighted_stable(hc.parse_config(COLLIDING_4), b8)
        return _result(_kinds(v) == [(hc.COINCIDENCE_OVERWEIGHT, (1, 2, 3, 4))],
                       "four colliding points weigh 1+4e > 1",
                       violations=[x.as_dict() for x in v.violations])

    def split(options):
        v = hc.is_weighted_stable(hc.parse_config(SPLIT_44), b8)
        return _result(v.ok, "4+4 splitting is stable: 1 + 1+4e > 2")

    def reduction(options):
        image = hc.reduction_image(hc.parse_config(TAIL_123), [1] * 8, b8)
        classes = [members for _, members in image.classes().values()]
        ok = image.components == ("B",) and [1, 2, 3] in classes
        again = hc.reduction_image(image, b8, b8)
        return _result(ok and again == image, f"image {hc.format_config(image)}")

    def wall(options):
        ok = hc.git_wall_check(8)
        return _result(ok, "at (1/4)^8 the 4+4 splitting contracts to neither side")

    return [
        Check("hassett-strata/census", f"codimension-one strata for n={n}", census),
        Check("hassett-strata/census-bruteforce", "census agrees with brute-force enumeration", bruteforce),
        Check("hassett-strata/example-distinct", "distinct points are stable", distinct),
        Check("hassett-strata/example-tail", "D_123,45678 tail is contracted at (1/4+e)^8", tail),
        Check("hassett-strata/example-colliding", "colliding 4-tuple violates coincidence", colliding),
        Check("hassett-strata/example-split", "4+4 splitting is stable", split),
        Check("hassett-strata/reduction", "reduction contracts the tail to a class {1,2,3}", reduction),
        Check("hassett-strata/git-wall", "balanced splitting is strictly semistable at the wall", wall),
    ]


# ------------------------------------------------------------
# cubic-pairs
# ------------------------------------------------------------

def _slug(stratum):
    return stratum.lower().replace("^", "")


def _stable_check(stratum):
    def run(options):
        cfg = cp.stratum_config(stratum)
        verdict = cp.check_stable_pair(cfg)
        expected = cp.expected_census(stratum)
        got = list(verdict.plane_census) if verdict.plane_census else verdict.census
        worst = verdict.lc.worst
        amp = ", ".join(f"{name}: {_eps(deg, options)}" for name, deg in verdict.ampleness)
        detail = (f"census {got}; worst point sum {_eps(worst.total, options) if worst else '-'}; "
                  f"ampleness {amp}")
        return _result(verdict.stable and got == expected, detail,
                       **verdict.as_dict(epsilon_report=options.epsilon_report))
    return run


def _mutation_check(stratum):
    def run(options):
        cfg = cp.stratum_config(stratum)
        c = cfg.coefficient.const
        mult = {wl.label: wl.multiplicity for wl in cfg.lines}

        def weight(ip):
            return sum(mult[label] for label in ip.lines) * c + ip.conductor

        worst = max((ip for ip in cp.incidence_points(cfg) if ip.lines), key=weight)
        label = worst.lines[0]
        # smallest bump taking the constant part of the point sum to 2
        bump = max(1, math.ceil((cp.LC_BOUND - weight(worst)) / c))
        mutated = cfg.with_multiplicity(label, mult[label] + bump)
        verdict = cp.check_stable_pair(mutated)
        return _result(not verdict.lc.ok and not verdict.stable,
                       f"{label}: multiplicity {mult[label]} -> {mult[label] + bump} at {worst.name}")
    return run


def _cubic_checks(options):
    generic = cp.stratum_parameters(cp.SMOOTH)
    x0, x1, x2, x3 = Poly.variables(4)

    def rho_zero(options):
        f = cp.naruki_cubic(cp.NarukiParams(generic.lam, generic.mu, generic.nu, 0))
        return _result(f == x0 * x1 * x2, "rho = 0 fiber is x0*x1*x2")

    def tritangents(options):
        p = cp.tritangent_limit("p,", generic)
        theta = cp.tritangent_limit("theta", generic)
        want = generic.lam * x0 + generic.mu * x1 + generic.nu * x2 - x3
        return _result(p == x0 and theta == want, "(p,) -> x0, (theta) -> lambda*x0 + mu*x1 + nu*x2 - x3")

    def naruki_line(options):
        return _result(cp.line_on_surface(cp.naruki_cubic(generic), cp.naruki_line_a1()),
                       "x0 = x3 = 0 lies on the generic fiber")

    def limit_lines(options):
        points = cp.limit_points(generic.lam, generic.mu, generic.nu)
        lines = cp.limit_lines(generic.lam, generic.mu, generic.nu)
        count = sum(len(v) for v in lines.values())
        ok = count == 27 and all(len(v) == 9 for v in lines.values()) and all(
            ll.line.contains(points[end]) for v in lines.values() for ll in v for end in ll.ends)
        labels = set(cp.cayley_labels().values())
        ok = ok and labels == {ll.label for v in lines.values() for ll in v}
        return _result(ok, f"{count} limit lines through their defining points, Cayley labels bijective")

    def smooth_fiber(options):
        return _result(jacobian_smoothness(cp.naruki_cubic(generic)), f"fiber over {generic} is smooth")

    def partition(options):
        parts = cp.tritangent_partition()
        covered = sorted(label for t in parts for label in t.lines)
        meets = all(cp.schlafli_meets(a, b) for t in parts for i, a in enumerate(t.lines) for b in t.lines[i + 1:])
        ok = len(parts) == 9 and covered == sorted(cp.schlafli_labels()) and meets
        return _result(ok, "nine tritangents cover each of the 27 lines once")

    def smooth_ample(options):
        cfg = cp.stratum_config(cp.SMOOTH)
        (_, degree), = cp.ampleness(cfg)
        rng = cp.ampleness_range(cfg)
        points = cp.incidence_points(cfg)
        ok = degree == EpsNumber(0, 9) and rng.ok and len(points) == 135
        return _result(ok, f"K + cB = {_eps(degree, options)} H, stable for every sampled c in (1/9, 1], "
                           f"{len(points)} intersection points")

    def nodes(options):
        bad = []
        for stratum in cp.IRREDUCIBLE_STRATA[1:]:
            cfg = cp.stratum_config(stratum)
            checks = cp.verify_singular_points(cfg.surface)
            if not all(c["ok"] for c in checks) or cfg.total_multiplicity() != cp.LINE_COUNT:
                bad.append(stratum)
        return _result(not bad, "every model node is A1 and every model has 27 lines with multiplicity"
                       if not bad else f"bad: {bad}")

    def six_points(options):
        cfg = cp.stratum_config("N")
        per_plane = {a: 0 for a in cfg.surface.planes}
        for p in cp.multiple_points(cfg):
            per_plane[p.plane] += 1
        return _result(all(v == 6 for v in per_plane.values()), f"multiple points per plane {per_plane}")

    def cross_ratios(options):
        rng = random.Random(options.seed)
        pairs = []
        while len(pairs) < 10:
            a, b = (Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in range(2))
            if a != b and a not in (0, 1) and b not in (0, 1):
                pairs.append((a, b))
        same = [(a, b) for a, b in pairs
                if cp.cross_ratio(*cp.b1c1_quadruple(a)) == cp.cross_ratio(*cp.b1c1_quadruple(b))]
        return _result(not same, f"{len(pairs)} sampled pairs (seed {options.seed}) give distinct cross-ratios",
                       pairs=[[str(a), str(b)] for a, b in pairs])

    checks = [
        Check("cubic-pairs/naruki-rho-zero", "Naruki fiber over rho = 0", rho_zero),
        Check("cubic-pairs/tritangent-limits", "tritangent limits at rho = 0", tritangents),
        Check("cubic-pairs/naruki-line", "the line x0 = x3 = 0 lies on every fiber", naruki_line),
        Check("cubic-pairs/limit-lines", "27 limit lines and their labels", limit_lines),
        Check("cubic-pairs/generic-smooth", "generic fiber is smooth (Jacobian criterion)", smooth_fiber),
        Check("cubic-pairs/tritangent-partition", "tritangent partition of the 27 lines", partition),
        Check("cubic-pairs/smooth-ampleness", "(9c - 1)H is ample for c > 1/9", smooth_ample),
        Check("cubic-pairs/nodal-models", "nodal models carry A1 points only", nodes),
        Check("cubic-pairs/n-multiple-points", "type N planes have six multiple points each", six_points),
        Check("cubic-pairs/cross-ratio", "cross-ratio on B1C1 separates nu", cross_ratios),
    ]
    for k, stratum in enumerate(cp.STRATA, start=1):
        checks.append(Check(f"cubic-pairs/stable-{k}-{_slug(stratum)}", f"{stratum} pair is stable",
                            _stable_check(stratum)))
        checks.append(Check(f"cubic-pairs/mutation-{k}-{_slug(stratum)}",
                            f"{stratum} pair is unstable once a point sum exceeds 2", _mutation_check(stratum)))
    return checks


# ------------------------------------------------------------
# hilbert-flatness
# ------------------------------------------------------------

def _hilbert_check(stratum):
    def run(options):
        ideal = cp.config_ideal(cp.stratum_config(stratum))
        poly = hilbert_polynomial(ideal, options.degree_bound)
        return _result(poly == FLAT_HILBERT, f"{stratum}: {poly} (agrees from m = {poly.regularity_index})",
                       hilbert_polynomial=str(poly), regularity_index=poly.regularity_index, bound=poly.bound)
    return run


def _hilbert_checks(options):
    def arrangement(options):
        poly = line_arrangement_hilbert_polynomial(27, 135)
        return _result(poly == FLAT_HILBERT, f"27 lines meeting in 135 points: {poly}")

    return [
        Check("hilbert-flatness/a1-4", "Cayley cubic configuration ideal", _hilbert_check("A1^4")),
        Check("hilbert-flatness/a1-3-n", "three-plane configuration ideal", _hilbert_check("A1^3-N")),
        Check("hilbert-flatness/smooth", "smooth fiber: 27 lines, 135 points", arrangement),
    ]


# ------------------------------------------------------------
# lattice
# ------------------------------------------------------------

def _lattice_checks(options):
    h6 = bl.dm_form_h()
    h2 = bl.prym_form()

    def dm_form(options):
        sig = bl.signature(h6)
        ok = h6.matrix[0, 1] == GaussianInt(1, -1) and h6.matrix[1, 0] == GaussianInt(1, 1) and sig.is_hyperbolic()
        return _result(ok, f"signature (positive, negative, zero) = {sig}", signature=list(sig.as_tuple()))

    def prym(options):
        sig = bl.signature(h2)
        det = h2.determinant()
        return _result(det == 2 and sig.as_tuple() == (0, 2, 0), f"det = {det}, signature {sig}")

    def skew(options):
        q = bl.intersection_skew()
        ok = q.matrix[0, 2] == 2 and q.matrix[2, 0] == -2
        derived = bl.form_from_intersection()
        return _result(ok and derived == -h2, "intersection form is skew and induces the 2x2 form up to sign")

    def generators(options):
        gens = bl.r_generators()
        preserve = all(bl.preserves_form(g, h2, on_rows=True) for g in gens)
        level = all(bl.congruence_level(g, GaussianInt(1, -1)) for g in gens)
        squares = all(s @ s == Matrix.identity(2) for g in gens for s in (g, -g))
        product = gens[0] @ gens[1] @ gens[2]
        return _result(preserve and level and squares, f"alpha*beta*gamma = {product.to_rows()}")

    def group(options):
        closure = bl.generate_group(bl.r_generators())
        scalars = all(z in closure for z in bl.scalar_subgroup())
        center = bl.center(closure.elements)
        reflections = bl.reflections_of(closure.elements)
        gens = bl.r_generators()
        expected = {g for g in gens} | {-g for g in gens}
        ok = (closure.order == 16 and closure.census == {1: 1, 2: 7, 4: 8} and scalars
              and len(center) == 4 and set(reflections) == expected and bl.is_closed(closure.elements))
        return _result(ok, f"order {closure.order}, element orders {closure.census}, center {len(center)}, "
                           f"{len(reflections)} reflections",
                       order=closure.order, census={str(k): v for k, v in closure.census.items()},
                       contains_scalars=scalars, center=len(center), reflections=len(reflections))

    def level_group(options):
        closure = bl.generate_group(bl.r_generators())
        delta = GaussianInt(1, -1)
        level = [g for g in closure.elements if bl.congruence_level(g, delta)]
        closed = all(bl.congruence_level(a @ b, delta) for a in level for b in level)
        preserve = all(bl.preserves_form(g, h2, on_rows=True) for g in closure.elements)
        return _result(closed and preserve, f"{len(level)} elements are I mod (1-i); every element preserves the form")

    def triflections(options):
        rank1 = bl.triflection([1], bl.HermitianForm(eisenstein_matrix([[-3]])))
        theta = EisensteinInt(1, 2)
        form = bl.HermitianForm(eisenstein_matrix([[-3, theta], [theta.conj(), -3]]))
        rank2 = bl.triflection([1, 0], form)
        ok = rank1 == eisenstein_matrix([[EisensteinInt(0, 1)]])
        for t, f in ((rank1, bl.HermitianForm(eisenstein_matrix([[-3]]))), (rank2, form)):
            ok = ok and t ** 3 == Matrix.identity(t.rows) and t != Matrix.identity(t.rows) \
                and bl.preserves_form(t, f)
        return _result(ok, f"rank 1: multiplication by w; rank 2: {rank2.to_rows()}")

    return [
        Check("lattice/dm-form", "6x6 form has one direction of one sign, five of the other", dm_form),
        Check("lattice/prym-form", "2x2 form is definite with determinant 2", prym),
        Check("lattice/intersection-form", "skew intersection form and the induced Hermitian form", skew),
        Check("lattice/generators", "alpha, beta, gamma preserve the form, square to I, are I mod (1-i)", generators),
        Check("lattice/group-r", "the reflection group has order 16", group),
        Check("lattice/congruence-subgroup", "level (1-i) elements form a subgroup", level_group),
        Check("lattice/triflections", "triflections cube to I and preserve their form", triflections),
    ]


SUITES = {
    "dm-tables": _dm_checks,
    "hassett-strata": _hassett_checks,
    "cubic-pairs": _cubic_checks,
    "hilbert-flatness": _hilbert_checks,
    "lattice": _lattice_checks,
}


def suite_names():
    return list(SUITES) + [ALL]


def checks_for(suite, options):
    if suite == ALL:
        return [c for name in SUITES for c in SUITES[name](options)]
    if suite not in SUITES:
        raise UnknownSuiteError(suite)
    return SUITES[suite](options)


def _execute(check, options):
    started = time.perf_counter()
    try:
        status, detail, data = check.fn(options)
    except Exception as e:
        logger.exception(f"Check {check.id} raised {type(e).__name__}")
        status, detail, data = FAIL, f"{type(e).__name__}: {e}", None
    elapsed = time.perf_counter() - started
    if status == FAIL:
        logger.warning(f"Check {check.id} failed: {detail}")
    else:
        logger.debug(f"Check {check.id}: {status} in {elapsed:.3f}s")
    return CheckResult(check.id, check.description, status, detail, data, elapsed)


def run(suite, options=None):
    """
    Run a suite and assemble its report.

    Args:
        suite: one of suite_names()
        options: SuiteOptions, stored settings by default

    Raises:
        UnknownSuiteError for an unknown suite name
    """
    options = options or SuiteOptions.from_config()
    checks = checks_for(suite, options)
    logger.info(f"Running suite {suite}: {len(checks)} checks on {options.jobs} worker(s)")
    if options.jobs > 1:
        with ThreadPoolExecutor(max_workers=options.jobs) as pool:
            results = list(pool.map(lambda c: _execute(c, options), checks))
    else:
        results = [_execute(c, options) for c in checks]
    report = Report(suite, tuple(results), options.as_dict())
    logger.info(f"Suite {suite} finished: {report.summary()}")
    return report
