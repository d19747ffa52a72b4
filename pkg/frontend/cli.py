# cli.py - click command group: suites, classifiers and single-object checks
"""
Exit codes: 0 when every check passes, 1 when any check fails (or the
object under test is unstable), 2 for usage errors and malformed input.
"""

import json
import sys
from pathlib import Path

import click
from rich.console import Console
from rich.table import Table

from backend import ball_lattice as bl
from backend import cubic_pairs as cp
from backend import dm_weights as dm
from backend import hassett_curves as hc
from backend.app_logging import get_logger, setup_logging
from backend.config import get_json_path, get_log_level, get_markdown_path
from backend.polyring import PolyError, hilbert_polynomial, read_ideal_file
from backend.suites import SuiteError, SuiteOptions, run as run_suite, suite_names
from frontend.components.incidence_diagram import incidence_diagram
from frontend.components.report_view import print_report, write_json, write_markdown

logger = get_logger(__name__)


def _console():
    return Console(highlight=False)


def _write_payload(path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding='utf-8')
    logger.info(f"Wrote {path}")


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level.")
@click.pass_context
def cli(ctx, verbose):
    """Exact verification of ball quotients, weighted curves and cubic surface pairs."""
    setup_logging("DEBUG" if verbose else get_log_level())
    ctx.ensure_object(dict)


@cli.command()
@click.argument("suite", type=click.Choice(suite_names()))
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="Write the JSON report here.")
@click.option("--markdown", "markdown_path", type=click.Path(dir_okay=False), help="Write the markdown report here.")
@click.option("--degree-bound", type=int, help="Degree bound for Hilbert polynomial stabilization.")
@click.option("--epsilon-report/--no-epsilon-report", default=None, help="Show e coefficients in details.")
@click.option("--seed", type=int, help="Seed for randomized sampling.")
@click.option("--jobs", type=int, help="Worker threads.")
@click.option("--n", "n", type=int, help="Point count for hassett-strata.")
@click.option("--timing", is_flag=True, help="Show per-check wall time.")
def run(suite, json_path, markdown_path, degree_bound, epsilon_report, seed, jobs, n, timing):
    """Run a verification SUITE and report every check."""
    try:
        options = SuiteOptions.from_config(degree_bound=degree_bound, epsilon_report=epsilon_report,
                                           seed=seed, jobs=jobs, n=n)
    except SuiteError as e:
        raise click.UsageError(str(e))

    report = run_suite(suite, options)
    print_report(report, _console(), show_timing=timing)

    json_path = json_path or get_json_path()
    markdown_path = markdown_path or get_markdown_path()
    if json_path:
        write_json(report, json_path)
    if markdown_path:
        write_markdown(report, markdown_path)
    sys.exit(report.exit_code)


@cli.command()
@click.argument("weights")
@click.option("--json", "json_path", type=click.Path(dir_okay=False))
def classify(weights, json_path):
    """Classify WEIGHTS such as "(1/2)(1/3)^4(1/6)" under INT and Sigma-INT."""
    try:
        ws = dm.parse_weights(weights)
        result = dm.classify(ws)
    except dm.AmbiguousSymmetrizationError as e:
        click.echo(f"Ambiguous: {e}")
        sys.exit(1)
    except dm.WeightSystemError as e:
        raise click.BadParameter(str(e), param_hint="WEIGHTS")

    console = _console()
    console.print(f"{dm.format_weights(ws)}  n={ws.n}  d={ws.common_denominator()}")
    console.print(f"Verdict: {result}")
    for i, j in result.witnesses:
        console.print(f"  pair ({i + 1}, {j + 1}): {ws.weights[i]} + {ws.weights[j]} fails integrality")
    if json_path:
        _write_payload(json_path, {"input": weights, "weights": dm.format_weights(ws), **result.as_dict()})


@cli.command()
@click.argument("config")
@click.option("--weights", "-w", required=True, help='Weights such as "(1/4+e)^8" or "1,1/2,...".')
@click.option("--reduce-to", help="Target weights for the reduction morphism.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False))
def stable(config, weights, reduce_to, json_path):
    """Check weighted stability of CONFIG such as "A,B; A-B; {1,2,3}@A 4@B"."""
    try:
        cfg = hc.parse_config(config)
        b = hc.parse_weight_list(weights)
        verdict = hc.is_weighted_stable(cfg, b)
    except ValueError as e:
        raise click.BadParameter(str(e))

    console = _console()
    console.print(f"{hc.format_config(cfg)}: {'stable' if verdict.ok else 'not stable'}")
    for v in verdict.violations:
        console.print(f"  {v.kind} at {', '.join(str(x) for x in v.location)}: {v.value}")
    payload = {"config": hc.format_config(cfg), **verdict.as_dict()}

    code = 0 if verdict.ok else 1
    if reduce_to:
        try:
            image = hc.reduction_image(cfg, b, hc.parse_weight_list(reduce_to))
            console.print(f"Reduction image: {hc.format_config(image)}")
            payload["reduction"] = hc.format_config(image)
        except hc.WallCrossingError as e:
            console.print(f"Reduction fails: {e.reason}")
            payload["reduction_error"] = e.reason
            code = 1
        except ValueError as e:
            raise click.BadParameter(str(e), param_hint="--reduce-to")
    if json_path:
        _write_payload(json_path, payload)
    sys.exit(code)


@cli.command()
@click.argument("stratum")
@click.option("--coefficient", "-c", help='Boundary coefficient, default "1/9+e".')
@click.option("--params", help="lambda,mu,nu for type N strata, e.g. \"0,3,5\".")
@click.option("--diagram", type=click.Choice(["ascii", "svg"]), help="Print or write an incidence diagram.")
@click.option("--output", "-o", type=click.Path(dir_okay=False),
              help="Write the ascii or svg diagram to this file (svg defaults to STRATUM.svg).")
@click.option("--epsilon-report/--no-epsilon-report", default=True)
@click.option("--json", "json_path", type=click.Path(dir_okay=False))
def pair(stratum, coefficient, params, diagram, output, epsilon_report, json_path):
    """Stability verdict for the pair of a boundary STRATUM, e.g. "A1^3-N" or "(A1,N)"."""
    try:
        naruki = None
        if params:
            values = [s.strip() for s in params.split(",")]
            if len(values) not in (3, 4):
                raise click.BadParameter("expected lambda,mu,nu or lambda,mu,nu,rho", param_hint="--params")
            naruki = cp.NarukiParams(*values)
        cfg = cp.stratum_config(stratum, naruki)
        if coefficient:
            cfg = cfg.with_coefficient(coefficient)
    except ValueError as e:
        raise click.BadParameter(str(e))

    verdict = cp.check_stable_pair(cfg)
    data = verdict.as_dict(epsilon_report=epsilon_report)
    console = _console()
    table = Table(title=f"{cfg.stratum} with c = {data['coefficient']}")
    table.add_column("Property")
    table.add_column("Value", overflow="fold")
    for key in ("census", "plane_census", "census_ok", "lc_points", "worst_point", "worst_sum", "lc",
                "ampleness", "stable"):
        if key in data:
            table.add_row(key, str(data[key]))
    console.print(table)

    if diagram:
        text = incidence_diagram(cfg, diagram)
        if diagram == "svg" or output:
            path = Path(output or f"{cfg.stratum.replace('^', '')}.svg")
            path.write_text(text, encoding='utf-8')
            console.print(f"Diagram written to {path}")
        else:
            click.echo(text)
    if json_path:
        _write_payload(json_path, data)
    sys.exit(0 if verdict.stable else 1)


@cli.command()
@click.argument("ideal_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--nvars", type=int, help="Number of variables (default: highest index + 1).")
@click.option("--degree-bound", type=int)
@click.option("--json", "json_path", type=click.Path(dir_okay=False))
def hilbert(ideal_file, nvars, degree_bound, json_path):
    """Hilbert polynomial of the homogeneous ideal in IDEAL_FILE (one generator per line)."""
    try:
        ideal = read_ideal_file(ideal_file, nvars)
        poly = hilbert_polynomial(ideal, degree_bound)
    except PolyError as e:
        raise click.BadParameter(str(e), param_hint="IDEAL_FILE")
    click.echo(f"Hilbert polynomial: {poly}")
    click.echo(f"Agrees with the Hilbert function from m = {poly.regularity_index} (checked to {poly.bound})")
    if json_path:
        _write_payload(json_path, {"hilbert_polynomial": str(poly),
                                   "coefficients": [str(c) for c in poly.coeffs],
                                   "regularity_index": poly.regularity_index, "bound": poly.bound})


@cli.command()
@click.argument("matrix")
@click.option("--json", "json_path", type=click.Path(dir_okay=False))
def signature(matrix, json_path):
    """Signature of a Hermitian MATRIX given as JSON ("a+bi" strings) or a JSON file."""
    text = matrix
    if not matrix.lstrip().startswith("["):
        try:
            text = Path(matrix).read_text(encoding='utf-8')
        except OSError as e:
            raise click.BadParameter(f"not a JSON matrix or readable file: {e}", param_hint="MATRIX")
    try:
        h = bl.HermitianForm(bl.parse_gaussian_matrix(text))
        sig = bl.signature(h)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="MATRIX")
    click.echo(f"positive={sig.positive} negative={sig.negative} zero={sig.zero}")
    click.echo(f"determinant={h.determinant()}")
    if json_path:
        _write_payload(json_path, {"positive": sig.positive, "negative": sig.negative, "zero": sig.zero,
                                   "determinant": str(h.determinant())})


if __name__ == "__main__":
    cli()
