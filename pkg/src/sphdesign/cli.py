"""Command-line interface: construct, verify, and search.

Exit codes are uniform across commands:

    0  success (constructed / verified / searched, all checks passed)
    1  a check failed: verification failed, a search hit its budget, or a
       search-vs-bound comparison found a mismatch
    2  usage or input error (bad arguments, malformed file, unwritable path)
    3  construction refused: the requested size is provably impossible or
       open (no known construction)

Data goes to stdout (machine-parseable with --format json); diagnostics and
verification reports go to stderr.

Design file format (text): line 1 is the literal header ``# spherical-design``,
line 2 is ``d n t``, line 3 is ``# recipe: ...``, then n whitespace-separated
coordinate rows of d+1 entries each, printed with 17 significant digits so a
parse/render round trip is bit-exact.  The JSON variant carries the same
fields: dimension, size, strength, recipe, points.
"""

from __future__ import annotations

import functools
import json
import sys

import click
import numpy as np

from . import planner, sidon
from .exceptions import (
    DesignFileError,
    DomainError,
    SidonViolationError,
    SphereDesignError,
)
from .harmonic import DesignMatrix, moment_check, verify_design

DESIGN_HEADER = "# spherical-design"


def render_design(design: DesignMatrix) -> str:
    """Text form of a design; one point per row, 17 significant digits."""
    lines = [
        DESIGN_HEADER,
        f"{design.dimension} {design.size} {design.strength}",
        f"# recipe: {design.provenance or 'unknown'}",
    ]
    for k in range(design.size):
        lines.append(" ".join(f"{v:.17g}" for v in design.entries[:, k]))
    return "\n".join(lines) + "\n"


def parse_design(text: str) -> DesignMatrix:
    """Inverse of ``render_design``; also accepts the JSON variant."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            return design_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise DesignFileError(f"invalid JSON design file: {exc}") from exc
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) < 3 or lines[0].strip() != DESIGN_HEADER:
        raise DesignFileError(
            f"missing '{DESIGN_HEADER}' header; not a design file"
        )
    header = lines[1].split()
    if len(header) != 3:
        raise DesignFileError("header line must be 'd n t'")
    try:
        d, n, t = (int(v) for v in header)
    except ValueError as exc:
        raise DesignFileError(f"non-integer header fields: {header}") from exc
    recipe_line = lines[2]
    if not recipe_line.startswith("# recipe:"):
        raise DesignFileError("third line must be '# recipe: ...'")
    recipe = recipe_line[len("# recipe:") :].strip() or None
    rows = lines[3:]
    if len(rows) != n:
        raise DesignFileError(f"expected {n} coordinate rows, found {len(rows)}")
    points = []
    for row in rows:
        values = row.split()
        if len(values) != d + 1:
            raise DesignFileError(
                f"expected {d + 1} coordinates per row, found {len(values)}"
            )
        try:
            points.append([float(v) for v in values])
        except ValueError as exc:
            raise DesignFileError(f"non-numeric coordinate in row {row!r}") from exc
    try:
        return DesignMatrix(
            dimension=d,
            strength=t,
            entries=np.array(points).T,
            provenance=recipe,
        )
    except SphereDesignError as exc:
        raise DesignFileError(f"file does not describe a design: {exc}") from exc


def design_to_json(design: DesignMatrix) -> dict:
    return {
        "format": "spherical-design",
        "dimension": design.dimension,
        "size": design.size,
        "strength": design.strength,
        "recipe": design.provenance,
        "points": [list(design.entries[:, k]) for k in range(design.size)],
    }


def design_from_json(obj: dict) -> DesignMatrix:
    try:
        d = int(obj["dimension"])
        t = int(obj["strength"])
        points = obj["points"]
        recipe = obj.get("recipe")
        size = int(obj.get("size", len(points)))
    except (KeyError, TypeError, ValueError) as exc:
        raise DesignFileError(f"invalid design JSON: {exc}") from exc
    if size != len(points):
        raise DesignFileError(
            f"size field says {size} points but {len(points)} are present"
        )
    try:
        return DesignMatrix(
            dimension=d, strength=t, entries=np.array(points, dtype=float).T,
            provenance=recipe,
        )
    except SphereDesignError as exc:
        raise DesignFileError(f"JSON does not describe a design: {exc}") from exc


def _echo_report(title: str, report) -> None:
    click.echo(f"--- {title} ---", err=True)
    click.echo(report.summary(), err=True)


def _usage_guard(fn):
    """Bad argument values surface as usage errors (exit 2), not tracebacks."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (DomainError, SidonViolationError) as exc:
            raise click.UsageError(str(exc)) from exc

    return wrapper


@click.group()
@click.version_option(version="0.1.0", prog_name="sphdesign")
def cli():
    """Spherical 3-design toolkit: construct, verify, search.

    Examples:

        sphdesign construct --dim 3 --points 8 --out octa.txt

        sphdesign verify octa.txt

        sphdesign sidon search --n 12 --t 3

        sphdesign table --max-d 9
    """


@cli.command()
@click.option("--dim", "-d", type=int, required=True, help="Sphere dimension d.")
@click.option("--points", "-n", type=int, required=True, help="Number of points.")
@click.option(
    "--out", "-o", type=click.Path(dir_okay=False, writable=False), default=None,
    help="Output path (default: stdout).",
)
@click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text",
    help="Design file format.",
)
@click.option("--tol", type=float, default=None, help="Verification tolerance.")
@_usage_guard
def construct(dim: int, points: int, out: str | None, fmt: str, tol: float | None):
    """Construct a 3-design of a given size, verify it, write it out.

    Exits 3 when the requested size is provably impossible or open.
    """
    if dim < 1 or points < 1:
        raise click.UsageError("--dim and --points must be positive integers")
    feasibility = planner.classify(dim, points)
    if feasibility.status is not planner.Status.CONSTRUCTIBLE:
        click.echo(f"cannot construct: {feasibility.reason}", err=True)
        sys.exit(3)
    design = planner.build(dim, points)
    report = verify_design(design, 3, tol)
    click.echo(f"recipe: {design.provenance}", err=True)
    _echo_report("harmonic verification", report)
    payload = (
        json.dumps(design_to_json(design), indent=1)
        if fmt == "json"
        else render_design(design)
    )
    if out is None:
        click.echo(payload, nl=False)
    else:
        try:
            with open(out, "w", encoding="utf-8") as handle:
                handle.write(payload)
        except OSError as exc:
            click.echo(f"cannot write {out}: {exc}", err=True)
            sys.exit(2)
        click.echo(f"wrote {out}", err=True)
    if not report.passed:
        # Should be unreachable for planner recipes; never exit 0 on it.
        click.echo("constructed design failed verification", err=True)
        sys.exit(1)
    sys.exit(0)


@cli.command()
@click.argument("path", type=click.Path(exists=False))
@click.option(
    "--strength", "-t", type=int, default=None,
    help="Strength to check (default: the file's claimed strength).",
)
@click.option("--tol", type=float, default=None, help="Verification tolerance.")
@click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text",
    help="Report format on stdout.",
)
@_usage_guard
def verify(path: str, strength: int | None, tol: float | None, fmt: str):
    """Verify a design file by harmonic sums and by the moment oracle.

    Exits 0 when both checks pass, 1 when either fails, 2 on a parse error.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            design = parse_design(handle.read())
    except OSError as exc:
        click.echo(f"cannot read {path}: {exc}", err=True)
        sys.exit(2)
    except DesignFileError as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(2)
    t = design.strength if strength is None else strength
    if t not in (1, 2, 3):
        raise click.UsageError("--strength must be 1, 2, or 3")
    harmonic_report = verify_design(design, t, tol)
    moment_report = moment_check(design, t, tol)
    if fmt == "json":
        click.echo(
            json.dumps(
                {
                    "dimension": design.dimension,
                    "size": design.size,
                    "strength_checked": t,
                    "harmonic": _report_json(harmonic_report),
                    "moment": _report_json(moment_report),
                },
                indent=1,
            )
        )
    else:
        click.echo(f"design: S^{design.dimension}, {design.size} points")
        _echo_report("harmonic verification", harmonic_report)
        _echo_report("moment oracle", moment_report)
        verdict = "PASS" if harmonic_report.passed and moment_report.passed else "FAIL"
        click.echo(verdict)
    sys.exit(0 if harmonic_report.passed and moment_report.passed else 1)


def _report_json(report) -> dict:
    return {
        "passed": report.passed,
        "tolerance": report.tolerance,
        "norm_max_deviation": report.norm_max_deviation,
        "max_residual_by_degree": {
            str(k): v for k, v in report.max_residual_by_degree.items()
        },
        "worst_polynomial": report.worst_polynomial,
    }


@cli.group()
def sidon_group():
    """Signed-sum-free set commands (construct / search / table)."""


# click uses the function name by default; expose the group as `sidon`.
cli.add_command(sidon_group, name="sidon")


@sidon_group.command("construct")
@click.option("--n", "modulus", type=int, required=True, help="Modulus.")
@click.option("--t", "strength", type=int, default=3, help="Strength (1-3).")
@click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text"
)
@_usage_guard
def sidon_construct(modulus: int, strength: int, fmt: str):
    """Print the extremal construction for the given modulus and strength."""
    result = sidon.construct_bound_set(modulus, strength)
    if fmt == "json":
        click.echo(
            json.dumps(
                {
                    "n": modulus,
                    "t": strength,
                    "size": len(result),
                    "elements": list(result.elements),
                }
            )
        )
    else:
        click.echo(
            f"strength-{strength} set of size {len(result)}: {result.describe()}"
        )
    sys.exit(0)


@sidon_group.command("search")
@click.option("--n", "modulus", type=int, required=True, help="Modulus.")
@click.option("--t", "strength", type=int, default=3, help="Strength (1-3).")
@click.option(
    "--budget", type=int, default=None,
    help="Node budget; exceeding it yields a flagged partial result (exit 1).",
)
@click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text"
)
@_usage_guard
def sidon_search(modulus: int, strength: int, budget: int | None, fmt: str):
    """Exhaustively determine the maximum signed-sum-free set size."""
    result = sidon.max_sidon_search(modulus, strength, budget)
    if fmt == "json":
        click.echo(
            json.dumps(
                {
                    "n": modulus,
                    "t": strength,
                    "max_cardinality": result.max_cardinality,
                    "witness": list(result.witness.elements),
                    "nodes": result.nodes_explored,
                    "matches_lower_bound": result.matches_lower_bound,
                    "certified": result.certified,
                }
            )
        )
    else:
        witness = "{" + ", ".join(map(str, result.witness.elements)) + "}"
        click.echo(
            f"s({modulus},{strength}) = {result.max_cardinality}, "
            f"witness {witness}"
        )
    if not result.certified:
        click.echo(
            f"node budget exhausted after {result.nodes_explored} nodes; "
            "result is a lower bound only",
            err=True,
        )
        sys.exit(1)
    sys.exit(0)


@sidon_group.command("table")
@click.option("--max-n", type=int, required=True, help="Largest modulus.")
@click.option("--t", "strength", type=int, default=3, help="Strength (1-3).")
@click.option("--jobs", type=int, default=1, help="Worker processes.")
@click.option("--budget", type=int, default=None, help="Node budget per modulus.")
@click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text"
)
@_usage_guard
def sidon_table(max_n: int, strength: int, jobs: int, budget: int | None, fmt: str):
    """Compare exact search with the constructive bound for every modulus.

    Exits 1 loudly if any row disagrees with the bound or was not certified.
    """
    rows = sidon.conjecture_table(max_n, strength, jobs=jobs, node_budget=budget)
    if fmt == "json":
        click.echo(json.dumps([row.to_json() for row in rows], indent=1))
    else:
        click.echo(sidon.render_table(rows))
    bad = [row for row in rows if not row.equal or not row.certified]
    if bad:
        for row in bad:
            state = "uncertified" if not row.certified else "bound mismatch"
            click.echo(
                f"n={row.modulus}: {state} (bound {row.lower_bound}, "
                f"search {row.exact})",
                err=True,
            )
        sys.exit(1)
    sys.exit(0)


@cli.command()
@click.option("--max-d", type=int, required=True, help="Largest dimension.")
@click.option(
    "--check", is_flag=True,
    help="Build and verify every size the table claims constructible.",
)
@click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text"
)
@_usage_guard
def table(max_d: int, check: bool, fmt: str):
    """Print constructible design sizes for each dimension up to --max-d."""
    rows = planner.results_table(max_d, check=check)
    if fmt == "json":
        click.echo(json.dumps([row.to_json() for row in rows], indent=1))
    else:
        click.echo(planner.render_results_table(rows))
    sys.exit(0)


@cli.command()
@click.option("--max-d", type=int, required=True, help="Largest (odd) dimension.")
@click.option("--budget", type=int, default=None, help="Node budget per modulus.")
@_usage_guard
def scan(max_d: int, budget: int | None):
    """Scan for regular designs at odd sizes below the 5(d+1)/2 threshold.

    None should exist; exits 1 loudly if the search finds one (or could not
    certify a row within the budget).
    """
    report = planner.regular_nonexistence_scan(max_d, node_budget=budget)
    for row in report.rows:
        flag = "COUNTEREXAMPLE" if row.is_counterexample else "ok"
        click.echo(
            f"d={row.dimension} n={row.size}: s(n,3)={row.max_set_size} "
            f"< {row.required} required -> {flag}"
        )
    if report.counterexamples or not report.certified:
        if not report.certified:
            click.echo("scan incomplete: node budget exhausted", err=True)
        sys.exit(1)
    click.echo("no regular designs found below the threshold", err=True)
    sys.exit(0)
