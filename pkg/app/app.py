import functools
from typing import Optional

import click
import structlog

from app import lib, logs
from app.constants import DEFAULT_ENUMERATION_CAP, DEFAULT_TRIALS, ExitCode
from lib import emit
from lib.exceptions import PrnError, ScaleGuardError
from lib.parse.exceptions import ModelParsingError
from lib.prefix import Limits

log = structlog.get_logger(__name__)

_model_path = click.argument("model_path", type=click.Path(exists=True, dir_okay=False))
_no_constraints = click.option(
    "--no-constraints", is_flag=True, help="Ignore the influence constraints of the model file."
)
_minmax = click.option(
    "--minmax/--no-minmax", default=None, help="Override the model file's `option minmax`."
)


def _fail(code: int, err: Exception) -> None:
    log.error("Command failed", error=str(err), exit_code=code)
    click.echo(f"error: {err}", err=True)
    raise click.exceptions.Exit(code)


def exits_on_error(f):
    """Translate library errors into the documented exit codes"""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ScaleGuardError as err:
            _fail(ExitCode.RESOURCE_LIMIT, err)
        except (ModelParsingError, PrnError, OSError) as err:
            _fail(ExitCode.INPUT_ERROR, err)

    return wrapper


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for info logs, -vv for debug logs.")
@click.option(
    "--log-file", type=click.Path(dir_okay=False), default=None, help="Append debug logs here."
)
def cli(verbose: int, log_file: Optional[str]):
    """Parameter boxes and complete finite prefixes of parametric regulatory networks"""
    logs.configure(verbose, log_file)


@cli.command()
@_model_path
@click.option(
    "--dot", "dot_file", type=click.File("w", lazy=True), help="Write the prefix as DOT."
)
@click.option(
    "--json", "json_file", type=click.File("w", lazy=True), help="Write run stats as JSON."
)
@click.option("--max-events", type=click.IntRange(min=1), default=None)
@click.option("--max-seconds", type=click.FloatRange(min=0, min_open=True), default=None)
@_no_constraints
@_minmax
@click.option("--timing", is_flag=True, help="Include runtime_ms in the stats.")
@exits_on_error
def unfold(
    model_path: str,
    dot_file,
    json_file,
    max_events: Optional[int],
    max_seconds: Optional[float],
    no_constraints: bool,
    minmax: Optional[bool],
    timing: bool,
):
    """
    Build the complete finite prefix of a model and print its statistics.

    Exits with 3 when --max-events or --max-seconds stops the construction early.
    """
    model = lib.load_model(model_path)
    R = lib.constraint_set(model, no_constraints, minmax)
    limits = Limits(max_events=max_events, max_seconds=max_seconds)
    result, stats = lib.run_unfold(model, limits, R, timing)
    if dot_file is not None:
        dot_file.write(emit.emit_dot(result.net, model.name or "prefix"))
    if json_file is not None:
        json_file.write(emit.emit_report(stats, "json"))
    click.echo(emit.emit_report(stats, "text"), nl=False)
    if not stats.complete:
        click.echo(f"incomplete: {stats.reason}", err=True)
        raise click.exceptions.Exit(ExitCode.RESOURCE_LIMIT)


@cli.command()
@click.argument("model_path", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--random", "seed", type=int, default=None, help="Seed for random instances.")
@click.option(
    "--trials", type=click.IntRange(min=1), default=DEFAULT_TRIALS, show_default=True
)
@click.option(
    "--cap",
    type=click.IntRange(min=1),
    default=DEFAULT_ENUMERATION_CAP,
    show_default=True,
    help="Refuse to enumerate more parametrisations than this.",
)
@_no_constraints
@_minmax
@exits_on_error
def verify(
    model_path: Optional[str],
    seed: Optional[int],
    trials: int,
    cap: int,
    no_constraints: bool,
    minmax: Optional[bool],
):
    """Compare the abstraction against brute-force enumeration, on a model or random instances"""
    if (model_path is None) == (seed is None):
        raise click.UsageError("give either a model file or --random SEED")
    if seed is not None:
        summary = lib.verify_random(seed, trials, cap)
    else:
        model = lib.load_model(model_path)
        summary = lib.verify_model(model, lib.constraint_set(model, no_constraints, minmax), cap)
    click.echo(summary.render(), nl=False)
    if not summary.ok:
        raise click.exceptions.Exit(ExitCode.VERIFICATION_FAILED)


@cli.command()
@_model_path
@_no_constraints
@_minmax
@exits_on_error
def reach(model_path: str, no_constraints: bool, minmax: Optional[bool]):
    """Print the reachable states, one per line"""
    model = lib.load_model(model_path)
    for line in lib.reachable(model, lib.constraint_set(model, no_constraints, minmax)):
        click.echo(line)


@cli.command()
@_model_path
@_no_constraints
@_minmax
@click.option("--json", "as_json", is_flag=True, help="Print as JSON.")
@exits_on_error
def info(model_path: str, no_constraints: bool, minmax: Optional[bool], as_json: bool):
    """Sizes of the network: nodes, influences, parameters and parametrisations"""
    model = lib.load_model(model_path)
    summary = lib.model_info(model, lib.constraint_set(model, no_constraints, minmax))
    if as_json:
        click.echo(summary.json(indent=2))
    else:
        click.echo(summary.render(), nl=False)
