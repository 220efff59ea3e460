"""magic4 command line: ``magic4 verify [SUITE ...]``."""
from __future__ import annotations

import sys

import click

from .battery import SUITES, Context, run_checks, select
from .data import FixtureError
from .report import reports_to_json

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _line(rep) -> str:
    tag = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}[rep.status]
    out = f"{tag}  {rep.suite:<13} {rep.name:<26} {rep.checked - rep.failed}/{rep.checked}  {rep.elapsed:7.2f}s"
    if rep.status != "pass":
        extra = f" [{rep.category}]" if rep.category else ""
        out += f"\n      {rep.claim}{extra}\n      {rep.witness}"
    return out


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact and sampled verification of the 4x4 magic square algebra results."""


@main.command()
@click.argument("suites", nargs=-1, type=click.Choice(("all",) + SUITES))
@click.option("--suite", "suite_opt", multiple=True, type=click.Choice(("all",) + SUITES),
              help="Suite to run (repeatable); same as the positional argument.")
@click.option("--samples", type=click.IntRange(min=1), default=None,
              help="Sample count for the sampling checks (default 1e5 geometry, 1e6 degree).")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for every sampled check.")
@click.option("--cone-bound", type=click.IntRange(min=0), default=6, show_default=True,
              help="Coordinate-sum bound of the positive cone sweep.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False, allow_dash=True), default=None,
              help="Write the structured report here ('-' for stdout).")
@click.option("--no-timing", is_flag=True, help="Leave elapsed times out of the JSON report.")
@click.option("--fixtures", type=click.Path(file_okay=False), default=None,
              help="Directory holding the six CSV tables (default: the packaged copy).")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
              help="Worker threads for independent checks and integration blocks.")
@click.option("-q", "--quiet", is_flag=True, help="Only print failures and the summary.")
def verify(suites, suite_opt, samples, seed, cone_bound, json_path, no_timing, fixtures, jobs, quiet):
    """Run the verification battery (all suites by default)."""
    chosen = list(suites) + list(suite_opt)
    ctx = Context(fixtures=fixtures, samples=samples, seed=seed, cone_bound=cone_bound, jobs=jobs)
    checks = select(chosen)
    to_stdout = json_path == "-"
    echo = (lambda s: click.echo(s, err=True)) if to_stdout else click.echo

    def show(rep):
        if not quiet or rep.status != "pass":
            echo(_line(rep))

    try:
        reports = run_checks(checks, ctx, on_report=show)
    except FixtureError as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    failed = [r for r in reports if r.status != "pass"]
    echo(f"{len(reports) - len(failed)} passed, {len(failed)} failed or skipped, {len(reports)} checks")
    if json_path:
        text = reports_to_json(reports, timing=not no_timing)
        if to_stdout:
            click.echo(text)
        else:
            with open(json_path, "w") as fh:
                fh.write(text + "\n")
    sys.exit(EXIT_FAIL if failed else EXIT_OK)


if __name__ == "__main__":
    main()
