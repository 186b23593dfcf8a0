#!/usr/bin/env python3

"""
Command-line front end.
Evaluates eta, theta1, Lambda, Dedekind sums and eta characters, runs the
verification suites and prints Dedekind-sum / character tables.
"""

import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

import attr
import click

import config
from functions.errors import ConvergenceError, DomainError, IsekiError
from functions.exact_core import (
    ExactPhase,
    dedekind_sum,
    eta_character_dedekind,
    eta_character_rademacher,
    gcd,
    render_fraction,
)
from functions.modular_group import UpperHalfPoint, complete_bottom_row, modular_matrix
from functions.q_series import LambdaParams, SeriesConfig, eta, lambda_series, theta1
from reports import writer
from services.sampling import SampleSpec
from services.verifier import FAMILIES, VerificationService, render_value

logger = logging.getLogger(__name__)


class ComplexPair(click.ParamType):
    """RE,IM on the command line; a bare RE means IM = 0"""

    name = "RE,IM"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        parts = str(value).split(",")
        try:
            if len(parts) == 1:
                return complex(float(parts[0]), 0.0)
            if len(parts) == 2:
                return complex(float(parts[0]), float(parts[1]))
        except ValueError:
            pass
        self.fail(f"expected RE,IM, got {value!r}", param, ctx)


COMPLEX = ComplexPair()


@attr.s(frozen=True, slots=True)
class RunConfig:
    """Settings for one invocation: flag, then environment, then config.py"""

    tail_eps: float = attr.ib(default=config.TAIL_EPS)
    max_terms: int = attr.ib(default=config.MAX_TERMS)
    seed: int = attr.ib(default=config.DEFAULT_SEED)
    count: int = attr.ib(default=config.DEFAULT_COUNT)
    fmt: str = attr.ib(default=config.DEFAULT_FORMAT, validator=attr.validators.in_(writer.FORMATS))
    output: Optional[str] = attr.ib(default=None)
    log_level: str = attr.ib(default=config.LOG_LEVEL)

    @property
    def series(self) -> SeriesConfig:
        return SeriesConfig(tail_eps=self.tail_eps, max_terms=self.max_terms)


def setup_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=config.LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def _pick(flag, from_env):
    return flag if flag is not None else from_env()


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--tail-eps", type=float, default=None, help="Series tail tolerance [env IK_TAIL_EPS].")
@click.option("--max-terms", type=int, default=None, help="Term ceiling per series [env IK_MAX_TERMS].")
@click.option("--format", "fmt", type=click.Choice(writer.FORMATS), default=config.DEFAULT_FORMAT,
              show_default=True, help="Report format.")
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="Write to this file instead of stdout.")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              default=None, help="Log level on stderr [env IK_LOG_LEVEL].")
@click.pass_context
def cli(ctx, tail_eps, max_terms, fmt, output, log_level):
    """Iseki-formula kernels: eta, theta1 and their transformation laws."""
    try:
        run = RunConfig(
            tail_eps=_pick(tail_eps, config.tail_eps),
            max_terms=_pick(max_terms, config.max_terms),
            seed=config.seed(),
            count=config.count(),
            fmt=fmt,
            output=output,
            log_level=_pick(log_level, config.log_level),
        )
        run.series
    except ValueError as e:
        raise click.UsageError(str(e))
    setup_logging(run.log_level)
    ctx.obj = run


def _evaluate(compute):
    """Run a kernel for eval; bad input is a usage error, a failed series exits 1"""
    try:
        return compute()
    except DomainError as e:
        raise click.UsageError(str(e))
    except ConvergenceError as e:
        click.echo(f"Error: {e}", err=True)
        click.get_current_context().exit(1)


@cli.group("eval")
def eval_group():
    """Evaluate one function at one point."""


@eval_group.command("eta")
@click.option("--tau", type=COMPLEX, required=True)
@click.pass_obj
def eval_eta(run: RunConfig, tau):
    click.echo(render_value(_evaluate(lambda: eta(UpperHalfPoint(tau), run.series))))


@eval_group.command("theta1")
@click.option("--z", type=COMPLEX, required=True)
@click.option("--tau", type=COMPLEX, required=True)
@click.option("--method", type=click.Choice(["product", "series"]), default="product", show_default=True)
@click.pass_obj
def eval_theta1(run: RunConfig, z, tau, method):
    click.echo(render_value(_evaluate(lambda: theta1(z, UpperHalfPoint(tau), run.series, method))))


@eval_group.command("lambda")
@click.option("--alpha", type=float, required=True)
@click.option("--beta", type=float, required=True)
@click.option("--theta", type=COMPLEX, default="0", show_default=True)
@click.option("--w", type=COMPLEX, required=True)
@click.pass_obj
def eval_lambda(run: RunConfig, alpha, beta, theta, w):
    """Lambda(alpha, beta, w, theta) from the double log series."""
    click.echo(render_value(_evaluate(lambda: lambda_series(LambdaParams(alpha, beta, theta, w), run.series))))


@eval_group.command("dedekind-sum")
@click.option("--h", type=int, required=True)
@click.option("--k", type=int, required=True)
def eval_dedekind_sum(h, k):
    """s(h, k) as an exact fraction."""
    click.echo(render_fraction(_evaluate(lambda: dedekind_sum(h, k))))


def _character(a: int, b: int, c: int, d: int, form: str) -> ExactPhase:
    A = modular_matrix(a, b, c, d)
    if A.c == 0:
        # translation by b: eta(tau + b) = e^{pi i b/12} eta(tau)
        return ExactPhase(Fraction(A.b, 12))
    if form == "rademacher":
        return eta_character_rademacher(A)
    return eta_character_dedekind(A)


@eval_group.command("eta-char")
@click.option("--a", type=int, required=True)
@click.option("--b", type=int, required=True)
@click.option("--c", type=int, required=True)
@click.option("--d", type=int, required=True)
@click.option("--form", type=click.Choice(["dedekind", "rademacher"]), default="dedekind", show_default=True)
def eval_eta_char(a, b, c, d, form):
    """eps(A) = e^{pi i t}: prints t exactly, then the complex value."""
    phase = _evaluate(lambda: _character(a, b, c, d, form))
    click.echo(f"t={phase.render()}")
    click.echo(f"value={render_value(phase.to_complex())}")


@cli.command("verify")
@click.argument("family", type=click.Choice(FAMILIES + ("all",)))
@click.option("--seed", type=int, default=None, help="Sampling seed [env IK_SEED].")
@click.option("--count", type=int, default=None, help="Draws per random family [env IK_COUNT].")
@click.pass_context
def verify(ctx, family, seed, count):
    """Run one family of identity checks (or all of them)."""
    run: RunConfig = ctx.obj
    try:
        spec = SampleSpec(seed=_pick(seed, lambda: run.seed), count=_pick(count, lambda: run.count))
    except DomainError as e:
        raise click.UsageError(str(e))
    service = VerificationService(run.series)
    result = service.run_suite(spec, [family])
    writer.emit(writer.render_result(result, run.fmt), run.output)
    if not result.ok:
        logger.warning("%d check(s) failed", result.failures)
    ctx.exit(0 if result.ok else 1)


@cli.group("table")
def table_group():
    """Exact tables as CSV."""


def _emit_table(run: RunConfig, header, rows) -> None:
    writer.emit(writer.render_rows(header, rows, run.fmt), run.output)


@table_group.command("dedekind")
@click.option("--k-max", type=click.IntRange(min=1), required=True)
@click.pass_obj
def table_dedekind(run: RunConfig, k_max):
    """s(h, k) for 1 <= k <= K and 0 <= h < k coprime to k."""
    rows = (
        (h, k, dedekind_sum(h, k))
        for k in range(1, k_max + 1)
        for h in range(k)
        if gcd(h, k) == 1
    )
    _emit_table(run, ("h", "k", "s"), rows)


@table_group.command("characters")
@click.option("--c-max", type=click.IntRange(min=1), required=True)
@click.pass_obj
def table_characters(run: RunConfig, c_max):
    """Both eps(A) closed forms for every coprime (c, d) with |d| <= c <= C."""

    def rows():
        for c in range(1, c_max + 1):
            for d in range(-c, c + 1):
                if gcd(c, d) != 1:
                    continue
                A = complete_bottom_row(c, d)
                dedekind_form = eta_character_dedekind(A)
                case_form = eta_character_rademacher(A)
                yield (A.a, A.b, A.c, A.d, dedekind_form.t, case_form.t,
                       str(dedekind_form == case_form).lower())

    _emit_table(run, ("a", "b", "c", "d", "t_dedekind", "t_rademacher", "equal"), rows())


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns 0 when everything requested passed, 1 on failure, 2 on usage error"""
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="iseki-kernel",
                      standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except IsekiError as e:
        logger.error("Unhandled %s: %s", type(e).__name__, e)
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())
