#!/usr/bin/env python
"""
Command-line front end for the W(m,n) lattice toolkit.
Usage: python cli.py certify -m 2 -n 3 --format json
"""

import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import click

import analysis
import exports
import oracle
from analysis import AnalysisError
from lattice import LatticeError
from lattice_cache import get_lattice_cache
from words import MNWordError, count_topless, count_words, format_word, iter_words, parse_word, word_stats

logger = logging.getLogger(__name__)


# ============================================================================
# CONFIGURATION
# ============================================================================

DEFAULT_M = 1
DEFAULT_N = 3
DEFAULT_BUDGET = oracle.DEFAULT_BUDGET
DEFAULT_CONJECTURE_BOUNDS = (8, 8)
DEFAULT_VERIFY_BOUNDS = (3, 4)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISAGREEMENT = 2

FORMATS_BY_COMMAND: Dict[str, FrozenSet[str]] = {
    "enumerate": frozenset({"text", "json"}),
    "stats": frozenset({"text", "json"}),
    "certify": frozenset({"text", "json"}),
    "export-hasse": frozenset({"text", "json", "dot"}),
    "galois": frozenset({"text", "json", "dot"}),
    "h-triangle": frozenset({"text", "json", "csv"}),
    "conjecture": frozenset({"text", "json"}),
    "doubling-trace": frozenset({"text", "json"}),
    "verify": frozenset({"text", "json"}),
}
ALL_FORMATS = ["text", "json", "dot", "csv"]


@dataclass(frozen=True)
class RunConfig:
    """Everything one command invocation needs; validated on construction."""

    command: str
    m: int = DEFAULT_M
    n: int = DEFAULT_N
    output_format: str = "text"
    output_path: Optional[Path] = None
    bounds: Optional[Tuple[int, int, Optional[int]]] = None
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.command not in FORMATS_BY_COMMAND:
            raise ValueError(f"unknown command {self.command!r}")
        allowed = FORMATS_BY_COMMAND[self.command]
        if self.output_format not in allowed:
            raise ValueError(
                f"format {self.output_format!r} is not available for {self.command} "
                f"(choose from {', '.join(sorted(allowed))})"
            )
        if self.m < 0 or self.n < 0:
            raise ValueError(f"m and n must be nonnegative, got m={self.m}, n={self.n}")
        if self.budget < 1:
            raise ValueError("budget must be positive")
        if self.bounds is not None and any(b is not None and b < 0 for b in self.bounds):
            raise ValueError("bounds must be nonnegative")


def _make_config(command: str, **kwargs) -> RunConfig:
    try:
        return RunConfig(command, **kwargs)
    except ValueError as e:
        raise click.UsageError(str(e)) from e


def _emit(config: RunConfig, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if config.output_path is not None:
        config.output_path.write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _instance_options(f):
    f = click.option("--output", "output", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help="Write to this file instead of standard output")(f)
    f = click.option("--format", "output_format", type=click.Choice(ALL_FORMATS), default="text",
                     help="Output format")(f)
    f = click.option("-n", "--n", "n", type=int, default=DEFAULT_N, show_default=True, help="Word length")(f)
    f = click.option("-m", "--m", "m", type=int, default=DEFAULT_M, show_default=True, help="Alphabet parameter")(f)
    return f


def _bound_options(default: Tuple[int, int]):
    def decorate(f):
        f = click.option("--output", "output", type=click.Path(dir_okay=False, path_type=Path), default=None,
                         help="Write to this file instead of standard output")(f)
        f = click.option("--format", "output_format", type=click.Choice(ALL_FORMATS), default="text",
                         help="Output format")(f)
        f = click.option("--max-n", type=int, default=default[1], show_default=True)(f)
        f = click.option("--max-m", type=int, default=default[0], show_default=True)(f)
        return f
    return decorate


# ============================================================================
# COMMANDS
# ============================================================================

@click.group()
@click.option("--verbose", is_flag=True, help="Log progress to standard error")
def cli(verbose: bool):
    """Construct, analyze and certify the (m,n)-word lattices W(m,n)."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


@cli.command("enumerate")
@_instance_options
def enumerate_command(m, n, output_format, output):
    """List W(m,n) in lexicographic order."""
    config = _make_config("enumerate", m=m, n=n, output_format=output_format, output_path=output)
    if config.output_format == "json":
        _emit(config, exports.to_json_text(exports.words_to_json(list(iter_words(config.m, config.n)))))
    else:
        _emit(config, "\n".join(format_word(w) for w in iter_words(config.m, config.n)))
    return EXIT_OK


@cli.command("stats")
@_instance_options
@click.argument("word", required=False)
def stats_command(m, n, output_format, output, word):
    """Counts of W(m,n), or the statistics of a single WORD."""
    config = _make_config("stats", m=m, n=n, output_format=output_format, output_path=output)
    if word is not None:
        w = parse_word(config.m, word)
        stats = word_stats(w)
        rep = sorted(analysis.canonical_join_rep(w))
        data = {
            "word": format_word(w),
            "min_letter": stats.min_letter,
            "support": sorted(stats.support),
            "top_count": stats.top_count,
            "in_degree": stats.in_degree,
            "canonical_join_rep": [j.label for j in rep],
            "atom_count": analysis.atom_count(w),
        }
    else:
        data = {
            "m": config.m,
            "n": config.n,
            "count": count_words(config.m, config.n),
            "topless": count_topless(config.m, config.n),
            "in_degree_counts": [analysis.in_degree_count(config.m, config.n, a) for a in range(config.n + 1)],
        }
    if config.output_format == "json":
        _emit(config, exports.to_json_text(data))
    else:
        _emit(config, "\n".join(f"{key}: {value}" for key, value in data.items()))
    return EXIT_OK


@cli.command("certify")
@_instance_options
def certify_command(m, n, output_format, output):
    """Certify extremality, semidistributivity and trimness of W(m,n)."""
    config = _make_config("certify", m=m, n=n, output_format=output_format, output_path=output)
    try:
        certificate = analysis.certify_w(config.m, config.n)
    except AnalysisError as e:
        click.echo(f"disagreement: {e}", err=True)
        return EXIT_DISAGREEMENT
    if config.output_format == "json":
        _emit(config, exports.to_json_text(exports.certificate_to_json(certificate, config.m, config.n)))
    else:
        _emit(config, exports.certificate_to_text(certificate))
    return EXIT_OK


@cli.command("export-hasse")
@_instance_options
def export_hasse_command(m, n, output_format, output):
    """Export the Hasse diagram of W(m,n)."""
    config = _make_config("export-hasse", m=m, n=n, output_format=output_format, output_path=output)
    p = get_lattice_cache().get_lattice(config.m, config.n)
    if config.output_format == "json":
        _emit(config, exports.to_json_text(exports.poset_to_json(p)))
    elif config.output_format == "dot":
        _emit(config, exports.poset_to_dot(p))
    else:
        _emit(config, "\n".join(f"{p.elements[a]} < {p.elements[b]}" for a, b in sorted(p.covers)))
    return EXIT_OK


@cli.command("galois")
@_instance_options
def galois_command(m, n, output_format, output):
    """Galois graph of W(m,n) on its join-irreducibles."""
    config = _make_config("galois", m=m, n=n, output_format=output_format, output_path=output)
    if config.n < 1:
        raise click.UsageError("the Galois graph needs n >= 1")
    graph = analysis.galois_graph_direct(config.m, config.n)
    if config.output_format == "json":
        _emit(config, exports.to_json_text(exports.galois_to_json(graph, config.m, config.n)))
    elif config.output_format == "dot":
        _emit(config, exports.galois_to_dot(graph, config.m, config.n))
    else:
        _emit(config, exports.galois_to_text(graph, config.m, config.n))
    return EXIT_OK


@cli.command("h-triangle")
@_instance_options
def h_triangle_command(m, n, output_format, output):
    """H-triangle by direct summation, checked against the closed form."""
    config = _make_config("h-triangle", m=m, n=n, output_format=output_format, output_path=output)
    triangle = analysis.h_triangle(config.m, config.n)
    if config.output_format == "json":
        _emit(config, exports.to_json_text(exports.h_triangle_to_json(triangle)))
    elif config.output_format == "csv":
        _emit(config, exports.h_triangle_to_csv(triangle))
    else:
        _emit(config, triangle.render())
    for (a, b), coefficient in sorted(triangle.coefficients.items()):
        closed = analysis.h_coefficient_closed_form(config.m, config.n, a, b)
        if closed != coefficient:
            click.echo(f"disagreement: x^{a} y^{b} direct {coefficient}, closed form {closed}", err=True)
            return EXIT_DISAGREEMENT
    return EXIT_OK


@cli.command("conjecture")
@_bound_options(DEFAULT_CONJECTURE_BOUNDS)
@click.option("--max-a", type=int, default=None, help="Largest in-degree to check (default: n)")
def conjecture_command(max_m, max_n, output_format, output, max_a):
    """Scan the conjectured in-degree formula for counterexamples."""
    config = _make_config(
        "conjecture", output_format=output_format, output_path=output, bounds=(max_m, max_n, max_a)
    )
    report = analysis.conjecture_scan(max_m, max_n, max_a)
    if config.output_format == "json":
        _emit(config, exports.to_json_text(exports.conjecture_to_json(report)))
    else:
        _emit(config, report.summary())
    if not report.holds:
        click.echo(f"counterexample: {report.counterexamples[0]}", err=True)
    return EXIT_OK if report.holds else EXIT_DISAGREEMENT


@cli.command("doubling-trace")
@_instance_options
def doubling_trace_command(m, n, output_format, output):
    """Build W(m,n) by interval doublings and list every step."""
    config = _make_config("doubling-trace", m=m, n=n, output_format=output_format, output_path=output)
    try:
        steps, _ = analysis.build_by_doubling(config.m, config.n)
    except AnalysisError as e:
        click.echo(f"disagreement: {e}", err=True)
        return EXIT_DISAGREEMENT
    if config.output_format == "json":
        _emit(config, exports.to_json_text(exports.doubling_trace_to_json(steps, config.m, config.n)))
    else:
        lines = []
        for step in steps:
            bounds = f" by [{step.interval[0]}, {step.interval[1]}]" if step.interval else ""
            lines.append(f"{step.description}{bounds}: {step.size}")
        _emit(config, "\n".join(lines))
    return EXIT_OK


@cli.command("verify")
@_bound_options(DEFAULT_VERIFY_BOUNDS)
@click.option("--budget", type=int, default=DEFAULT_BUDGET, show_default=True,
              help="Candidate letter sequences the oracle may enumerate")
@click.option("--inject-fault", is_flag=True, help="Replace meet by an unnormalized componentwise minimum")
@click.option("--check", "checks", multiple=True, type=click.Choice(oracle.CHECK_NAMES),
              help="Run only these checks (repeatable)")
def verify_command(max_m, max_n, output_format, output, budget, inject_fault, checks):
    """Cross-check everything against the brute-force oracle."""
    config = _make_config(
        "verify", output_format=output_format, output_path=output, bounds=(max_m, max_n, None), budget=budget
    )
    reports = oracle.run_suite(
        max_m,
        max_n,
        budget=config.budget,
        meet_impl=oracle.mutated_meet if inject_fault else None,
        checks=list(checks) or None,
    )
    failed = [r for r in reports if not r.agreed]
    if config.output_format == "json":
        _emit(config, exports.reports_to_jsonl(reports))
    else:
        lines = [f"{len(reports)} checks, {len(failed)} disagreements"]
        lines.extend(f"{r.subject} [{r.instance}]: {r.witness}" for r in failed)
        _emit(config, "\n".join(lines))
    if failed:
        first = failed[0]
        click.echo(f"first disagreement: {first.subject} [{first.instance}]: {first.witness}", err=True)
        return EXIT_DISAGREEMENT
    return EXIT_OK


# ============================================================================
# ENTRY POINT
# ============================================================================

def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command and map the outcome to an exit code.

    Returns:
        0 on success, 1 on usage errors, 2 on any property disagreement
    """
    args: List[str] = list(argv) if argv is not None else sys.argv[1:]
    try:
        result = cli.main(args=args, prog_name="mnwords", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        click.echo("Aborted.", err=True)
        return EXIT_USAGE
    except (MNWordError, LatticeError, AnalysisError) as e:
        click.echo(f"error: {e}", err=True)
        return EXIT_USAGE
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
