#!/usr/bin/env python3
import asyncio
import json
import logging
import sys
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, Optional, Sequence

import click
from dotenv import load_dotenv

# Load .env file at startup
load_dotenv()

from .arith.rationals import format_fraction, parse_fraction  # noqa: E402
from .core import Config  # noqa: E402
from .core.errors import ParseError, QKnotError, exit_code_for  # noqa: E402
from .core.metrics import get_metrics, reset_metrics  # noqa: E402
from .core.workers import resolve_threads  # noqa: E402
from .knots.kashaev import DEFAULT_CAPS, kashaev  # noqa: E402
from .knots.presets import PRESETS, get_preset  # noqa: E402
from .runners import (  # noqa: E402
    ConstantRunner,
    FigureRunner,
    HistRunner,
    LlnRunner,
    ReportWriter,
    RunState,
    ScanRunner,
    VerifyRunner,
    VolumeRunner,
)
from .special.precision import MIN_BITS, check_bits, to_json  # noqa: E402
from .stats.lln import FAMILIES  # noqa: E402

logger = logging.getLogger("qknot")

DEFAULT_LLN_VALUES = {"inverse": (50, 100, 200, 400), "cf3": (50, 100, 200, 400)}


@dataclass
class CliConfig:
    config: Config
    prec: Optional[int]
    threads: int
    fmt: str
    out: Optional[str]
    metrics: Optional[str]
    caps: Dict[int, int] = field(default_factory=dict)

    def bits(self, scan: bool = False) -> int:
        """--prec, else the configured precision (stats.scan_bits for scans)."""
        if self.prec is not None:
            return self.prec
        if scan:
            return check_bits(int(self.config.stats.get('scan_bits', MIN_BITS)))
        return self.config.get_precision().bits

    def fast_double(self, flag: Optional[bool]) -> bool:
        """--fast/--exact, else stats.fast_double."""
        if flag is not None:
            return flag
        return bool(self.config.stats.get('fast_double', True))


def _parse_caps(values: Sequence[str], config: Config) -> Dict[int, int]:
    caps = dict(config.get_caps().by_dimension) or dict(DEFAULT_CAPS)
    for item in values:
        try:
            m, cap = (int(part) for part in item.split(":", 1))
        except ValueError as exc:
            raise ParseError(f"cap override must look like M:K, got {item!r}") from exc
        if m not in caps:
            raise ParseError(f"no cap for dimension {m}")
        caps[m] = cap
    return caps


def _int_list(text: str) -> list:
    try:
        return [int(part) for part in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ParseError(f"expected a comma separated integer list, got {text!r}") from exc


fast_option = click.option(
    '--fast/--exact', 'fast', default=None,
    help='Double precision log|J| for the figure-eight knot (default: stats.fast_double)',
)


def common_options(fn):
    options = [
        click.option('--config', '-c', 'config_path', type=click.Path(exists=True),
                     help='Config file path'),
        click.option('--prec', type=click.IntRange(min=MIN_BITS), help='Working precision in bits'),
        click.option('--threads', type=click.IntRange(min=1),
                     help='Worker processes (default: all logical cores)'),
        click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), help='Output format'),
        click.option('--out', '-o', type=click.Path(dir_okay=False),
                     help='Output file (default: stdout)'),
        click.option('--metrics', type=click.Path(dir_okay=False),
                     help='Write run metrics JSON here'),
        click.option('--cap', 'caps', multiple=True, help='Override a k cap, e.g. 2:2000'),
        click.option('--verbose', '-v', is_flag=True, help='Verbose output'),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _setup(config_path, prec, threads, fmt, out, metrics, caps, verbose) -> CliConfig:
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    cfg = Config(config_path)
    return CliConfig(
        config=cfg,
        prec=prec,
        threads=resolve_threads(threads or int(cfg.execution.get('threads', 0) or 0)),
        fmt=fmt or cfg.reporting.get('format', 'csv'),
        out=out,
        metrics=metrics,
        caps=_parse_caps(caps, cfg),
    )


def _fail(exc: BaseException) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(exit_code_for(exc))


async def _run(runner, state: Dict[str, Any], writer: ReportWriter, out: Optional[str]):
    state = await runner.run(state)
    await writer.write(state, out)
    return state


def _execute(cli: CliConfig, command: str, runner, params: Dict[str, Any], bits: int) -> None:
    reset_metrics()
    metrics = get_metrics()
    metrics.start(command, params)
    state = RunState(
        command=command,
        params=params,
        prec=bits,
        threads=cli.threads,
        output_format=cli.fmt,
        output_path=cli.out,
        start_time=datetime.now(),
    )
    code = 0
    try:
        state = asyncio.run(_run(runner, state, ReportWriter(cli.fmt), cli.out))
        if cli.fmt == "csv":
            for key, value in state.get('summary', {}).items():
                click.echo(f"{key}: {value}", err=True)
        if not state.get('passed', True):
            code = 1
    except (QKnotError, OSError) as e:
        code = exit_code_for(e)
        click.echo(f"error: {e}", err=True)
    finally:
        metrics.complete()
        logger.debug("\n%s", metrics.export_summary())
        if cli.metrics:
            metrics.export_json(cli.metrics)
    sys.exit(code)


@click.group()
def main():
    """
    qknot - Kashaev invariants and q-Pochhammer reciprocity at roots of unity

    Every command writes CSV (or JSON with --format json) to stdout or --out; progress and
    summaries go to stderr.
    """


@main.command('eval')
@click.option('--knot', required=True, type=click.Choice(sorted(PRESETS)), help='Knot name')
@click.option('--q', 'q_text', required=True, help='Root of unity e(h/k) given as h/k')
@common_options
def cmd_eval(knot, q_text, config_path, prec, threads, fmt, out, metrics, caps, verbose):
    """Evaluate J_K at one root of unity and print it as JSON."""
    try:
        cli = _setup(config_path, prec, threads, fmt, out, metrics, caps, verbose)
        x = parse_fraction(q_text)
        bits = cli.bits()
        value = kashaev(knot, x, bits, threads=cli.threads, caps=cli.caps)
    except (QKnotError, OSError) as e:
        _fail(e)
    document = {
        'knot': get_preset(knot).name,
        'q': format_fraction(x),
        'J': to_json(value, bits),
        'abs_imag': str(abs(value.imag)),
        'bits': bits,
    }
    text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    if cli.out:
        try:
            with open(cli.out, 'w', encoding='utf-8') as f:
                f.write(text)
        except OSError as e:
            _fail(e)
    else:
        click.echo(text, nl=False)


@main.command('verify')
@click.argument('subject', type=click.Choice(['ir', 'thp', 'th2', 'th4']))
@click.option('--p', type=int, help='gamma = (p, -qbar; q, pbar)')
@click.option('--q', type=int)
@click.option('--pbar', type=int)
@click.option('--qbar', type=int)
@click.option('--d', type=int, default=1, show_default=True, help='Denominator of x = N/d')
@click.option('--N', 'N_values', multiple=True, type=int, help='Numerator(s) of x = N/d')
@click.option('--r', 'r_text', default='all', show_default=True, help='Index r or "all"')
@click.option('--h', type=int)
@click.option('--k', type=int)
@click.option('--kmax', type=int)
@common_options
def cmd_verify(subject, p, q, pbar, qbar, d, N_values, r_text, h, k, kmax,
               config_path, prec, threads, fmt, out, metrics, caps, verbose):
    """Check a reciprocity formula over a sweep; exit 1 if ir or thp exceeds its threshold."""
    try:
        cli = _setup(config_path, prec, threads, fmt, out, metrics, caps, verbose)
        r = None if r_text == 'all' else _int_list(r_text)[0]
        required = {
            'ir': {'p': p, 'q': q, 'pbar': pbar, 'qbar': qbar, 'N': N_values or None},
            'thp': {'h': h, 'k': k},
            'th2': {'h': h, 'kmax': kmax},
            'th4': {'h': h, 'kmax': kmax},
        }[subject]
        missing = [name for name, value in required.items() if value is None]
        if missing:
            raise ParseError(f"verify {subject} needs --{', --'.join(missing)}")
    except (QKnotError, OSError) as e:
        _fail(e)
    params = dict(required, subject=subject, d=d, r=r)
    if subject == 'ir':
        params['N'] = list(N_values)
    _execute(cli, f"verify {subject}", VerifyRunner(cli.config, cli.threads), params, cli.bits())


@main.command('scan')
@click.option('--knot', default='4_1', type=click.Choice(sorted(PRESETS)), show_default=True)
@click.option('--N', 'N', required=True, type=click.IntRange(min=2), help='Maximal order')
@fast_option
@common_options
def cmd_scan(knot, N, fast, config_path, prec, threads, fmt, out, metrics, caps, verbose):
    """log|J| at every root of unity of order <= N, with H and H*."""
    try:
        cli = _setup(config_path, prec, threads, fmt, out, metrics, caps, verbose)
        bits = cli.bits(scan=True)
    except (QKnotError, OSError) as e:
        _fail(e)
    params = {'knot': knot, 'N': N, 'fast': cli.fast_double(fast)}
    _execute(cli, "scan", ScanRunner(cli.config, cli.threads), params, bits)


@main.command('figure')
@click.option('--N', 'N', required=True, type=click.IntRange(min=2, max=600))
@click.option('--window', nargs=2, type=float, default=None, help='Restrict to lo <= h/k <= hi')
@fast_option
@common_options
def cmd_figure(N, window, fast, config_path, prec, threads, fmt, out, metrics, caps, verbose):
    """Columns x, H, Hstar of the figure-eight knot, sorted by x."""
    try:
        cli = _setup(config_path, prec, threads, fmt, out, metrics, caps, verbose)
        bits = cli.bits(scan=True)
    except (QKnotError, OSError) as e:
        _fail(e)
    params = {
        'N': N, 'window': list(window) if window else None, 'fast': cli.fast_double(fast),
    }
    _execute(cli, "figure", FigureRunner(cli.config, cli.threads), params, bits)


@main.command('lln')
@click.option('--family', 'family_name', required=True, type=click.Choice(list(FAMILIES)))
@click.option('--n-max', type=click.IntRange(min=4), default=22, show_default=True,
              help='Largest index of the Fibonacci family')
@click.option('--values', 'values_text', help='Comma separated family parameters')
@fast_option
@common_options
def cmd_lln(family_name, n_max, values_text, fast, config_path, prec, threads, fmt, out,
            metrics, caps, verbose):
    """log J_{4_1} against (Vol/2pi) Sigma along a family; prints the fitted slope."""
    try:
        cli = _setup(config_path, prec, threads, fmt, out, metrics, caps, verbose)
        bits = cli.bits(scan=True)
        if values_text:
            values = _int_list(values_text)
        elif family_name == 'fib':
            values = list(range(3, n_max + 1))
        else:
            values = list(DEFAULT_LLN_VALUES[family_name])
    except (QKnotError, OSError) as e:
        _fail(e)
    params = {'family': family_name, 'values': values, 'fast': cli.fast_double(fast)}
    _execute(cli, "lln", LlnRunner(cli.config, cli.threads), params, bits)


@main.command('hist')
@click.option('--knot', default='4_1', type=click.Choice(sorted(PRESETS)), show_default=True)
@click.option('--N', 'N', required=True, type=click.IntRange(min=3))
@click.option('--bins', type=click.IntRange(min=1), help='Histogram bins')
@click.option('--d-k', 'd_k', type=float, help='Fixed centering instead of the median fit')
@fast_option
@common_options
def cmd_hist(knot, N, bins, d_k, fast, config_path, prec, threads, fmt, out, metrics, caps,
             verbose):
    """Normalised log|J| over Q_N against the stable law; prints the KS distance."""
    try:
        cli = _setup(config_path, prec, threads, fmt, out, metrics, caps, verbose)
        bits = cli.bits(scan=True)
    except (QKnotError, OSError) as e:
        _fail(e)
    params = {'knot': knot, 'N': N, 'bins': bins, 'd_k': d_k, 'fast': cli.fast_double(fast)}
    _execute(cli, "hist", HistRunner(cli.config, cli.threads), params, bits)


@main.command('volume')
@click.option('--knot', required=True, type=click.Choice(sorted(PRESETS)))
@common_options
def cmd_volume(knot, config_path, prec, threads, fmt, out, metrics, caps, verbose):
    """Vol and CS from the geometric critical point of the potential."""
    try:
        cli = _setup(config_path, prec, threads, fmt, out, metrics, caps, verbose)
    except (QKnotError, OSError) as e:
        _fail(e)
    _execute(cli, "volume", VolumeRunner(cli.config, cli.threads), {'knot': knot}, cli.bits())


@main.command('constant')
@click.option('--knot', required=True, type=click.Choice(sorted(PRESETS)))
@click.option('--gamma', 'gamma_text', default='0,-1,1,0', show_default=True,
              help='a,b,c,d of gamma = (a, b; c, d)')
@click.option('--d', type=click.IntRange(min=1), default=1, show_default=True)
@click.option('--N', 'N_text', required=True, help='Comma separated increasing N values')
@common_options
def cmd_constant(knot, gamma_text, d, N_text, config_path, prec, threads, fmt, out, metrics,
                 caps, verbose):
    """Extrapolated constant of J(gamma x)/J(x) and, for 4_1 and 5_2, its closed form."""
    try:
        cli = _setup(config_path, prec, threads, fmt, out, metrics, caps, verbose)
        gamma = _int_list(gamma_text)
        if len(gamma) != 4:
            raise ParseError(f"--gamma needs four integers, got {gamma_text!r}")
        N_list = _int_list(N_text)
    except (QKnotError, OSError) as e:
        _fail(e)
    params = {'knot': knot, 'gamma': gamma, 'd': d, 'N_list': N_list}
    _execute(cli, "constant", ConstantRunner(cli.config, cli.threads), params, cli.bits())


if __name__ == '__main__':
    main()
