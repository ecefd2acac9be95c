"""Main CLI application for the mapping-torus splitting tool."""

import os
import sys
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Tuple

import click

try:
    from colorama import init as colorama_init
    colorama_init()
except ImportError:
    pass

from .atoroidal import check_splitex_abelian, check_splitex_direct, extend_by_letter, toroidal_scan
from .config.manager import CONFIG_FILENAME, ConfigManager, RunConfig
from .intlinalg import characteristic_polynomial
from .morphisms import abelianization_matrix, load_automorphism, save_automorphism
from .splitting import (
    INESSENTIAL,
    check_splitting,
    describe_anchors,
    description_presentation,
    emit_splitting,
    format_description,
    load_certificate,
    save_certificate,
    synthesize_instance,
    verify_certificate,
)
from .torus import MappingTorus, h1_invariants, load_script, replay_script, standard_presentation
from .utils.helpers import print_colored, resolve_input, setup_logging
from .words import format_word, parse_word

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT_ERROR = 2
EXIT_OBSTRUCTION = 3


def init_config(ctx) -> ConfigManager:
    """Initialize configuration and logging when needed."""
    if 'config' not in ctx.obj:
        try:
            config_manager = ConfigManager(ctx.obj.get('config_path'))
        except (FileNotFoundError, ValueError) as e:
            print_colored(f"Configuration Error: {e}", 'RED')
            print_colored("You can create a sample configuration file using:", 'YELLOW')
            print_colored("  torus-tool config create", 'YELLOW')
            sys.exit(EXIT_INPUT_ERROR)
        ctx.obj['config'] = config_manager

        log_config = config_manager.get_logging_config()
        log_level = 'DEBUG' if ctx.obj.get('verbose') else log_config.get('level', 'WARNING')
        setup_logging(
            log_level=log_level,
            log_file=log_config.get('file') or None,
            log_format=log_config.get('format')
        )
    return ctx.obj['config']


def run_config(ctx, command: str, inputs=(), **overrides) -> RunConfig:
    manager = init_config(ctx)
    try:
        resolved = [resolve_input(path) for path in inputs]
        return RunConfig.build(command, manager, resolved, output_format=ctx.obj.get('format'),
                               seed=ctx.obj.get('seed'), **overrides)
    except (FileNotFoundError, ValueError) as e:
        input_error(ctx, e)


def structured(ctx) -> bool:
    if ctx.obj.get('format'):
        return ctx.obj['format'] == 'structured'
    return init_config(ctx).get_output_config()['format'] == 'structured'


def report(ctx, data: Dict[str, Any], lines: List[Tuple[str, str]]) -> None:
    """Print one JSON document in structured mode, colored lines otherwise."""
    if structured(ctx):
        click.echo(json.dumps(data, sort_keys=True, ensure_ascii=False))
        return
    for text, color in lines:
        print_colored(text, color)


def input_error(ctx, error: Exception) -> None:
    logger.debug("Input error details:", exc_info=True)
    if structured(ctx):
        click.echo(json.dumps({'error': str(error), 'exit_code': EXIT_INPUT_ERROR}, sort_keys=True))
    else:
        print_colored(f"Input error: {error}", 'RED')
    sys.exit(EXIT_INPUT_ERROR)


@click.group()
@click.option('--config', '-c', help='Path to configuration file')
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose logging')
@click.option('--format', 'output_format', type=click.Choice(['text', 'structured']),
              help='Report format (overrides config)')
@click.option('--seed', type=int, help='Seed for synthesized instances (overrides config)')
@click.pass_context
def cli(ctx, config, verbose, output_format, seed):
    """Mapping-torus tool - verify and emit splittings of free-by-cyclic groups over Z."""
    ctx.ensure_object(dict)
    ctx.obj['config_path'] = config
    ctx.obj['verbose'] = verbose
    ctx.obj['format'] = output_format
    ctx.obj['seed'] = seed


@cli.group()
def config():
    """Configuration management commands."""
    pass


@config.command('create')
@click.argument('path', default=CONFIG_FILENAME)
def config_create(path):
    """Create a sample configuration file."""
    if os.path.exists(path):
        if not click.confirm(f"Configuration file {path} already exists. Overwrite?"):
            print_colored("Configuration creation cancelled.", 'YELLOW')
            return
    try:
        ConfigManager.create_sample_config(path)
    except FileNotFoundError as e:
        print_colored(f"Failed to create configuration: {e}", 'RED')
        sys.exit(EXIT_INPUT_ERROR)
    print_colored(f"Sample configuration created at: {path}", 'GREEN')


def _load_pair(ctx, automorphism: str, certificate: str):
    run = run_config(ctx, 'verify', [automorphism, certificate])
    try:
        return load_automorphism(run.inputs[0]), load_certificate(run.inputs[1])
    except (FileNotFoundError, ValueError) as e:
        input_error(ctx, e)


@cli.command('verify-cert')
@click.argument('automorphism')
@click.argument('certificate')
@click.pass_context
def verify_cert(ctx, automorphism, certificate):
    """Check AUTOMORPHISM against the case template of CERTIFICATE."""
    phi, cert = _load_pair(ctx, automorphism, certificate)
    try:
        result = verify_certificate(phi, cert)
    except ValueError as e:
        input_error(ctx, e)

    data: Dict[str, Any] = {'command': 'verify-cert', 'case': cert.tag, 'accepted': result.accepted}
    if result.accepted:
        data['witnesses'] = result.witnesses.as_dict()
        lines = [(f"case {cert.tag}: accepted", 'GREEN'), (str(result.witnesses), 'WHITE')]
    else:
        data.update(clause=result.clause, letter=result.letter, word=result.word or '1')
        lines = [(f"case {cert.tag}: rejected", 'RED'), (str(result), 'YELLOW')]
    report(ctx, data, lines)
    sys.exit(EXIT_OK if result.accepted else EXIT_REJECTED)


@cli.command('emit-splitting')
@click.argument('automorphism')
@click.argument('certificate')
@click.pass_context
def emit_splitting_command(ctx, automorphism, certificate):
    """Print the splitting an accepted CERTIFICATE displays, checked in M_phi."""
    phi, cert = _load_pair(ctx, automorphism, certificate)
    try:
        result = verify_certificate(phi, cert)
        if not result.accepted:
            report(ctx, {'command': 'emit-splitting', 'case': cert.tag, 'accepted': False,
                         'clause': result.clause, 'letter': result.letter, 'word': result.word or '1'},
                   [(f"case {cert.tag}: rejected", 'RED'), (str(result), 'YELLOW')])
            sys.exit(EXIT_REJECTED)
        M = MappingTorus(phi)
        desc = emit_splitting(M, cert, result.witnesses)
        violations = check_splitting(desc, M)
        h1_original = h1_invariants(standard_presentation(M))
        h1_splitting = h1_invariants(description_presentation(desc, M))
    except ValueError as e:
        input_error(ctx, e)

    valid = not violations and h1_original == h1_splitting
    data = {
        'command': 'emit-splitting',
        'case': cert.tag,
        'accepted': True,
        'kind': desc.kind.value,
        'splitting': format_description(desc),
        'anchors': describe_anchors(desc),
        'tag': desc.tag,
        'h1_original': str(h1_original),
        'h1_splitting': str(h1_splitting),
        'violations': [str(v) for v in violations],
        'valid': valid,
    }
    lines = [(format_description(desc), 'CYAN')]
    lines += [(f"  {line}", 'WHITE') for line in describe_anchors(desc)]
    if desc.tag == INESSENTIAL:
        lines.append(("  edge group is not maximal cyclic (inessential)", 'YELLOW'))
    lines.append((f"H1 original:  {h1_original}", 'WHITE'))
    lines.append((f"H1 splitting: {h1_splitting}", 'WHITE' if h1_original == h1_splitting else 'RED'))
    lines += [(f"violation: {v}", 'RED') for v in violations]
    lines.append(("check: ok" if valid else "check: FAILED", 'GREEN' if valid else 'RED'))
    report(ctx, data, lines)
    sys.exit(EXIT_OK if valid else EXIT_REJECTED)


@cli.command('scan-toroidal')
@click.argument('automorphism')
@click.option('--max-len', '-L', type=int, help='Longest cyclic word (overrides config)')
@click.option('--max-power', '-M', type=int, help='Largest power (overrides config)')
@click.option('--workers', type=int, help='Worker threads (overrides config)')
@click.pass_context
def scan_toroidal(ctx, automorphism, max_len, max_power, workers):
    """Search for conjugacy classes of AUTOMORPHISM preserved by some power."""
    run = run_config(ctx, 'scan-toroidal', [automorphism], max_len=max_len, max_power=max_power,
                     workers=workers)
    try:
        phi = load_automorphism(run.inputs[0])
        scan = toroidal_scan(phi, run.max_len, run.max_power, workers=run.workers,
                             show_progress=ctx.obj.get('verbose', False))
    except (FileNotFoundError, ValueError) as e:
        input_error(ctx, e)

    data = dict(scan.as_dict(), command='scan-toroidal')
    lines = [(scan.header(), 'CYAN')] + [(str(o), 'YELLOW') for o in scan.obstructions]
    report(ctx, data, lines)
    sys.exit(EXIT_OBSTRUCTION if scan.toroidal else EXIT_OK)


@cli.command('splitex-check')
@click.argument('automorphism')
@click.option('--word', '-w', required=True, help='Word w in psi(a) = a w')
@click.option('--k-max', type=int, help='Largest k (overrides config)')
@click.option('--v-max', type=int, help='Longest v for the direct search (overrides config)')
@click.pass_context
def splitex_check(ctx, automorphism, word, k_max, v_max):
    """Check the hypothesis on w for extending AUTOMORPHISM by a letter a -> a w."""
    run = run_config(ctx, 'splitex-check', [automorphism], k_max=k_max, v_max=v_max)
    try:
        phi1 = load_automorphism(run.inputs[0])
        w = parse_word(word, phi1.basis)
        psi = extend_by_letter(phi1, w)
        solution = check_splitex_direct(phi1, w, run.k_max, run.v_max)
        verdicts = check_splitex_abelian(phi1, w, run.k_max)
    except (FileNotFoundError, ValueError) as e:
        input_error(ctx, e)

    new_letter = psi.basis.letters[-1]
    data = {
        'command': 'splitex-check',
        'extension': f"{new_letter} -> {format_word(psi.image(new_letter))}",
        'k_max': run.k_max,
        'v_max': run.v_max,
        'direct': None if solution is None else {'k': solution.k, 'v': format_word(solution.v) or '1'},
        'abelian': [{'k': v.k, 'verdict': v.verdict.value, 'solution': v.solution} for v in verdicts],
    }
    lines = [(f"extension: {data['extension']}", 'CYAN')]
    if solution is None:
        lines.append((f"direct: none for k<={run.k_max}, |v|<={run.v_max}", 'GREEN'))
    else:
        lines.append((f"direct: {solution}", 'RED'))
    lines += [(f"abelian: {verdict}", 'WHITE') for verdict in verdicts]
    report(ctx, data, lines)
    sys.exit(EXIT_OK if solution is None else EXIT_REJECTED)


@cli.command('h1')
@click.argument('automorphism')
@click.pass_context
def h1(ctx, automorphism):
    """Abelian invariants of the mapping torus of AUTOMORPHISM."""
    run = run_config(ctx, 'h1', [automorphism])
    try:
        M = MappingTorus(load_automorphism(run.inputs[0]))
        invariants = h1_invariants(standard_presentation(M))
        charpoly = characteristic_polynomial(abelianization_matrix(M.phi))
    except (FileNotFoundError, ValueError) as e:
        input_error(ctx, e)

    data = {
        'command': 'h1',
        'h1': str(invariants),
        'free_rank': invariants.free_rank,
        'torsion': list(invariants.torsion),
        'charpoly': charpoly,
    }
    lines = [(f"H1 = {invariants}", 'CYAN'), (f"charpoly = {' '.join(str(c) for c in charpoly)}", 'WHITE')]
    report(ctx, data, lines)


@cli.command('tietze-replay')
@click.argument('script')
@click.pass_context
def tietze_replay(ctx, script):
    """Replay a Tietze SCRIPT, checking anchors and H1 after every move."""
    run = run_config(ctx, 'tietze-replay', [script])
    try:
        replay = replay_script(load_script(run.inputs[0]), show_progress=ctx.obj.get('verbose', False))
    except (FileNotFoundError, ValueError) as e:
        input_error(ctx, e)

    data = {
        'command': 'tietze-replay',
        'initial': replay.initial,
        'initial_h1': str(replay.initial_h1),
        'steps': [{'line': step.line, 'move': step.move, 'mode': step.mode, 'h1': str(step.h1),
                   'presentation': step.presentation, 'violations': [str(v) for v in step.violations]}
                  for step in replay.steps],
        'final': str(replay.final) if replay.final is not None else None,
        'final_matches': replay.final_matches,
        'error': replay.error,
        'ok': replay.ok,
    }
    lines = [(f"start: {replay.initial}  H1 = {replay.initial_h1}", 'CYAN')]
    for step in replay.steps:
        lines.append((f"line {step.line}: {step.move} [{step.mode}]  H1 = {step.h1}", 'WHITE'))
        lines.append((f"  {step.presentation}", 'WHITE'))
        lines += [(f"  violation: {v}", 'RED') for v in step.violations]
    if replay.error:
        lines.append((f"error: {replay.error}", 'RED'))
    if replay.final_matches is not None:
        lines.append((f"final matches expected: {'yes' if replay.final_matches else 'no'}",
                      'GREEN' if replay.final_matches else 'RED'))
    lines.append(("replay: ok" if replay.ok else "replay: FAILED", 'GREEN' if replay.ok else 'RED'))
    report(ctx, data, lines)
    sys.exit(EXIT_OK if replay.ok else EXIT_REJECTED)


def _parse_params(params: Tuple[str, ...]) -> Dict[str, int]:
    parsed = {}
    for item in params:
        key, sep, value = item.partition('=')
        if not sep:
            raise ValueError(f"Parameter {item!r} must look like key=value")
        try:
            parsed[key.strip()] = int(value)
        except ValueError:
            raise ValueError(f"Parameter {key.strip()} needs an integer, got {value!r}")
    return parsed


@cli.command('synthesize')
@click.argument('case', type=click.Choice(['A', 'B', 'D', 'E'], case_sensitive=False))
@click.option('--param', '-p', multiple=True, help='Fixed parameter, e.g. -p k=2 -p m=3')
@click.option('--output', '-o', default='.', help='Output directory')
@click.pass_context
def synthesize(ctx, case, param, output):
    """Write a random automorphism and certificate of template CASE."""
    run = run_config(ctx, 'synthesize')
    try:
        phi, cert = synthesize_instance(case.upper(), _parse_params(param), seed=run.seed)
    except ValueError as e:
        input_error(ctx, e)

    out_dir = Path(output)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = f"case_{cert.tag.lower()}_{run.seed}"
    aut_path, cert_path = out_dir / f"{stem}.aut", out_dir / f"{stem}.cert"
    save_automorphism(phi, aut_path)
    save_certificate(cert, cert_path)
    report(ctx, {'command': 'synthesize', 'case': cert.tag, 'seed': run.seed,
                 'automorphism': str(aut_path), 'certificate': str(cert_path)},
           [(f"Wrote {aut_path}", 'GREEN'), (f"Wrote {cert_path}", 'GREEN')])


if __name__ == '__main__':
    cli()
