"""The ``inverse``, ``ep-check`` and ``verify`` commands."""

import functools
import json
from pathlib import Path
from typing import Any, Dict, List, Optional

import click
from flask import current_app, render_template

from app.cli import cli_bp
from app.models import (
    ElementParseError,
    EnumerationCapExceeded,
    IncompatibleSubsets,
    IntegrityFault,
    InvalidRingSpec,
    InverseKind,
    PreconditionError,
    UnsupportedPath,
)
from app.services.ep_oracle import ep_baseline, evaluate, select
from app.services.gen_inverse import METHODS, inverse_bundle
from app.services.star_ring import StarRing, ring_make, ring_summary
from app.services.verifier import build_corpus, emit_report, emit_reports, run_suite
from app.utils.formatting import (
    element_to_json,
    parse_element,
    parse_element_json,
    parse_ring_spec,
)
from config import Config

EXIT_DISAGREEMENT = 1
EXIT_CAP = 3
EXIT_PARSE = 4
EXIT_PRECONDITION = 5

FORMATS = ('text', 'json')


class CommandError(click.ClickException):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def reports_errors(fn):
    """Turn package errors into click errors carrying the documented exit codes."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except EnumerationCapExceeded as exc:
            raise CommandError(str(exc), EXIT_CAP) from exc
        except (InvalidRingSpec, ElementParseError) as exc:
            raise CommandError(str(exc), EXIT_PARSE) from exc
        except (PreconditionError, UnsupportedPath, IncompatibleSubsets) as exc:
            raise CommandError(str(exc), EXIT_PRECONDITION) from exc
        except IntegrityFault as exc:
            current_app.logger.error('integrity fault: %s', exc)
            raise CommandError(f'integrity fault: {exc}', EXIT_DISAGREEMENT) from exc
    return wrapper


def _ring(text: str) -> StarRing:
    return ring_make(parse_ring_spec(text), cap=current_app.config['ENUM_CAP'])


def _load_element(ring: StarRing, element_text: Optional[str], input_path: Optional[str]):
    if (element_text is None) == (input_path is None):
        raise click.UsageError('give exactly one of --element or --input')
    if element_text is not None:
        return parse_element(ring, element_text)
    return parse_element_json(ring, Path(input_path).read_text(encoding='utf-8'))


def _json(document: Any) -> bytes:
    return (json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + '\n').encode()


def _emit(payload: bytes, out: Optional[str]) -> None:
    if out:
        Path(out).write_bytes(payload)
    else:
        click.echo(payload.decode(), nl=False)


def _optional_json(element):
    return None if element is None else element_to_json(element)


ring_option = click.option(
    '--ring', 'ring_text', metavar='SPEC',
    help='Zmod:<n> or Mat:<k>:Q|Qi|GF<p>|Zmod<n>, optionally /<involution>.',
)
element_option = click.option('--element', 'element_text', help='Inline element, e.g. [[0,1],[0,1]].')
input_option = click.option(
    '--input', 'input_path', type=click.Path(exists=True, dir_okay=False),
    help='JSON element file ({"rows", "cols", "entries"} or {"value"}).',
)
method_option = click.option('--method', type=click.Choice(METHODS), default='auto',
                             show_default=True)
format_option = click.option('--format', 'fmt', type=click.Choice(FORMATS), default='text',
                             show_default=True)
out_option = click.option('--out', type=click.Path(dir_okay=False), help='Write to a file.')
n_option = click.option('--n', 'n_max', type=click.IntRange(1, Config.N_EP_MAX),
                        help='Largest n for the n-EP characterizations.')


@cli_bp.cli.command('inverse')
@ring_option
@element_option
@input_option
@method_option
@format_option
@out_option
@reports_errors
def inverse(ring_text, element_text, input_path, method, fmt, out):
    """Compute every generalized inverse of an element, with certificates."""
    if not ring_text:
        raise click.UsageError('--ring is required')
    ring = _ring(ring_text)
    a = _load_element(ring, element_text, input_path)
    bundle = inverse_bundle(a, method)
    ep = ep_baseline(a, method)

    rows = [
        {
            'kind': kind.value,
            'value': bundle.get(kind),
            'certificates': bundle.certificates.get(kind, ()),
            'reason': bundle.reasons.get(kind, ''),
        }
        for kind in InverseKind
    ]
    if fmt == 'json':
        payload = _json({
            'ring': ring_summary(ring),
            'element': element_to_json(a),
            'ep': ep,
            'inverses': {
                row['kind']: {
                    'value': _optional_json(row['value']),
                    'certificates': {c.equation: c.holds for c in row['certificates']},
                    'reason': row['reason'],
                }
                for row in rows
            },
        })
    else:
        payload = render_template('inverse.txt', ring=ring.spec.label, element=a,
                                  rows=rows, ep=ep).encode()
    _emit(payload, out)


@cli_bp.cli.command('ep-check')
@ring_option
@element_option
@input_option
@click.option('--suite', default='all', show_default=True,
              help="'all' or a comma list of groups and characterization ids.")
@n_option
@method_option
@format_option
@out_option
@reports_errors
def ep_check(ring_text, element_text, input_path, suite, n_max, method, fmt, out):
    """Evaluate the EP characterizations on one element against the baseline."""
    if not ring_text:
        raise click.UsageError('--ring is required')
    ring = _ring(ring_text)
    a = _load_element(ring, element_text, input_path)
    n_max = n_max or current_app.config['N_EP_DEFAULT']
    verdict = evaluate(a, select(suite, n_max), n_max, method)
    disagreements = verdict.disagreements()
    rows = [{'cid': cid, 'verdict': v} for cid, v in sorted(verdict.verdicts.items())]

    if fmt == 'json':
        payload = _json({
            'ring': ring_summary(ring),
            'element': element_to_json(a),
            'baseline': verdict.baseline,
            'consensus': not disagreements,
            'disagreements': [str(cid) for cid in disagreements],
            'verdicts': {
                str(row['cid']): {
                    'value': row['verdict'].value,
                    'provenance': row['verdict'].provenance.value,
                    'witness': _optional_json(row['verdict'].witness),
                    'note': row['verdict'].note,
                }
                for row in rows
            },
        })
    else:
        payload = render_template('ep_check.txt', ring=ring.spec.label, element=a,
                                  baseline=verdict.baseline, rows=rows,
                                  disagreements=disagreements).encode()
    _emit(payload, out)
    if disagreements:
        current_app.logger.warning('%d characterization(s) disagree with the baseline',
                                   len(disagreements))
        click.get_current_context().exit(EXIT_DISAGREEMENT)


def _corpus_plans(ring_text, use_random, input_path, defaults, seed, count) -> List[Dict]:
    config = current_app.config
    if defaults:
        if ring_text or use_random or input_path:
            raise click.UsageError('--defaults cannot be combined with --ring, --random or --input')
        return [dict(plan) for plan in config['DEFAULT_CORPORA']]
    if not ring_text:
        raise click.UsageError('--ring is required unless --defaults is given')
    if use_random and input_path:
        raise click.UsageError('--random and --input are mutually exclusive')
    if use_random:
        return [{
            'ring': ring_text,
            'source': 'random',
            'seed': config['DEFAULT_SEED'] if seed is None else seed,
            'count': config['DEFAULT_COUNT'] if count is None else count,
        }]
    if input_path:
        return [{'ring': ring_text, 'source': 'explicit', 'input': input_path}]
    return [{'ring': ring_text, 'source': 'exhaustive'}]


def _build_plan(plan: Dict):
    ring = _ring(plan['ring'])
    if plan['source'] != 'explicit':
        corpus = build_corpus(ring, plan['source'], seed=plan.get('seed'),
                              count=plan.get('count', 0))
        return ring, corpus
    try:
        documents = json.loads(Path(plan['input']).read_text(encoding='utf-8'))
    except json.JSONDecodeError as exc:
        raise ElementParseError(f'invalid JSON corpus: {exc}') from exc
    if not isinstance(documents, list):
        raise ElementParseError('a corpus file holds a JSON array of elements')
    elements = [parse_element_json(ring, document) for document in documents]
    return ring, build_corpus(ring, 'explicit', elements=elements)


@cli_bp.cli.command('verify')
@ring_option
@click.option('--random', 'use_random', is_flag=True, help='Structured random corpus.')
@click.option('--input', 'input_path', type=click.Path(exists=True, dir_okay=False),
              help='JSON array of elements to use as the corpus.')
@click.option('--defaults', is_flag=True, help='Run every shipped default corpus.')
@click.option('--seed', type=int, help='Random corpus seed.')
@click.option('--count', type=click.IntRange(min=1), help='Random corpus size.')
@click.option('--suite', default='all', show_default=True,
              help="'all' or a comma list of groups and characterization ids.")
@n_option
@method_option
@click.option('--workers', type=click.IntRange(min=1), default=1, show_default=True)
@click.option('--timing', is_flag=True, help='Include wall time in the report.')
@format_option
@out_option
@reports_errors
def verify(ring_text, use_random, input_path, defaults, seed, count, suite, n_max, method,
           workers, timing, fmt, out):
    """Run a characterization suite over a corpus and report disagreements."""
    config = current_app.config
    n_max = n_max or config['N_EP_DEFAULT']
    plans = _corpus_plans(ring_text, use_random, input_path, defaults, seed, count)
    current_app.logger.info('verify: %d corpus plan(s), suite %s', len(plans), suite)

    reports = []
    for plan in plans:
        ring, corpus = _build_plan(plan)
        reports.append(run_suite(corpus, ring, suite, n_max, method, workers))

    schema = config['REPORT_SCHEMA_VERSION']
    if len(reports) == 1:
        payload = emit_report(reports[0], fmt, schema, timing)
    else:
        payload = emit_reports(reports, fmt, schema, timing)
    _emit(payload, out)
    if not all(report.ok for report in reports):
        click.get_current_context().exit(EXIT_DISAGREEMENT)
