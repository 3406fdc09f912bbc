"""Corpus construction and theorem-suite execution.

A suite evaluates every selected characterization on every corpus element and
tallies agreement with the EP baseline. Structural identities (inverse
certificates, decompositions, core identities, solution sets, ...) are
counted as pass/fail checks. Disagreements are data: they are logged and
reported, never raised.
"""

import itertools
import json
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from flask import render_template

from app.models import (
    CheckTally,
    Corpus,
    Counterexample,
    DecompositionKind,
    Element,
    InverseKind,
    PreconditionError,
    Provenance,
    RingKind,
    SubsetKind,
    Tally,
    TheoremReport,
)
from app.services import linalg
from app.services.ep_oracle import (
    FAMILIES,
    THREE_EQUATION_SYSTEMS,
    Characterization,
    ep_baseline,
    evaluate,
    n_ep,
    select,
    singleton_claims,
    solution_set,
    standalone_commutator,
    unit_construction,
)
from app.services.gen_inverse import (
    compute_inverse,
    core_identities,
    core_inverse,
    decomposition,
    group_inverse,
    inverse_bundle,
    one_inverse,
    search_solutions,
    star_duality,
)
from app.services.star_ring import StarRing, subset_handle, subset_included
from app.utils.formatting import format_element

logger = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = '1.0'

# Statements the suite covers, each mapped to the characterization groups or
# structural checks that exercise it.
STATEMENTS: Dict[str, Tuple[str, ...]] = {
    'EP iff a^# exists with aa^# Hermitian': ('group-projector',),
    'EP by three equations (xa Hermitian)': ('three-equations',),
    'witness set of the three equations': ('solution-sets',),
    'singleton witness sets in prime rings': ('singleton-claims',),
    'annihilator and ideal inclusion duality': ('annihilator-duality',),
    'EP by range and annihilator conditions': ('range-conditions',),
    'witness sets of the range conditions': ('solution-sets',),
    'EP by three equations (ay Hermitian)': ('three-equations',),
    'EP by mirrored range and annihilator conditions': ('range-conditions',),
    'EP by three commuting equations': ('three-equations',),
    'singleton commuting witness set in semiprime rings': ('singleton-claims',),
    'EP by an annihilator inclusion and two equations': ('two-condition',),
    'core inverse by five equations': ('inverse-certificates', 'uniqueness-by-search'),
    'group and EP idempotent decompositions': (
        'group-decomposition', 'ep-decomposition', 'projection-decomposition',
        'group-idempotent',
    ),
    'core projection decomposition': ('core-decomposition', 'core-projection-uniqueness'),
    'EP through commuting with a† or core a': ('inverse-commuting',),
    'core inverse identities': ('core-identities',),
    'EP by core inverse conditions': ('core-conditions',),
    'EP by range equality': ('range-equality',),
    'EP by range inclusion for group invertible elements': ('inclusions',),
    'EP by range inclusion for core invertible elements': ('inclusions',),
    'EP by the core commutator': ('core-commutator',),
    'EP by a unit or a factor of core a': ('unit-factor', 'left-invertible-factor',
                                           'unit-construction'),
    'witness set of core a = xa': ('solution-sets',),
    'EP iff n-EP and group invertible': ('n-ep', 'n-ep-closure'),
    'EP by a unit or left invertible factor of a†': ('unit-factor', 'left-invertible-factor',
                                                     'mp-group-factor'),
    'EP by commutators with a†': ('commutator-conditions',),
    'EP by power ranges': ('power-range',),
    'dual core inverse as star dual of the core inverse': ('star-duality',),
    'EP is preserved by the involution': ('star-symmetry',),
}

ELEMENT_CHECKS = (
    'inverse-certificates', 'uniqueness-by-search', 'closed-form-agreement',
    'core-identities', 'group-decomposition', 'ep-decomposition', 'core-decomposition',
    'star-duality', 'star-symmetry', 'unit-construction', 'n-ep-closure', 'solution-sets',
    'witness-validity', 'group-idempotent', 'core-projection-uniqueness',
)
RING_CHECKS = (
    'involution-laws', 'annihilator-duality', 'realization-agreement', 'singleton-claims',
)


# ========================================
# Corpora
# ========================================

CONSTRUCTIONS = ('full-rank', 'rank-deficient', 'nilpotent', 'hermitian', 'idempotent',
                 'projection', 'ep', 'diagonalizable')
# Uniform exact matrices are almost always invertible, so structured shapes dominate.
CONSTRUCTION_WEIGHTS = (1, 3, 2, 2, 2, 2, 2, 2)


def build_corpus(ring: StarRing, source: str = 'exhaustive', seed: Optional[int] = None,
                 count: int = 0, elements: Optional[Sequence[Element]] = None) -> Corpus:
    if source == 'exhaustive':
        return Corpus('exhaustive', ring.spec, ring.elements())
    if source == 'explicit':
        chosen = tuple(elements or ())
        if any(e.ring != ring for e in chosen):
            raise PreconditionError('explicit corpus elements must belong to the ring')
        return Corpus('explicit', ring.spec, chosen, count=len(chosen))
    if source != 'random':
        raise PreconditionError(f'unknown corpus source {source!r}')
    if count < 1:
        raise PreconditionError(f'random corpora need count >= 1, got {count}')
    if ring.spec.kind is not RingKind.MATRIX or not ring.has_linear_algebra:
        raise PreconditionError(f'random corpora need a matrix ring over a field, not {ring.spec}')
    rng = random.Random(seed)
    drawn, labels = [], []
    for _ in range(count):
        label = rng.choices(CONSTRUCTIONS, weights=CONSTRUCTION_WEIGHTS)[0]
        drawn.append(_construct(ring, label, rng))
        labels.append(label)
    return Corpus('random', ring.spec, tuple(drawn), seed=seed, count=count,
                  constructions=tuple(labels))


def _random_matrix(ring: StarRing, rng: random.Random, rows: int, cols: int) -> linalg.Matrix:
    dom = ring.domain
    return tuple(tuple(dom.random(rng) for _ in range(cols)) for _ in range(rows))


def _random_invertible(ring: StarRing, rng: random.Random) -> Tuple[Element, Element]:
    k = ring.spec.dim
    for _ in range(50):
        s = ring.element(_random_matrix(ring, rng, k, k))
        s_inv = ring.inverse(s)
        if s_inv is not None:
            return s, s_inv
    return ring.one, ring.one


def _full_column(ring: StarRing, rng: random.Random, r: int) -> linalg.Matrix:
    k, dom = ring.spec.dim, ring.domain
    for _ in range(50):
        f = _random_matrix(ring, rng, k, r)
        if linalg.rank(f, dom) == r:
            return f
    return tuple(tuple(dom.one if i == j else dom.zero for j in range(r)) for i in range(k))


def _construct(ring: StarRing, label: str, rng: random.Random) -> Element:
    k, dom = ring.spec.dim, ring.domain
    r = rng.randint(1, k - 1) if k > 1 else rng.randint(0, 1)
    if label == 'full-rank':
        return _random_invertible(ring, rng)[0]
    if label == 'rank-deficient':
        left = _random_matrix(ring, rng, k, r)
        right = _random_matrix(ring, rng, r, k)
        return ring.element(linalg.mat_mul(left, right, dom)) if r else ring.zero
    if label == 'nilpotent':
        strict = tuple(
            tuple(dom.random(rng) if j > i else dom.zero for j in range(k)) for i in range(k)
        )
        s, s_inv = _random_invertible(ring, rng)
        return s * ring.element(strict) * s_inv
    if label == 'hermitian':
        b = ring.element(_random_matrix(ring, rng, k, k))
        return b + b.star
    if label in ('idempotent', 'diagonalizable'):
        s, s_inv = _random_invertible(ring, rng)
        diagonal = tuple(
            tuple((dom.one if label == 'idempotent' else _nonzero(dom, rng))
                  if i == j and i < r else dom.zero for j in range(k))
            for i in range(k)
        )
        return s * ring.element(diagonal) * s_inv
    f = _full_column(ring, rng, r) if r else None
    if f is None:
        return ring.zero
    f_elem_adj = ring.adjoint(f)
    if label == 'projection':
        gram_inv = linalg.inverse(linalg.mat_mul(f_elem_adj, f, dom), dom)
        if gram_inv is None:
            return ring.element(tuple(
                tuple(dom.one if i == j and i < r else dom.zero for j in range(k))
                for i in range(k)
            ))
        return ring.element(linalg.chain(dom, f, gram_inv, f_elem_adj))
    # label == 'ep': F C F* has equal column and row ranges
    c = _random_square_invertible(ring, rng, r)
    return ring.element(linalg.chain(dom, f, c, f_elem_adj))


def _nonzero(dom, rng: random.Random):
    while True:
        value = dom.random(rng)
        if not dom.is_zero(value):
            return value


def _random_square_invertible(ring: StarRing, rng: random.Random, r: int) -> linalg.Matrix:
    dom = ring.domain
    for _ in range(50):
        c = _random_matrix(ring, rng, r, r)
        if linalg.inverse(c, dom) is not None:
            return c
    return linalg.identity(r, dom)


# ========================================
# Per-element checks
# ========================================

def _record(checks: Dict[str, CheckTally], name: str, outcome: Optional[bool],
            element: Element) -> None:
    tally = checks.setdefault(name, CheckTally())
    if outcome is None:
        tally.skipped += 1
    elif outcome:
        tally.passed += 1
    else:
        tally.failed += 1
        logger.warning('check %s failed for %s', name, format_element(element))


def _element_checks(a: Element, baseline: bool, n_max: int, method: str,
                    checks: Dict[str, CheckTally], verdicts) -> None:
    ring = a.ring
    bundle = inverse_bundle(a, method)
    _record(checks, 'inverse-certificates', bundle.certified, a)

    if ring.is_finite:
        unique = all(len(search_solutions(a, kind)) <= 1
                     for kind in (InverseKind.MP, InverseKind.GROUP, InverseKind.CORE,
                                  InverseKind.DUAL_CORE))
        _record(checks, 'uniqueness-by-search', unique, a)
    else:
        _record(checks, 'uniqueness-by-search', None, a)

    if ring.is_finite and ring.has_linear_algebra:
        agree = all(
            compute_inverse(a, kind, 'closed-form') == compute_inverse(a, kind, 'search')
            for kind in (InverseKind.MP, InverseKind.GROUP, InverseKind.CORE)
        )
        _record(checks, 'closed-form-agreement', agree, a)
    else:
        _record(checks, 'closed-form-agreement', None, a)

    identities = core_identities(a, method)
    _record(checks, 'core-identities',
            all(c.holds for c in identities) if identities else None, a)

    for name, kind, present in (
        ('group-decomposition', DecompositionKind.GROUP, bundle.group is not None),
        ('ep-decomposition', DecompositionKind.EP, baseline),
        ('core-decomposition', DecompositionKind.CORE, bundle.core is not None),
    ):
        outcome = decomposition(a, kind, method).holds if present else None
        _record(checks, name, outcome, a)

    _record(checks, 'star-duality', star_duality(a, method).holds, a)
    _record(checks, 'star-symmetry', baseline == ep_baseline(a.star, method), a)

    if baseline:
        constructions = (unit_construction(a, 'core', method), unit_construction(a, 'mp', method))
        _record(checks, 'unit-construction', all(u.check for u in constructions), a)
        closure = all(n_ep(a, n, method).value for n in range(1, n_max + 1))
        _record(checks, 'n-ep-closure', closure, a)
    else:
        _record(checks, 'unit-construction', None, a)
        _record(checks, 'n-ep-closure', None, a)

    if baseline and ring.is_finite:
        equal = all(
            spec.defining_set() == spec.parameterized_set()
            for spec in (solution_set(a, family, method) for family in FAMILIES)
        )
        _record(checks, 'solution-sets', equal, a)
    else:
        _record(checks, 'solution-sets', None, a)

    witnessed = [
        (cid.name.rsplit('-', 1)[1], verdict.witness) for cid, verdict in verdicts.items()
        if cid.name.startswith('three-equations-') and verdict.value
        and verdict.witness is not None
    ]
    if witnessed:
        valid = all(THREE_EQUATION_SYSTEMS[side](a, x) for side, x in witnessed)
        _record(checks, 'witness-validity', valid, a)
    else:
        _record(checks, 'witness-validity', None, a)

    if ring.is_finite:
        _record(checks, 'group-idempotent', _group_idempotent(a, method), a)
        _record(checks, 'core-projection-uniqueness', _core_projections(a, method), a)
    else:
        _record(checks, 'group-idempotent', None, a)
        _record(checks, 'core-projection-uniqueness', None, a)


def _group_idempotent(a: Element, method: str) -> bool:
    ring = a.ring
    found = any(
        (a * p).is_zero and (p * a).is_zero and ring.inverse(a + p) is not None
        for p in ring.idempotents
    )
    return found == (group_inverse(a, method) is not None)


def _core_projections(a: Element, method: str) -> bool:
    ring = a.ring
    one = ring.one
    found = {
        p for p in ring.projections
        if (p * a).is_zero and ring.inverse(a * (one - p) + p) is not None
    }
    core = core_inverse(a, method)
    return found == (set() if core is None else {one - a * core})


# ========================================
# Ring-level checks (exhaustive corpora)
# ========================================

def _ring_checks(ring: StarRing, method: str, checks: Dict[str, CheckTally],
                 findings: List[str]) -> None:
    elements = ring.elements()
    _involution_laws(itertools.product(elements, repeat=2), checks)

    for a, b in itertools.product(elements, repeat=2):
        regular = one_inverse(b, method) is not None
        right = subset_included(subset_handle(SubsetKind.RIGHT_IDEAL, a),
                                subset_handle(SubsetKind.RIGHT_IDEAL, b))
        right_ann = subset_included(subset_handle(SubsetKind.LEFT_ANNIHILATOR, b),
                                    subset_handle(SubsetKind.LEFT_ANNIHILATOR, a))
        left = subset_included(subset_handle(SubsetKind.LEFT_IDEAL, a),
                               subset_handle(SubsetKind.LEFT_IDEAL, b))
        left_ann = subset_included(subset_handle(SubsetKind.RIGHT_ANNIHILATOR, b),
                                   subset_handle(SubsetKind.RIGHT_ANNIHILATOR, a))
        holds = (not right or right_ann) and (not left or left_ann)
        if regular:
            holds = holds and right == right_ann and left == left_ann
        _record(checks, 'annihilator-duality', holds, a)

    if ring.has_linear_algebra:
        for a, b in itertools.product(elements, repeat=2):
            agree = all(
                subset_included(subset_handle(kind, a, 'linear'), subset_handle(kind, b, 'linear'))
                == subset_included(subset_handle(kind, a, 'enumerate'),
                                   subset_handle(kind, b, 'enumerate'))
                for kind in SubsetKind
            )
            _record(checks, 'realization-agreement', agree, a)

    if ring.is_semiprime:
        for claim in singleton_claims(ring, method):
            _record(checks, 'singleton-claims', claim.holds, claim.element)
            if not claim.holds:
                findings.append(
                    f'singleton claim violated: {claim.family} for '
                    f'{format_element(claim.element)} has {claim.size} members'
                )


def _involution_laws(pairs: Iterable[Tuple[Element, Element]],
                     checks: Dict[str, CheckTally]) -> None:
    for a, b in pairs:
        holds = (a.star.star == a
                 and (a * b).star == b.star * a.star
                 and (a + b).star == a.star + b.star)
        _record(checks, 'involution-laws', holds, a)


# ========================================
# Suites
# ========================================

def _run_shard(elements: Sequence[Element], offset: int,
               entries: Sequence[Characterization], n_max: int, method: str,
               suite: str, corpus_descriptor: Dict[str, Any]) -> TheoremReport:
    report = TheoremReport(suite=suite, corpus=corpus_descriptor)
    for index, a in enumerate(elements, start=offset):
        logger.debug('element %d: %s', index, format_element(a))
        verdict = evaluate(a, entries, n_max, method)
        for cid, v in verdict.verdicts.items():
            tally = report.tallies.setdefault(str(cid), Tally())
            if not v.applicable:
                tally.inapplicable += 1
            elif v.provenance is Provenance.DERIVED:
                tally.derived += 1
            elif v.value == verdict.baseline:
                tally.agree += 1
            else:
                tally.disagree += 1
                logger.warning('%s disagrees with the baseline on %s', cid, format_element(a))
                report.counterexamples.append(Counterexample(
                    index, str(cid), format_element(a),
                    str(verdict.baseline).lower(), str(v.value).lower(),
                ))
        _element_checks(a, verdict.baseline, n_max, method, report.checks, verdict.verdicts)
        lone = standalone_commutator(a, method)
        if lone.value and not verdict.baseline:
            report.findings.append(
                f'[a†a, a†] = 0 without EP at element {index}: {format_element(a)}'
            )
    return report


def merge_reports(reports: Sequence[TheoremReport]) -> TheoremReport:
    """Associative merge; counterexamples and findings end up in canonical order."""
    if not reports:
        raise PreconditionError('nothing to merge')
    merged = TheoremReport(suite=reports[0].suite, corpus=reports[0].corpus)
    for report in reports:
        for name, tally in report.tallies.items():
            merged.tallies[name] = merged.tallies.get(name, Tally()).merge(tally)
        for name, tally in report.checks.items():
            merged.checks[name] = merged.checks.get(name, CheckTally()).merge(tally)
        merged.counterexamples.extend(report.counterexamples)
        merged.findings.extend(report.findings)
        merged.wall_time += report.wall_time
    merged.counterexamples.sort()
    merged.findings.sort()
    return merged


def run_suite(corpus: Corpus, ring: StarRing, suite: str = 'all', n_max: int = 3,
              method: str = 'auto', workers: int = 1) -> TheoremReport:
    started = time.perf_counter()
    entries = select(suite, n_max)
    descriptor = corpus.descriptor
    logger.info('suite %s on %s: %d elements, %d characterizations',
                suite, descriptor['ring'], len(corpus.elements), len(entries))

    elements = corpus.elements
    workers = max(1, min(workers, len(elements) or 1))
    size = -(-len(elements) // workers) if elements else 0
    shards = [(elements[i:i + size], i) for i in range(0, len(elements), size)] if size else []
    if workers == 1 or len(shards) <= 1:
        partials = [_run_shard(chunk, offset, entries, n_max, method, suite, descriptor)
                    for chunk, offset in shards]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(
                lambda shard: _run_shard(shard[0], shard[1], entries, n_max, method,
                                         suite, descriptor),
                shards,
            ))
    ring_level = TheoremReport(suite=suite, corpus=descriptor)
    if corpus.source == 'exhaustive':
        _ring_checks(ring, method, ring_level.checks, ring_level.findings)
    else:
        _involution_laws(zip(elements, elements[1:]), ring_level.checks)
    report = merge_reports(partials + [ring_level])
    report.wall_time = time.perf_counter() - started
    logger.info('suite %s on %s finished: %d disagreements, %d findings',
                suite, descriptor['ring'], report.disagreements, len(report.findings))
    return report


# ========================================
# Serialization
# ========================================

def report_to_dict(report: TheoremReport, schema_version: str = REPORT_SCHEMA_VERSION,
                   include_timing: bool = False) -> Dict[str, Any]:
    data = {
        'schema_version': schema_version,
        'suite': report.suite,
        'corpus': report.corpus,
        'tallies': {
            name: {'agree': t.agree, 'disagree': t.disagree,
                   'inapplicable': t.inapplicable, 'derived': t.derived}
            for name, t in report.tallies.items()
        },
        'checks': {
            name: {'passed': c.passed, 'failed': c.failed, 'skipped': c.skipped}
            for name, c in report.checks.items()
        },
        'counterexamples': [
            {'index': c.index, 'characterization': c.characterization,
             'element': c.element, 'expected': c.expected, 'got': c.got}
            for c in sorted(report.counterexamples)
        ],
        'findings': sorted(report.findings),
        'disagreements': report.disagreements,
        'ok': report.ok,
    }
    if include_timing:
        data['wall_time'] = round(report.wall_time, 6)
    return data


def emit_report(report: TheoremReport, fmt: str = 'text',
                schema_version: str = REPORT_SCHEMA_VERSION,
                include_timing: bool = False) -> bytes:
    data = report_to_dict(report, schema_version, include_timing)
    if fmt == 'json':
        return (json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + '\n').encode()
    if fmt != 'text':
        raise PreconditionError(f'unknown report format {fmt!r}')
    return render_template('report.txt', report=data).encode()


def parse_report(payload) -> TheoremReport:
    if isinstance(payload, bytes):
        payload = payload.decode()
    data = json.loads(payload)
    report = TheoremReport(
        suite=data['suite'],
        corpus=data['corpus'],
        tallies={name: Tally(**t) for name, t in data['tallies'].items()},
        checks={name: CheckTally(**c) for name, c in data['checks'].items()},
        counterexamples=[Counterexample(**c) for c in data['counterexamples']],
        findings=list(data['findings']),
        wall_time=data.get('wall_time', 0.0),
    )
    return report


def emit_reports(reports: Sequence[TheoremReport], fmt: str = 'text',
                 schema_version: str = REPORT_SCHEMA_VERSION,
                 include_timing: bool = False) -> bytes:
    """Several reports as one JSON array or as consecutive text blocks."""
    if fmt == 'json':
        data = [report_to_dict(r, schema_version, include_timing) for r in reports]
        return (json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + '\n').encode()
    return b'\n'.join(emit_report(r, fmt, schema_version, include_timing) for r in reports)
