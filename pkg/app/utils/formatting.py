"""Ring-spec grammar and element text/JSON formats shared by the CLI and reports."""

import json
import re
from typing import Any, Dict, List, Optional

from app.models import (
    Element,
    ElementParseError,
    InvalidRingSpec,
    Involution,
    RingKind,
    RingSpec,
    ScalarKind,
    Verdict,
)

_MODULAR_SPEC = re.compile(r'^Zmod:(\d+)$')
_MATRIX_SPEC = re.compile(r'^Mat:(\d+):(Q|Qi|GF(\d+)|Zmod(\d+))(?:/([a-z-]+))?$')


def parse_ring_spec(text: str) -> RingSpec:
    """Parse ``Zmod:<n>`` or ``Mat:<k>:Q|Qi|GF<p>|Zmod<n>`` (optionally ``/<involution>``)."""
    compact = (text or '').strip()
    match = _MODULAR_SPEC.match(compact)
    if match:
        spec = RingSpec(RingKind.MODULAR, ScalarKind.MODULAR, Involution.IDENTITY,
                        modulus=int(match.group(1)))
        spec.validate()
        return spec

    match = _MATRIX_SPEC.match(compact)
    if not match:
        raise InvalidRingSpec(
            f'cannot parse ring spec {text!r}; expected Zmod:<n> or '
            'Mat:<k>:Q|Qi|GF<p>|Zmod<n>'
        )
    dim, scalar, prime, modulus, involution = match.groups()
    if scalar == 'Q':
        kind, mod, default = ScalarKind.RATIONALS, None, Involution.TRANSPOSE
    elif scalar == 'Qi':
        kind, mod, default = ScalarKind.GAUSSIAN, None, Involution.CONJUGATE_TRANSPOSE
    elif prime is not None:
        kind, mod, default = ScalarKind.PRIME_FIELD, int(prime), Involution.TRANSPOSE
    else:
        kind, mod, default = ScalarKind.MODULAR, int(modulus), Involution.TRANSPOSE
    try:
        chosen = Involution(involution) if involution else default
    except ValueError as exc:
        raise InvalidRingSpec(f'unknown involution {involution!r}') from exc
    spec = RingSpec(RingKind.MATRIX, kind, chosen, modulus=mod, dim=int(dim))
    spec.validate()
    return spec


# ========================================
# Elements
# ========================================

def _split_rows(text: str) -> List[List[str]]:
    compact = re.sub(r'\s+', '', text)
    if not (compact.startswith('[[') and compact.endswith(']]')):
        raise ElementParseError(f'expected a matrix like [[1,0],[0,1]], got {text!r}')
    body = compact[2:-2]
    rows = body.split('],[') if body else []
    return [[cell.strip('"\'') for cell in row.split(',')] for row in rows]


def _build(ring, cells: List[List[Any]]) -> Element:
    dom = ring.domain
    k = ring.spec.dim
    if len(cells) != k or any(len(row) != k for row in cells):
        shape = f'{len(cells)}x{len(cells[0]) if cells else 0}'
        raise ElementParseError(f'dimension mismatch: {shape} matrix for {ring.spec}')
    return ring.element(tuple(tuple(dom.parse(str(cell)) for cell in row) for row in cells))


def parse_element(ring, text: str) -> Element:
    """Parse an inline element: an integer residue or a bracketed matrix."""
    if ring.spec.kind is RingKind.MODULAR:
        return ring.element(ring.domain.parse(str(text).strip().strip('"\'')))
    return _build(ring, _split_rows(str(text)))


def parse_element_json(ring, document: Any) -> Element:
    """Parse ``{"value": ...}`` or ``{"rows": k, "cols": k, "entries": [[...]]}``."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ElementParseError(f'invalid JSON element: {exc}') from exc
    if not isinstance(document, dict):
        raise ElementParseError('element JSON must be an object')
    if ring.spec.kind is RingKind.MODULAR:
        if 'value' not in document:
            raise ElementParseError('scalar element JSON needs a "value" key')
        return ring.element(ring.domain.parse(str(document['value'])))
    try:
        rows, cols, entries = document['rows'], document['cols'], document['entries']
    except KeyError as exc:
        raise ElementParseError(f'matrix element JSON is missing {exc.args[0]!r}') from exc
    if rows != len(entries) or any(len(row) != cols for row in entries):
        raise ElementParseError('"rows"/"cols" do not match the entries')
    return _build(ring, entries)


def format_element(element: Element) -> str:
    dom = element.ring.domain
    if element.ring.spec.kind is RingKind.MODULAR:
        return dom.format(element.payload)
    rows = (', '.join(dom.format(x) for x in row) for row in element.payload)
    return '[' + ', '.join(f'[{row}]' for row in rows) + ']'


def element_to_json(element: Element) -> Dict[str, Any]:
    dom = element.ring.domain
    if element.ring.spec.kind is RingKind.MODULAR:
        return {'value': dom.format(element.payload)}
    k = element.ring.spec.dim
    return {
        'rows': k,
        'cols': k,
        'entries': [[dom.format(x) for x in row] for row in element.payload],
    }


def format_optional(element: Optional[Element]) -> str:
    return 'does not exist' if element is None else format_element(element)


def format_verdict(verdict: Verdict) -> str:
    if verdict.value is None:
        return 'n/a'
    return 'true' if verdict.value else 'false'
