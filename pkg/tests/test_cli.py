import json

import pytest
from flask import render_template
from jinja2 import StrictUndefined

from app import create_app
from app.cli import commands
from app.models import CharacterizationId, Verdict
from app.services.ep_oracle import Characterization
from app.services.gen_inverse import core_inverse
from app.utils.formatting import format_element, parse_element_json
from tests.conftest import make_ring

GOLDEN = '[[0,1],[0,1]]'


def test_commands_are_registered(app):
    for name in ('inverse', 'ep-check', 'verify'):
        assert name in app.cli.commands


def test_text_templates_use_the_app_environment(app):
    env = app.jinja_env
    assert env.filters['element'] is format_element
    assert env.trim_blocks and env.keep_trailing_newline
    assert env.undefined is StrictUndefined
    two = make_ring('Zmod:6').element(2)
    with app.app_context():
        text = render_template('ep_check.txt', ring='Zmod:6', element=two, baseline=True,
                               rows=[], disagreements=[])
    assert text == 'ring: Zmod:6\nelement: 2\nbaseline (a† = a^#): EP\nconsensus: yes\n'


def test_config_from_environment(monkeypatch):
    monkeypatch.setenv('EPKIT_ENUM_CAP', '1000')
    app = create_app()
    assert app.config['ENUM_CAP'] == 1000
    assert app.config['N_EP_DEFAULT'] == 3


def test_inverse_golden(runner):
    result = runner.invoke(args=['inverse', '--ring', 'Mat:2:Q', '--element', GOLDEN])
    assert result.exit_code == 0, result.output
    assert 'group: [[0, 1], [0, 1]]' in result.output
    assert 'core: [[1/2, 1/2], [1/2, 1/2]]' in result.output
    assert 'mp: [[0, 0], [1/2, 1/2]]' in result.output
    assert 'ok   xa²=a' in result.output
    assert result.output.endswith('EP: no\n')


def test_inverse_zmod(runner):
    result = runner.invoke(args=['inverse', '--ring', 'Zmod:6', '--element', '2'])
    assert result.exit_code == 0
    for kind in ('mp', 'group', 'core', 'dual-core'):
        assert f'{kind}: 2\n' in result.output
    assert 'EP: yes' in result.output


def test_inverse_reports_missing_group_inverse(runner):
    result = runner.invoke(args=['inverse', '--ring', 'Mat:2:Q', '--element', '[[0,1],[0,0]]'])
    assert result.exit_code == 0
    assert 'group: does not exist\n    rank(a²) = 0 differs from rank(a) = 1\n' in result.output


def test_inverse_json_reparses(runner, golden):
    result = runner.invoke(args=['inverse', '--ring', 'Mat:2:Q', '--element', GOLDEN,
                                 '--format', 'json'])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data['ring']['ring'] == 'Mat:2:Q'
    assert data['ep'] is False
    core = data['inverses']['core']
    assert core['value']['entries'] == [['1/2', '1/2'], ['1/2', '1/2']]
    assert all(core['certificates'].values())
    assert parse_element_json(golden.ring, core['value']) == core_inverse(golden)
    assert data['inverses']['group']['reason'] == ''


def test_inverse_from_file(runner, tmp_path):
    path = tmp_path / 'a.json'
    path.write_text(json.dumps({'rows': 2, 'cols': 2, 'entries': [['0', '1'], ['0', '1']]}),
                    encoding='utf-8')
    result = runner.invoke(args=['inverse', '--ring', 'Mat:2:Q', '--input', str(path)])
    assert result.exit_code == 0
    assert 'core: [[1/2, 1/2], [1/2, 1/2]]' in result.output


def test_inverse_writes_out_file(runner, tmp_path):
    out = tmp_path / 'inverse.txt'
    result = runner.invoke(args=['inverse', '--ring', 'Zmod:6', '--element', '3',
                                 '--out', str(out)])
    assert result.exit_code == 0
    assert result.output == ''
    assert out.read_text(encoding='utf-8').startswith('ring: Zmod:6\nelement: 3\n')


def test_ep_check_golden(runner):
    result = runner.invoke(args=['ep-check', '--ring', 'Mat:2:Q', '--element', GOLDEN])
    assert result.exit_code == 0, result.output
    assert 'baseline (a† = a^#): not EP' in result.output
    line = next(l for l in result.output.splitlines() if 'core-conditions:8' in l)
    assert ' false ' in line
    assert 'witness [[1/2, -1/2], [-1/2, 1/2]]' in line
    assert result.output.endswith('consensus: yes\n')


def test_ep_check_identity(runner):
    result = runner.invoke(args=['ep-check', '--ring', 'Mat:2:Q', '--element', '[[1,0],[0,1]]',
                                 '--format', 'json'])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data['baseline'] is True and data['consensus'] is True
    assert all(v['value'] for v in data['verdicts'].values() if v['value'] is not None)


def test_ep_check_zmod(runner):
    result = runner.invoke(args=['ep-check', '--ring', 'Zmod:6', '--element', '2',
                                 '--format', 'json', '--n', '5'])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data['baseline'] is True
    assert 'n-ep:5' in data['verdicts']
    assert data['verdicts']['three-equations-left']['provenance'] == 'exhaustive'


def test_ep_check_single_characterization(runner):
    result = runner.invoke(args=['ep-check', '--ring', 'Mat:2:Q', '--element', GOLDEN,
                                 '--suite', 'core-conditions:8', '--format', 'json'])
    data = json.loads(result.output)
    assert list(data['verdicts']) == ['core-conditions:8']
    assert data['verdicts']['core-conditions:8']['witness']['entries'] == [
        ['1/2', '-1/2'], ['-1/2', '1/2'],
    ]


def test_ep_check_disagreement_exits_one(runner, monkeypatch):
    always_true = Characterization(
        CharacterizationId('always-true'), 'always-true', lambda a, method: Verdict(True),
    )
    monkeypatch.setattr(commands, 'select', lambda suite, n_max: (always_true,))
    result = runner.invoke(args=['ep-check', '--ring', 'Mat:2:Q', '--element', GOLDEN])
    assert result.exit_code == 1
    assert 'consensus: no (always-true disagree with the baseline)' in result.output


def test_verify_gf2(runner):
    result = runner.invoke(args=['verify', '--ring', 'Mat:2:GF2'])
    assert result.exit_code == 0, result.output
    assert result.output.endswith('result: ok\n')


def test_verify_random_is_byte_stable(runner, tmp_path):
    outputs = []
    for name in ('first.json', 'second.json'):
        out = tmp_path / name
        result = runner.invoke(args=['verify', '--random', '--ring', 'Mat:3:Q', '--seed', '42',
                                     '--count', '20', '--format', 'json', '--out', str(out)])
        assert result.exit_code == 0, result.output
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    assert json.loads(outputs[0])['corpus']['count'] == 20


def test_verify_explicit_corpus(runner, tmp_path):
    path = tmp_path / 'corpus.json'
    path.write_text(json.dumps([
        {'rows': 2, 'cols': 2, 'entries': [['0', '1'], ['0', '1']]},
        {'rows': 2, 'cols': 2, 'entries': [['1', '2'], ['2', '4']]},
    ]), encoding='utf-8')
    result = runner.invoke(args=['verify', '--ring', 'Mat:2:Q', '--input', str(path),
                                 '--format', 'json'])
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert data['corpus']['source'] == 'explicit'
    assert data['corpus']['count'] == 2


def test_enumeration_cap_exit_code():
    app = create_app({'TESTING': True, 'ENUM_CAP': 1000})
    result = app.test_cli_runner().invoke(args=['verify', '--ring', 'Mat:3:Zmod4'])
    assert result.exit_code == 3
    assert 'cap is 1000' in result.output


def test_default_cap_refuses_large_rings(runner):
    result = runner.invoke(args=['verify', '--ring', 'Mat:3:Zmod5'])
    assert result.exit_code == 3


@pytest.mark.parametrize('args', [
    ['inverse', '--ring', 'Mat:2:R', '--element', '[[1]]'],
    ['inverse', '--ring', 'Mat:2:GF4', '--element', '[[1,0],[0,1]]'],
    ['inverse', '--ring', 'Mat:2:Q', '--element', '[[1,2,3],[4,5,6]]'],
    ['ep-check', '--ring', 'Zmod:6', '--element', 'two'],
])
def test_parse_errors_exit_four(runner, args):
    result = runner.invoke(args=args)
    assert result.exit_code == 4, result.output


@pytest.mark.parametrize('args', [
    ['verify', '--random', '--ring', 'Zmod:6'],
    ['verify', '--ring', 'Mat:2:Q'],
    ['inverse', '--ring', 'Zmod:6', '--element', '2', '--method', 'closed-form'],
    ['ep-check', '--ring', 'Zmod:6', '--element', '2', '--suite', 'nope'],
])
def test_precondition_errors_exit_five(runner, args):
    result = runner.invoke(args=args)
    assert result.exit_code == 5, result.output


def test_verify_defaults_runs_every_shipped_corpus(runner):
    result = runner.invoke(args=['verify', '--defaults', '--format', 'json',
                                 '--workers', '2'])
    assert result.exit_code == 0, result.output
    reports = json.loads(result.stdout)
    assert [(r['corpus']['ring'], r['corpus']['source']) for r in reports] == [
        ('Mat:2:GF2', 'exhaustive'),
        ('Mat:2:GF3', 'exhaustive'),
        ('Zmod:6', 'exhaustive'),
        ('Zmod:12', 'exhaustive'),
        ('Mat:3:Q', 'random'),
    ]
    assert all(r['ok'] and r['counterexamples'] == [] for r in reports)
    assert reports[-1]['corpus']['seed'] == 42
    assert reports[-1]['corpus']['count'] == 100


@pytest.mark.parametrize('args', [
    ['ep-check', '--ring', 'Zmod:6', '--element', '2', '--n', '9'],
    ['inverse', '--ring', 'Zmod:6'],
    ['verify'],
    ['verify', '--defaults', '--ring', 'Zmod:6'],
    ['verify', '--random', '--ring', 'Mat:2:Q', '--count', '0'],
    ['verify', '--ring', 'Zmod:6', '--format', 'xml'],
])
def test_usage_errors_exit_two(runner, args):
    result = runner.invoke(args=args)
    assert result.exit_code == 2, result.output
