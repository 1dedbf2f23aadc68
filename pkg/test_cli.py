#!/usr/bin/env python3
"""
Tests for the command-line front end, the command layer and the interchange documents
"""

import io
import json

import pytest
from sympy import QQ

from skewpfaff.api import handle_error, main, run
from skewpfaff.api.commands import property_checks
from skewpfaff.api.error_handlers import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE
from skewpfaff.models.interchange import ClosureRequest, CubicDocument, MatrixDocument, parse_document
from skewpfaff.services.catalog import catalog_matrix
from skewpfaff.utils.config import Config
from skewpfaff.utils.errors import InterchangeError, OddSize

from conftest import FIXTURES


def _run_cli(argv):
    out = io.StringIO()
    code = main(argv, stdout=out)
    return code, out.getvalue()


def _run_json(argv):
    code, text = _run_cli(argv)
    return code, json.loads(text)


def test_classify_fixture(fixture_path):
    code, body = _run_json(['classify', '--input', fixture_path('catalog_f.json')])
    assert code == EXIT_OK
    assert body['data']['type'] == {'type': 'f', 'stability': 'polystable'}
    assert body['data']['fingerprint']['d1'] == 3
    assert body['passed'] is True
    assert body['input_digest']


def test_classify_by_type():
    code, body = _run_json(['classify', '--type', 'd'])
    assert code == EXIT_OK
    assert body['data']['type']['stability'] == 'strictly-semistable-not-polystable'
    names = [check['name'] for check in body['checks']]
    assert 'catalog type recovered' in names


def test_closure_request_fixture(fixture_path):
    code, body = _run_json(['closure', '--input', fixture_path('closure_f_x3_cubed.json')])
    assert code == EXIT_OK
    assert body['data']['verdict']['answer'] == 'no'
    assert body['data']['verdict']['branch'] == 'type-f'


def test_closure_with_separate_cubic(fixture_path):
    code, body = _run_json(['closure', '--type', 'f', '--cubic', fixture_path('cubic_x3_cubed.json')])
    assert code == EXIT_OK
    assert body['data']['verdict']['answer'] == 'no'


def test_closure_without_cubic_is_a_usage_error():
    code, body = _run_json(['closure', '--type', 'a'])
    assert code == EXIT_USAGE
    assert body['error_type'] == 'InterchangeError'


def test_pfaffian_report():
    code, body = _run_json(['pfaffian', '--type', 'a'])
    assert code == EXIT_OK
    data = body['data']
    assert data['pfaffian_zero'] is True
    assert data['entry_span_dim'] == 5
    assert len(data['sub_pfaffians']) == 15
    assert data['sub_pfaffian_span']['dim'] == 10


def test_tangent_report():
    code, body = _run_json(['tangent', '--type', 'd', '--timings'])
    assert code == EXIT_OK
    assert body['data']['tangent_codim'] == 27
    assert 'tangent' in body['timings']


def test_jets_fixture(fixture_path):
    """The rank-two jet at the type (e) block has vanishing Pfaffian"""
    code, body = _run_json(['jets', '--input', fixture_path('jet_rank_two.json')])
    assert code == EXIT_OK
    assert body['data']['first_nonzero'] is None


def test_pretty_output():
    code, text = _run_cli(['classify', '--type', 'a', '--pretty'])
    assert code == EXIT_OK
    assert text.startswith('classify: PASS')
    assert 'catalog type recovered' in text


def test_unknown_command_exits_with_usage():
    code, body = _run_json(['frobnicate'])
    assert code == EXIT_USAGE
    assert body['status'] == EXIT_USAGE


@pytest.mark.parametrize('argv', [
    ['jets', '--jet-order', '0'],
    ['verify-strata', '--arrow', 'f->a'],
    ['classify'],
    ['classify', '--input', 'no/such/file.json'],
])
def test_usage_errors(argv):
    code, body = _run_json(argv)
    assert code == EXIT_USAGE
    assert 'error' in body


def test_malformed_json_reports_location(tmp_path):
    broken = tmp_path / 'broken.json'
    broken.write_text('{\n  "entries": [\n')
    code, body = _run_json(['classify', '--input', str(broken)])
    assert code == EXIT_USAGE
    assert body['location'][0] == 3


def test_invalid_document_reports_field(tmp_path):
    document = tmp_path / 'bad.json'
    document.write_text(json.dumps({'entries': [{'i': 2, 'j': 1, 'coeffs': ['1', '0', '0', '0', '0']}]}))
    code, body = _run_json(['pfaffian', '--input', str(document)])
    assert code == EXIT_USAGE
    assert body['location'][0] == 'entries'


def test_catalog_fixtures_decode(label, catalog_m, load_fixture):
    matrix = parse_document(MatrixDocument, load_fixture(f'catalog_{label}.json')).to_matrix()
    assert matrix == catalog_m


def test_documents_rebuild_their_values(ring):
    m = catalog_matrix('c')
    assert MatrixDocument.from_matrix(m).to_matrix() == m
    cubic = ring.gens[0] ** 3 - ring.gens[1] * ring.gens[2] * ring.gens[4] * QQ(1, 2)
    assert CubicDocument.from_polynomial(cubic).to_polynomial() == cubic


def test_closure_request_decodes(load_fixture, ring):
    request = parse_document(ClosureRequest, load_fixture('closure_f_x3_cubed.json'))
    assert request.cubic.to_polynomial() == ring.gens[3] ** 3
    assert request.matrix.to_matrix() == catalog_matrix('f')


def test_bad_cubic_key():
    with pytest.raises(InterchangeError):
        parse_document(CubicDocument, {'coefficients': {'1,1,0,0,0': '1'}})


def test_run_uses_injected_container(container):
    report = run('classify', {'type': 'b'}, container=container)
    assert report.passed
    assert report.data['type']['type'] == 'b'
    assert report.config['seed'] == Config.SEED


def test_error_bodies():
    code, body = handle_error(OddSize('odd'))
    assert code == EXIT_CHECK_FAILED
    assert body['error_type'] == 'OddSize'
    code, body = handle_error(RuntimeError('boom'))
    assert code == EXIT_CHECK_FAILED
    assert body['error'] == 'An unexpected error occurred'


def test_random_property_checks():
    checks = property_checks(seed=5, trials=3)
    assert [check.passed for check in checks] == [True, True]
    assert checks[0].actual == 3


@pytest.mark.slow
def test_verify_tables_for_one_type(monkeypatch):
    monkeypatch.setattr(Config, 'FIXTURES_DIR', FIXTURES)
    code, body = _run_json(['verify-tables', '--type', 'c'])
    assert code == EXIT_OK
    names = [check['name'] for check in body['checks']]
    assert '(c) frozen fixture' in names
    assert body['data']['tables']['c']['saturated_dims'] == [26, 28]


@pytest.mark.slow
def test_verify_strata_one_arrow():
    code, body = _run_json(['verify-strata', '--arrow', 'd->e'])
    assert code == EXIT_OK
    assert body['data']['arrows']['d->e']['passed'] is True
