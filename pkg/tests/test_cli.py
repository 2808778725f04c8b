import csv
import io
import json

import pytest

from resurgamma.cli import EXIT_ERROR, EXIT_OK, build_parser, grid_points, main, parse_grid
from resurgamma.numerics import DomainError


def _csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_coeffs_polynomial(capsys):
    assert main(['coeffs', '--n', '3']) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    assert rows == [{'n': 3, 'coeffs': ['0/1', '-1/1', '8/1', '-6/1'], 'polynomial': '−6λ³ + 8λ² − λ'}]


def test_coeffs_value(capsys):
    assert main(['coeffs', '--n', '3', '--lambda', '2', '--format', 'csv']) == EXIT_OK
    row, = _csv_rows(capsys.readouterr().out)
    assert row['b_n(-lambda)'] == '-18'
    assert row['lambda'] == '2'


@pytest.mark.parametrize('command', ['table1', 'late-table'])
def test_late_table(capsys, command):
    assert main([command, '--precision', '512']) == EXIT_OK
    rows = _csv_rows(capsys.readouterr().out)
    assert len(rows) == 12
    assert {r['lambda'] for r in rows} == {'1/100', '2', '5'}
    assert list(rows[0]) == ['lambda', 'K', 'quantity', 'value_units=absolute_bn']


def test_expand_to_file(tmp_path):
    out = tmp_path / 'expand.csv'
    assert main(['expand', '--a-re', '10', '--lambda', '1', '--grid', 'n=2:6:2', '--out', str(out)]) == EXIT_OK
    rows = _csv_rows(out.read_text(encoding='utf-8'))
    assert [r['N'] for r in rows] == ['2', '4', '6']
    assert all(r['regime'] in ('right_half', 'middle') for r in rows)


def test_expand_outside_the_sector(capsys):
    assert main(['expand', '--a-re', '-10', '--lambda', '1', '--n', '5']) == EXIT_ERROR
    assert capsys.readouterr().out == ''


def test_missing_lambda():
    assert main(['bound', '--a-re', '10']) == EXIT_ERROR


def test_bound_records(capsys):
    assert main(['bound', '--a-re', '20', '--lambda', '2', '--n', '10']) == EXIT_OK
    record, = json.loads(capsys.readouterr().out)
    assert record['N'] == 10
    assert record['selected'] in ('large', 'right_half')
    assert len(record['reports']) == 4


def test_terminant_row(capsys):
    assert main(['terminant', '--p', '2.5', '--modulus', '3', '--phi', '0.7', '--precision', '128']) == EXIT_OK
    row, = _csv_rows(capsys.readouterr().out)
    assert row['sector'] == 'principal'
    assert row['incgamma_re'] != ''
    assert float(row['value_re']) == pytest.approx(float(row['incgamma_re']), rel=1e-12)


def test_parse_grid():
    assert parse_grid('lambda=1,2;n=2:6:2') == {'lam': ['1', '2'], 'n': [2, 4, 6]}
    assert parse_grid('a-re=5,10; k=1') == {'a_re': ['5', '10'], 'k_terms': [1]}
    assert parse_grid(None) == {}
    with pytest.raises(DomainError):
        parse_grid('mu=3')
    with pytest.raises(DomainError):
        parse_grid('lambda')


def test_grid_points():
    args = build_parser().parse_args(['expand', '--a-re', '10', '--grid', 'lambda=1,2;n=3,4'])
    points = grid_points(args)
    assert len(points) == 4
    assert [(p['lam'], p['n']) for p in points] == [('1', 3), ('1', 4), ('2', 3), ('2', 4)]
    assert all(p['a_re'] == '10' for p in points)
