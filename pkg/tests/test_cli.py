import json
import subprocess
import sys

import pytest

from permbinom import cli
from permbinom.cli import parse_field
from permbinom.errors import UsageError, NonPrimeP, UnsupportedQ
from permbinom.classify import RECORDED_RESULTANT


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return (code, captured.out, captured.err)


def run_json(capsys, *argv):
    (code, out, err) = run(capsys, '--json', *argv)
    return (code, json.loads(out))


@pytest.mark.parametrize('text, split', [
    ('2^3', (2, 3)), ('5^1', (5, 1)), ('8', (2, 3)), (' 29 ', (29, 1)),
])
def test_parse_field(text, split):
    assert parse_field(text) == split


def test_parse_field_rejects():
    with pytest.raises(UsageError):
        parse_field('x^2')
    with pytest.raises(UsageError):
        parse_field('2^0')
    with pytest.raises(NonPrimeP):
        parse_field('4^2')
    with pytest.raises(UnsupportedQ):
        parse_field('12')


def test_gpoly(capsys):
    (code, out, err) = run(capsys, 'gpoly', '--alpha', '2')
    assert code == 0
    assert out.splitlines()[0] == '2y^5+3y^4-23y^3-8y^2-9y+44'


def test_gpoly_json(capsys):
    (code, report) = run_json(capsys, 'gpoly', '--alpha', '5')
    assert code == 0
    assert report['command'] == 'gpoly'
    assert report['status'] == 'pass'
    assert report['results']['d_alpha'] == 6
    assert report['results']['degree'] == 14
    assert report['config']['alpha'] == 5
    assert 'wall_time' not in report


def test_json_is_deterministic(capsys):
    (_, first, _) = run(capsys, '--json', 'gcdchain', '--p', '29')
    (_, second, _) = run(capsys, '--json', 'gcdchain', '--p', '29')
    assert first == second


def test_timing(capsys):
    (code, report) = run_json(capsys, '--timing', 'gcdchain', '--p', '23')
    assert code == 0
    assert report['wall_time'] >= 0


def test_output_options_after_command(capsys):
    (code, out, err) = run(capsys, 'gpoly', '--alpha', '2', '--json')
    assert code == 0
    report = json.loads(out)
    assert report['command'] == 'gpoly'
    assert 'wall_time' not in report
    (code, out, err) = run(capsys, 'gcdchain', '--p', '23', '--json',
            '--timing')
    assert json.loads(out)['wall_time'] >= 0


def test_seed_before_or_after_command(capsys):
    (code, report) = run_json(capsys, '--seed', '3', 'verify', '--max-q',
            '5', '--samples', '1')
    assert report['config']['seed'] == 3
    (code, report) = run_json(capsys, 'verify', '--max-q', '5',
            '--samples', '1', '--seed', '7')
    assert code == 0
    assert report['config']['seed'] == 7


def test_bad_alpha_is_usage_error(capsys):
    (code, out, err) = run(capsys, 'gpoly', '--alpha', '3')
    assert code == 2
    assert err.startswith('permbinom: error:')
    assert out == ''


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(['frobnicate'])
    assert info.value.code == 2


def test_check(capsys):
    (code, report) = run_json(capsys, 'check', '--q', '2^3', '--a', '1')
    assert code == 0
    assert report['results']['agree']
    assert report['results']['brute'] is False


def test_check_element_range(capsys):
    (code, out, err) = run(capsys, 'check', '--q', '5^1', '--a', '25')
    assert code == 2
    (code, out, err) = run(capsys, 'check', '--q', '5^1', '--a', '0')
    assert code == 2


def test_hermite_profile(capsys):
    (code, report) = run_json(capsys, 'hermite-profile', '--q', '5^1',
            '--a', '2')
    assert code == 0
    results = report['results']
    assert set(results['s_q'].values()) == {0}
    assert results['multiples']['4'] == [0, 1]


def test_hermite_profile_cube_root(capsys):
    # a = generator of F_64: a^3 has order 21, not 3
    (code, out, err) = run(capsys, 'hermite-profile', '--q', '8', '--a', '2')
    assert code == 0
    assert 'cube-root profile' not in out


def test_resultant(capsys):
    (code, report) = run_json(capsys, 'resultant', '--factor')
    assert code == 0
    results = report['results']
    assert results['resultant'] == str(
            -(2**5 * 3**35 * 17**2 * 23 * 29 * 103 * 16069))
    assert results['factorization']['factors'] == [[2, 5], [3, 35],
            [17, 2], [23, 1], [29, 1], [103, 1], [16069, 1]]


def test_resultant_status(capsys, monkeypatch):
    (code, report) = run_json(capsys, 'resultant')
    assert code == 0
    assert report['results']['recorded_abs_matches']
    monkeypatch.setattr(cli, 'RECORDED_RESULTANT', RECORDED_RESULTANT + 1)
    (code, out, err) = run(capsys, 'resultant')
    assert code == 1
    assert out.splitlines()[-1] == '|Res| DIFFERS FROM the recorded value'
    # no recorded value for other pairs
    (code, report) = run_json(capsys, 'resultant', '--left', '2',
            '--right', '8')
    assert code == 0
    assert 'recorded_abs_matches' not in report['results']


def test_gcdchain(capsys):
    (code, out, err) = run(capsys, 'gcdchain', '--p', '29')
    assert code == 0
    assert out.strip() == 'gcd(g_2, g_5, g_8) mod 29 in v = v+10'
    (code, report) = run_json(capsys, 'gcdchain', '--p', '29',
            '--variable', 'y')
    assert report['results']['coeffs'] == [3, 1]
    assert report['results']['roots'] == [26]


def test_gcdchain_errors(capsys):
    assert run(capsys, 'gcdchain', '--p', '4')[0] == 2
    assert run(capsys, 'gcdchain', '--p', '29', '--alphas', '2,4')[0] == 2


def test_sporadic(capsys):
    (code, report) = run_json(capsys, 'sporadic', '--q', '23')
    assert code == 0
    assert report['results']['count'] == 8
    (code, out, err) = run(capsys, 'sporadic', '--q', '7')
    assert code == 2


def test_verify(capsys):
    (code, out, err) = run(capsys, 'verify', '--max-q', '8', '--samples',
            '2', '--classes')
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == '0 disagreements'
    assert 'q=8 (2^3): 63 checked, 15 permutations' in lines
    assert '0 power-sum identity failures' in lines


def test_verify_verdicts_file(capsys, tmp_path):
    path = tmp_path / 'verdicts.jsonl'
    (code, out, err) = run(capsys, 'verify', '--max-q', '4', '--method',
            'brute', '--verdicts', str(path))
    assert code == 0
    rows = [json.loads(line) for line in path.read_text().splitlines()]
    assert len(rows) == 3 + 8 + 15
    assert rows[0] == {'q': 2, 'p': 2, 'e': 1, 'a': 1, 'brute': False,
            'hermite': None, 'predicted': False, 'agree': True}


def test_verify_too_large(capsys):
    assert run(capsys, 'verify', '--max-q', '100')[0] == 2


def test_pipeline(capsys):
    (code, report) = run_json(capsys, 'pipeline')
    assert code == 0
    assert report['results']['candidates'] == [17, 23, 29]
    assert report['results']['resultant_abs_matches']


def test_module_entry_point():
    proc = subprocess.run([sys.executable, '-m', 'permbinom.cli', 'gpoly',
        '--alpha', '2'], stdout=subprocess.PIPE, stderr=subprocess.PIPE,
        universal_newlines=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith('2y^5+3y^4')
