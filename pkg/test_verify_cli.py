"""Tests for the verification command line: registry, conversion,
Hasse export and exit codes."""

import json
import re

import numpy as np
import pytest

from src.config import ResourceGuardError
from src.lattice_paths import enumerate_grand_dyck
from src.order_engine import FinitePoset, is_isomorphic
from src.signed_permutations import ClassViolationError
from src.verify_cli import (
    REGISTRY,
    REPRESENTATIONS,
    IdentityCheck,
    cmd_convert,
    cmd_enumerate,
    cmd_hasse,
    cmd_verify,
    detect_representation,
    main,
    report_frame,
    run_identity,
)

# Small bounds keep the full registry quick
SMALL = {
    'ballot': 8, 'main': 4, 'stirling': 4, 'riordan': 5, 'matchings': 4,
    'bijections': 3, 'statistics': 3, 'rank-path': 3, 'rank-perm': 3,
    'lattice': 3, 'spectrum': 3, 'young': 3, 'birkhoff': 3, 'maxvec': 3,
    'bruhat': 3, 'corollary': 3, 'oracle': 3, 'eco': 4,
}


def dot_poset(dot: str) -> FinitePoset:
    """Rebuild the order drawn by a DOT Hasse diagram"""
    size = len(re.findall(r'n\d+ \[label=', dot))
    leq = np.eye(size, dtype=bool)
    for i, j in re.findall(r'n(\d+) -> n(\d+);', dot):
        leq[int(i), int(j)] = True
    while True:
        closed = leq | (leq.astype(int) @ leq.astype(int) > 0)
        if (closed == leq).all():
            return FinitePoset.from_matrix(list(range(size)), leq)
        leq = closed


def test_registry_is_complete():
    assert set(SMALL) == set(REGISTRY)


@pytest.mark.parametrize('name', sorted(SMALL))
def test_identity_holds(name):
    check = run_identity(name, SMALL[name])
    assert check.passed, check.witness


def test_failed_check_needs_witness():
    with pytest.raises(ValueError):
        IdentityCheck('ballot', 1, 3, 'fail')
    assert IdentityCheck('ballot', 1, 3, 'fail', 'n=2').to_dict()['witness'] == 'n=2'


def test_report_frame():
    frame = report_frame(cmd_verify('ballot', 6))
    assert list(frame.columns) == ['name', 'range', 'status', 'witness', 'elapsed']
    assert frame.loc[0, 'range'] == '1..6'
    assert frame.loc[0, 'status'] == 'pass'


def test_unknown_identity():
    with pytest.raises(ValueError):
        cmd_verify('nonsense', 3)
    assert main(['verify', 'nonsense', '--n', '3']) == 2


def test_convert_known_objects():
    assert cmd_convert('UDud', 'auto', 'partition') == '1|*2'
    assert cmd_convert('UUDD', 'auto', 'perm') == '2 1'
    assert cmd_convert('3 -2 5 -4 -1', 'perm', 'hat') == '3 -2 5 -4 -1 1 4 -5 2 -3'
    assert cmd_convert('3 -2 5 -4 -1 1 4 -5 2 -3', 'hat', 'perm') == '3 -2 5 -4 -1'
    assert cmd_convert('UD', 'gd', 'eco') == '1'


def test_detect_representation():
    assert detect_representation('UDDU') == 'gd'
    assert detect_representation('UDud') == 'bicoloured'
    assert detect_representation('*21|3') == 'partition'
    assert detect_representation('-2 -1 3') == 'perm'


def test_convert_round_trips():
    for n in range(1, 6):
        for p in enumerate_grand_dyck(n):
            for rep in REPRESENTATIONS:
                text = cmd_convert(str(p), 'gd', rep)
                assert cmd_convert(text, rep, 'gd') == str(p)


def test_convert_bad_input_exits_with_usage_code(capsys):
    assert main(['convert', 'UUD', '--from', 'gd', '--to', 'perm']) == 2
    assert 'error' in capsys.readouterr().err
    assert main(['convert', '2 -1', '--from', 'perm', '--to', 'gd']) == 2


def test_convert_to_same_representation_parses():
    assert cmd_convert('UDDU', 'gd', 'gd') == 'UDDU'
    assert cmd_convert('*2|1', 'partition', 'partition') == '1|*2'
    assert cmd_convert('-2   -1', 'perm', 'perm') == '-2 -1'
    assert main(['convert', 'UUD', '--from', 'gd', '--to', 'gd']) == 2
    assert main(['convert', '1 1', '--from', 'perm', '--to', 'perm']) == 2
    assert main(['convert', '2 1', '--from', 'hat', '--to', 'hat']) == 2
    assert main(['convert', '31|*2', '--from', 'partition', '--to', 'partition']) == 2


def test_hasse_dot():
    dot = cmd_hasse('gd', 3)
    assert sum(1 for line in dot.splitlines() if '[label=' in line) == 20
    # one edge per DU factor over all words with three U and three D
    assert dot.count('->') == 30
    assert cmd_hasse('gd', 1).count('->') == 1
    assert cmd_hasse('bruhat', 1).count('->') == 1


def test_hasse_perm_matches_gd():
    perm_dot = cmd_hasse('perm', 3)
    gd_dot = cmd_hasse('gd', 3)
    assert perm_dot.count('->') == gd_dot.count('->') == 30
    assert is_isomorphic(dot_poset(perm_dot), dot_poset(gd_dot))


def test_domain_error_inside_check_is_recorded_as_fail(monkeypatch, capsys):
    def broken(n_max):
        raise ClassViolationError('2 -1 is not in the bar class')

    monkeypatch.setitem(REGISTRY, 'ballot', broken)
    check = run_identity('ballot', 3)
    assert check.status == 'fail'
    assert check.witness == 'ClassViolationError: 2 -1 is not in the bar class'
    checks = cmd_verify('all', 1)
    assert len(checks) == len(REGISTRY)
    assert [c.name for c in checks if not c.passed] == ['ballot']
    assert main(['verify', 'ballot', '--n', '3']) == 1
    assert 'ClassViolationError' in capsys.readouterr().out


def test_guard_inside_check_still_exits_with_usage_code(monkeypatch):
    def guarded(n_max):
        raise ResourceGuardError(f'n = {n_max} exceeds the guard')

    monkeypatch.setitem(REGISTRY, 'main', guarded)
    with pytest.raises(ResourceGuardError):
        run_identity('main', 3)
    assert main(['verify', 'main', '--n', '3']) == 2


def test_enumerate_families():
    assert cmd_enumerate('gd', 1) == ['UD', 'DU']
    assert len(cmd_enumerate('nc', 3)) == 20
    assert len(cmd_enumerate('bar', 3)) == 20
    records = [json.loads(r) for r in cmd_enumerate('eco-level', 2)]
    assert len(records) == 6


def test_guard_exceeded_exits_with_usage_code():
    assert main(['enumerate', 'gd', '--n', '50']) == 2


def test_verify_exit_code_and_json(capsys):
    assert main(['verify', 'ballot', '--n', '6', '--json']) == 0
    line = capsys.readouterr().out.strip().splitlines()[-1]
    assert json.loads(line)['status'] == 'pass'


def test_csv_report(tmp_path):
    out = tmp_path / 'report.csv'
    assert main(['verify', 'riordan', '--n', '4', '--csv', str(out)]) == 0
    assert out.read_text().startswith('name,range,status')


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, '-v']))
