"""
Testy rejestru weryfikacji i CLI (verification_ledger, wresbd)

Sprawdza:
1. Wpisy rejestru dla pojedynczego przypadku (z wyrocznią i bez)
2. Sekcję tożsamości
3. Raporty text/json oraz kody wyjścia CLI
"""

import json
import os
import tempfile

import pytest

from operator_catalog import (CatalogEntry, OperatorCatalog, OperatorFamily, _geometric_sigma_minus2,
                              build_catalog, sigma0_dirac)
from stated_values import BLOCK_EQUATIONS
from verification_ledger import (DEFAULT_SEEDS, check_identities, emit_report, equation_sort_key,
                                 format_number, render_text, run_verification)
from wresbd import EXIT_OK, EXIT_USAGE, main as cli_main, parse_seeds


def test_parse_seeds():
    assert parse_seeds('1,2,3') == [1, 2, 3]
    assert parse_seeds(' 4 , 5 ') == [4, 5]
    assert parse_seeds('') == []
    assert parse_seeds(None) == list(DEFAULT_SEEDS)
    with pytest.raises(ValueError):
        parse_seeds('a,b')


def test_equation_sort_key():
    ids = ['(3.10)', '(3.9)', '(5.2)', '(3.16)#2', '(3.16)#1']
    assert sorted(ids, key=equation_sort_key) == ['(3.9)', '(3.10)', '(3.16)#1', '(3.16)#2', '(5.2)']


def test_format_number():
    assert format_number(-0.0) == '0'
    assert format_number(0.5) == '0.5'
    assert format_number(1 + 2j) == '1+2j'


def test_single_case_with_oracle():
    ledger = run_verification(OperatorFamily.DIRAC, [1], 'aII')
    assert [entry.id for entry in ledger.entries] == ['(3.18)']
    entry = ledger.entries[0]
    assert entry.match_oracle is True
    assert entry.match_stated is True
    assert entry.stated_reading == 'literal'
    assert ledger.totals == {}
    assert ledger.all_oracle_match()


def test_exact_only_ledger():
    ledger = run_verification(OperatorFamily.DIRAC, [], 'aIII')
    data = ledger.entries[0].to_dict()
    assert data['oracle'] == 'n/a'
    assert data['match_oracle'] == 'n/a'
    assert data['id'] == '(3.23)'
    assert ledger.all_oracle_match()


def test_block_entries_for_case_c():
    ledger = run_verification(OperatorFamily.DIRAC, [], 'c')
    assert sorted(entry.id for entry in ledger.entries) == ['(3.59)', '(3.63)', '(3.64)']
    ids = {check.id: check for check in ledger.identities}
    assert ids['(3.64) = Σ'].match


def test_dirac_identities():
    checks = {check.id: check for check in check_identities(OperatorFamily.DIRAC)}
    for number in range(1, 6):
        assert checks[f'(3.16)#{number}'].match
    assert checks['(2.26)'].match
    assert checks['(3.20)'].match
    assert checks['(3.53)'].match
    assert checks['(3.54)'].match
    assert not checks['(3.29)'].match
    assert checks['(3.29)'].note


def test_signature_identities():
    checks = {check.id: check for check in check_identities(OperatorFamily.SIGNATURE)}
    assert checks['(5.29)'].match
    assert checks['(4.35)'].match
    assert '(3.16)#1' not in checks


def test_signature_b_blocks_use_theta():
    checks = {check.id: check for check in check_identities(OperatorFamily.SIGNATURE)}
    assert checks['(5.19)'].match
    assert checks['(5.20)'].match

    # σ₋₂ zbudowane z samego σ₀ (bez części p) nie może przejść (5.19)/(5.20)
    catalog = build_catalog(OperatorFamily.SIGNATURE)
    entry = catalog.first_order(-2)
    parts = dict(entry.parts, theta=_geometric_sigma_minus2(sigma0_dirac()))
    lower = dict(catalog.lower)
    lower[-2] = CatalogEntry.from_parts(-2, parts, entry.source_eq)
    doctored = OperatorCatalog(catalog.family, lower, catalog.cubed)
    checks = {check.id: check for check in check_identities(OperatorFamily.SIGNATURE, doctored)}
    assert not checks['(5.19)'].match
    assert not checks['(5.20)'].match


def _assert_full_ledger(fam: OperatorFamily):
    ledger = run_verification(fam, [1, 2, 3])
    assert len(ledger.entries) == 5 + sum(len(blocks) for blocks in
                                          BLOCK_EQUATIONS[fam.value].values())
    for entry in ledger.entries:
        assert entry.match_oracle is True, (entry.id, entry.note,
                                            [sample.error for sample in entry.samples])
    assert ledger.all_oracle_match()
    assert ledger.totals


def test_full_dirac_ledger_matches_oracle():
    _assert_full_ledger(OperatorFamily.DIRAC)


def test_full_signature_ledger_matches_oracle():
    _assert_full_ledger(OperatorFamily.SIGNATURE)


def test_cli_full_verification_exits_ok():
    with tempfile.TemporaryDirectory() as tmp:
        for fam in ('dirac', 'signature'):
            path = os.path.join(tmp, f'{fam}.json')
            assert cli_main(['verify', '--family', fam, '--seeds', '1,2,3',
                             '--format', 'json', '--out', path]) == EXIT_OK


def test_annotations():
    ledger = run_verification(OperatorFamily.SIGNATURE, [], 'aI')
    assert any(key.startswith('interior (5.3)') for key in ledger.annotations)
    assert 'K (3.66)' in ledger.annotations


def test_emit_json_and_text():
    ledger = run_verification(OperatorFamily.DIRAC, [1], 'aII')
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'report.json')
        emit_report(ledger, 'json', path)
        with open(path, encoding='utf-8') as f:
            content = f.read()
    assert content.endswith('\n')
    data = json.loads(content)
    assert data['family'] == 'dirac'
    entry = data['entries'][0]
    assert {'id', 'exact', 'paper', 'oracle', 'match_oracle', 'match_paper'} <= set(entry)
    assert entry['oracle'][0]['seed'] == 1
    assert '(3.18)' in render_text(ledger)
    with pytest.raises(ValueError):
        emit_report(ledger, 'xml', None)


def test_report_is_deterministic():
    first = render_text(run_verification(OperatorFamily.DIRAC, [2], 'aI'))
    second = render_text(run_verification(OperatorFamily.DIRAC, [2], 'aI'))
    assert first == second


def test_cli_list_cases():
    assert cli_main(['verify', '--list-cases']) == EXIT_OK


def test_cli_usage_errors():
    assert cli_main(['verify', '--case', 'zz']) == EXIT_USAGE
    assert cli_main(['verify', '--seeds', 'x,y']) == EXIT_USAGE
    assert cli_main(['verify', '--family', 'laplace']) == EXIT_USAGE
    assert cli_main([]) == EXIT_USAGE


def test_cli_json_report():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'dirac.json')
        code = cli_main(['verify', '--family', 'dirac', '--case', 'aII', '--seeds', '1',
                         '--format', 'json', '--out', path])
        assert code == EXIT_OK
        with open(path, encoding='utf-8') as f:
            data = json.load(f)
    assert data['seeds'] == [1]
    assert data['entries'][0]['match_oracle'] is True


def test_cli_unwritable_destination():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'brak', 'raport.json')
        assert cli_main(['verify', '--case', 'aI', '--seeds', '', '--out', path]) == EXIT_USAGE


def test_cli_seeds_from_environment():
    previous = os.environ.get('WRESBD_SEEDS')
    os.environ['WRESBD_SEEDS'] = ''
    try:
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'r.json')
            assert cli_main(['verify', '--case', 'aI', '--format', 'json', '--out', path]) == EXIT_OK
            with open(path, encoding='utf-8') as f:
                data = json.load(f)
        assert data['seeds'] == []
        assert data['entries'][0]['oracle'] == 'n/a'
    finally:
        if previous is None:
            del os.environ['WRESBD_SEEDS']
        else:
            os.environ['WRESBD_SEEDS'] = previous


def main():
    """Uruchom testy"""
    tests = [obj for name, obj in globals().items() if name.startswith('test_') and callable(obj)]
    failed = 0
    for test in tests:
        try:
            test()
            print(f"✅ {test.__name__}")
        except Exception as e:
            failed += 1
            print(f"❌ {test.__name__}: {e}")

    if failed:
        print(f"\n❌ BŁĄD: {failed} z {len(tests)} testów nie przeszło")
        return 1
    print("\n✅ Wszystkie testy przeszły pomyślnie!")
    return 0


if __name__ == '__main__':
    exit(main())
