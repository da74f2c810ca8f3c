"""
WRESBD - Weryfikacja wyrazów brzegowych residuum Wodzickiego (n = 6)
====================================================================

Liczy dokładnie wszystkie przypadki brzegowe dla skręconego operatora Diraca
albo sygnatury, sprawdza każdą wartość wyrocznią numeryczną i wypisuje rejestr
(tekst albo JSON).

Użycie:
    python wresbd.py verify --family dirac --seeds 1,2,3
    python wresbd.py verify --family signature --format json --out signature.json
    python wresbd.py verify --list-cases
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from boundary_terms import enumerate_cases
from operator_catalog import OperatorFamily
from verification_ledger import DEFAULT_SEEDS, REPORT_FORMATS, VerificationLedger, emit_report, run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ORACLE_MISMATCH = 1
EXIT_USAGE = 2


def parse_seeds(raw: Optional[str]) -> List[int]:
    """'1,2,3' -> [1, 2, 3]; pusty napis -> brak ziaren (sam rachunek dokładny)"""
    if raw is None:
        return list(DEFAULT_SEEDS)
    raw = raw.strip()
    if not raw:
        return []
    try:
        return [int(part) for part in raw.split(',') if part.strip()]
    except ValueError:
        raise ValueError(f"Niepoprawna lista ziaren: {raw!r}") from None


def setup_logging(level_name: str):
    # ============================================================================
    # LOGGING SETUP
    # ============================================================================
    logging.basicConfig(
        level=getattr(logging, level_name.upper(), logging.INFO),
        format='%(asctime)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        stream=sys.stderr,
    )


def print_cases():
    print(f"{'id':<6} {'(r, ℓ, j, k, |α|)':<22} prefaktor")
    for case in enumerate_cases():
        print(f"{case.case_id:<6} {str(case.key):<22} {case.prefactor.render()}")


def print_summary(ledger: VerificationLedger):
    """Podsumowanie na stderr (raport zostaje czysty)"""
    out = sys.stderr
    failures = ledger.oracle_failures()
    mismatches = ledger.stated_mismatches()
    broken = [check for check in ledger.identities if not check.match]
    print(f"\n📊 Podsumowanie ({ledger.family.value}):", file=out)
    print(f"   Wpisy: {len(ledger.entries)}, ziarna: {len(ledger.seeds)}", file=out)
    if failures:
        print(f"   ❌ Niezgodne z wyrocznią: {', '.join(e.id for e in failures)}", file=out)
    else:
        print("   ✅ Wszystkie wartości zgodne z wyrocznią", file=out)
    if mismatches:
        print(f"   ⚠️  Różne od wartości podanych: {', '.join(e.id for e in mismatches)}", file=out)
    if broken:
        print(f"   ⚠️  Niespełnione tożsamości: {', '.join(c.id for c in broken)}", file=out)
    if ledger.totals:
        print(f"   Suma silnika: {ledger.totals.get('engine')}", file=out)


def main(argv: Optional[List[str]] = None) -> int:
    """Główna funkcja CLI"""
    parser = argparse.ArgumentParser(
        description='Weryfikacja wyrazów brzegowych residuum Wodzickiego (n = 6)',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Przykłady użycia:
  python wresbd.py verify --family dirac --seeds 1,2,3
  python wresbd.py verify --family signature --format json --out signature.json
  python wresbd.py verify --family dirac --case b
  python wresbd.py verify --list-cases

Zmienne środowiskowe:
  WRESBD_SEEDS       lista ziaren, gdy brak --seeds (np. "1,2,3")
  WRESBD_LOG_LEVEL   poziom logowania, gdy brak --log-level
        """
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    verify = subparsers.add_parser('verify', help='Pełna weryfikacja jednej rodziny operatorów')
    verify.add_argument('--family', default='dirac',
                        choices=[fam.value for fam in OperatorFamily], help='Rodzina operatorów')
    verify.add_argument('--seeds', default=None,
                        help='Ziarna wyroczni, np. 1,2,3 (pusty napis = bez wyroczni)')
    verify.add_argument('--format', dest='fmt', default='text',
                        choices=list(REPORT_FORMATS), help='Format raportu')
    verify.add_argument('--case', default=None, help='Tylko jeden przypadek (aI, aII, aIII, b, c)')
    verify.add_argument('--out', default=None, help='Plik raportu (domyślnie stdout)')
    verify.add_argument('--log-level', default=None, help='DEBUG, INFO, WARNING, ERROR')
    verify.add_argument('--list-cases', action='store_true',
                        help='Wypisz przypadki sumy brzegowej z prefaktorami i zakończ')

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    setup_logging(args.log_level or os.environ.get('WRESBD_LOG_LEVEL') or 'INFO')

    if args.list_cases:
        print_cases()
        return EXIT_OK

    try:
        seeds = parse_seeds(args.seeds if args.seeds is not None else os.environ.get('WRESBD_SEEDS'))
    except ValueError as e:
        logger.error(str(e))
        return EXIT_USAGE

    case_ids = [case.case_id for case in enumerate_cases()]
    if args.case and args.case not in case_ids:
        logger.error(f"Nieznany przypadek: {args.case} (dostępne: {', '.join(case_ids)})")
        return EXIT_USAGE

    family = OperatorFamily.parse(args.family)
    logger.info(f"Weryfikacja: {family.value}, ziarna {seeds or 'brak'}")
    ledger = run_verification(family, seeds, args.case)

    try:
        emit_report(ledger, args.fmt, args.out)
    except OSError as e:
        logger.error(f"Nie można zapisać raportu: {e}")
        return EXIT_USAGE

    print_summary(ledger)
    return EXIT_OK if ledger.all_oracle_match() else EXIT_ORACLE_MISMATCH


if __name__ == '__main__':
    sys.exit(main())
