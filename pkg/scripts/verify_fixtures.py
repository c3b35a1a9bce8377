"""
Script to verify the shipped quadruple fixtures.
Loads every enabled fixture from config/fixtures.yaml, checks the axioms and,
for numeric fixtures, cross-checks dim A(0) against the closed-form oracle.
"""
import sys
from pathlib import Path

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from config.settings import FIXTURES_DIR, get_enabled_fixtures, load_printed_tables
from src.algebra import pairing_radical, validate_quadruple
from src.errors import CircleCalcError
from src.fixtures import load_quadruple
from src.gram import closed_gram_rank

ORACLE_CIRCLES = 5


def check_fixture(entry: dict) -> bool:
    """Validate one catalogued fixture."""
    name = entry['name']
    print(f"\n🔎 {name} ({entry.get('kind', 'numeric')})")
    try:
        q = load_quadruple(name)
        report = validate_quadruple(q)
        for axiom, ok in report.checks.items():
            print(f"   {'✓' if ok else '·'} {axiom}")
        if not report.valid:
            print(f"   ✗ {name} violates a core axiom")
            return False

        if q.is_numeric:
            a0 = pairing_radical(q).a0_dim
            oracle = closed_gram_rank(q, ORACLE_CIRCLES)
            if a0 != oracle:
                print(f"   ✗ dim A(0) = {a0} but closed-form rank = {oracle}")
                return False
            print(f"   ✓ dim A(0) = {a0} (closed forms up to {ORACLE_CIRCLES} circles agree)")
        return True

    except CircleCalcError as e:
        print(f"   ✗ {name}: {e}")
        return False


def check_tables() -> bool:
    """Check that the printed tables load."""
    print("\n📋 Checking printed tables...")
    try:
        tables = load_printed_tables()
    except Exception as e:
        print(f"   ✗ Could not load tables: {e}")
        return False
    for n, rows in sorted(tables.items()):
        print(f"   ✓ n={n}: {len(rows)} rows")
    return bool(tables)


def main():
    """Main execution function."""
    print("\n" + "="*60)
    print("  Fixture Library Verification")
    print("="*60)
    print(f"   Fixtures directory: {FIXTURES_DIR}")

    checks = [check_fixture(entry) for entry in get_enabled_fixtures()]
    checks.append(check_tables())

    print("\n" + "="*60)
    if all(checks):
        print("✅ All fixtures passed.")
    else:
        print("⚠️  Some fixtures failed. Please review the errors above.")
    print("="*60 + "\n")

    sys.exit(0 if all(checks) else 1)


if __name__ == "__main__":
    main()
