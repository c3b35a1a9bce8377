"""
Circle Diagram Calculus
Main entry point for the command-line interface.
"""
import sys
import logging
import argparse
from pathlib import Path

# Add project root to Python path
PROJECT_ROOT = Path(__file__).parent
sys.path.insert(0, str(PROJECT_ROOT))

from config.settings import setup_logging, TAGGED_LOG_FILES
from src.commands import dispatch
from src.report import FORMATS, render

# Note: setup_logging() will be called in main() after parsing arguments
logger = None  # Will be initialized after setup_logging()


def parse_arguments(argv=None):
    """Parse command line arguments."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--quadruple', type=str, help='Quadruple fixture name or JSON path')
    common.add_argument('--d', type=str, help='Value substituted for the parameter d')
    common.add_argument('--param', action='append', metavar='NAME=VALUE',
                        help='Value substituted for a coefficient ring variable (repeatable)')
    common.add_argument('--form', type=str, help='Circular form literal, e.g. "(()())"')
    common.add_argument('--diagram', action='append', metavar='PATH',
                        help='Diagram JSON file or inline JSON (repeat for pair)')
    common.add_argument('--n', type=int, default=2, help='Size parameter: circles, k, n or n_max (default: 2)')
    common.add_argument('--mode', choices=['spherical', 'general'], help='Pairing mode (default: by quadruple)')
    common.add_argument('--seed', type=int, help='Seed for random sample points (default: DEFAULT_SEED)')
    common.add_argument('--jobs', type=int, default=1, help='Worker threads for Gram entries (default: 1)')
    common.add_argument('--format', choices=FORMATS, default='json', help='Output format (default: json)')
    common.add_argument('--bound', type=int, help='Override the configured size bound')

    parser = argparse.ArgumentParser(
        description='Circle Diagram Calculus',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Subcommands:
  enumerate   - Circular forms, crossingless matchings or outer matchings
  canon       - Canonical and spherical canonical encodings of a form
  eval        - Evaluate a closed diagram under a quadruple
  pair        - Pair two diagrams (spherical or general)
  gram        - Gram matrix, rank, determinant or blocks
  statespace  - Dimensions of the state spaces A(0)..A(n)
  tl          - Structure constants of the endomorphism algebra End(n)
  meander     - Meander determinants against the Chebyshev product
  tables      - Printed Gram block determinants for n = 2..5
  experiment  - Generic nondegeneracy of semisimple quadruples
  validate    - Axioms of a quadruple
  recognize   - Omega-generated subalgebra, pairing radical, dim A(0)
  series      - Circular series coefficients up to n circles

Exit codes:
  0 success, 1 validation failure, 2 computation refused, 3 resource bound, 130 interrupted

Examples:
  # Evaluate two nested circles in Temperley-Lieb at d = 3
  python main.py eval --quadruple tl --d 3 --form "(())"

  # Gram blocks of the symbolic semisimple fixture
  python main.py gram --quadruple semisimple2 --n 2 --blocks --format table

  # Check the printed determinants for n = 3
  python main.py tables --n 3 --seed 0

  # Meander determinants up to n = 5
  python main.py meander --n 5
        """
    )
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True

    enum_parser = subparsers.add_parser('enumerate', parents=[common], help='Enumerate forms or matchings')
    enum_parser.add_argument('--what', choices=['forms', 'matchings', 'outer'], default='forms',
                             help='Objects to enumerate (default: forms)')
    subparsers.add_parser('canon', parents=[common], help='Canonical encodings of a form')
    subparsers.add_parser('eval', parents=[common], help='Evaluate a closed diagram')
    subparsers.add_parser('pair', parents=[common], help='Pair two diagrams')

    gram_parser = subparsers.add_parser('gram', parents=[common], help='Gram matrix of the spanning set')
    gram_parser.add_argument('--blocks', action='store_true', help='Split by boundary sequence')
    gram_parser.add_argument('--seq', action='append', help='Only these boundary sequences, e.g. 1212')
    gram_parser.add_argument('--matrix', action='store_true', help='Include matrix entries in JSON output')

    subparsers.add_parser('statespace', parents=[common], help='State space dimensions')
    subparsers.add_parser('tl', parents=[common], help='Endomorphism algebra structure constants')
    subparsers.add_parser('meander', parents=[common], help='Meander determinant check')

    tables_parser = subparsers.add_parser('tables', parents=[common], help='Printed Gram determinants')
    tables_parser.add_argument('--trials', type=int, help='Sample points per determinant check')

    exp_parser = subparsers.add_parser('experiment', parents=[common], help='Generic nondegeneracy experiment')
    exp_parser.add_argument('--k-dim', type=int, default=2, help='Dimension of the semisimple algebra (default: 2)')
    exp_parser.add_argument('--points', type=int, default=5, help='Random parameter points (default: 5)')
    exp_parser.add_argument('--decoupled', action='store_true', help='Also check the a12 = a21 = 0 case')
    exp_parser.add_argument('--no-scan', action='store_true', help='Skip the Chebyshev specialization scan')

    subparsers.add_parser('validate', parents=[common], help='Check quadruple axioms')
    subparsers.add_parser('recognize', parents=[common], help='Recognizability data of a quadruple')
    subparsers.add_parser('series', parents=[common], help='Circular series coefficients')

    return parser.parse_args(argv)


def main(argv=None):
    """Main execution function."""
    try:
        args = parse_arguments(argv)

        # Long-running subcommands get their own tagged log file
        tag_filter = args.command if args.command in TAGGED_LOG_FILES else None
        setup_logging(tag_filter=tag_filter)

        # Initialize logger after setup_logging
        global logger
        logger = logging.getLogger(__name__)

        logger.info("="*60)
        logger.info(f"Circle Diagram Calculus: {args.command}")
        logger.info("="*60)
        if args.seed is not None:
            logger.info(f"Seed: {args.seed}")

        result = dispatch(args)
        print(render(result, args.format))

        logger.info("="*60)
        logger.info(f"Status: {result['status']} (exit code {result['exit_code']})")
        if result['status'] == 'failed' and 'error' in result:
            logger.error(f"Error: {result['error']}")
        logger.info("="*60)
        sys.exit(result['exit_code'])

    except KeyboardInterrupt:
        if logger:
            logger.warning("Interrupted by user")
        sys.exit(130)
    except Exception as e:
        if logger:
            logger.error(f"Unexpected error: {e}", exc_info=True)
        else:
            print(f"Unexpected error: {e}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
