import argparse
import sys
from typing import List, Optional, Tuple

import config
from handlers.commands import SUPPORTED_FORMATS, CommandHandlers, RunConfig
from messages import CliMessages
from utils.errors import AlgebraError, InternalInvariant
from utils.logger import setup_logger

logger = setup_logger(__name__)

COMMANDS = ('genus', 'basis', 'generators', 'rep', 'gaps', 'count', 'verify')


def error_handler(error: Exception) -> Tuple[str, int]:
    """Log errors and map them to exit codes"""
    if isinstance(error, AlgebraError):
        code = error.exit_code
    else:
        code = InternalInvariant.exit_code
    logger.error(f"{type(error).__name__}: {error}")
    return CliMessages.ERROR_MESSAGE.format(kind=type(error).__name__, message=error), code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='cyclodiff',
        description=CliMessages.DESCRIPTION,
        epilog=CliMessages.EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    for name in COMMANDS:
        sub = subparsers.add_parser(name)
        sub.add_argument('--q', type=int, required=True, help=CliMessages.HELP_Q)
        sub.add_argument('--format', choices=SUPPORTED_FORMATS[name], help=CliMessages.HELP_FORMAT)
        sub.add_argument('--max-genus', type=int, default=config.MAX_GENUS, help=CliMessages.HELP_MAX_GENUS)
        sub.add_argument('--max-units', type=int, default=config.MAX_UNITS, help=CliMessages.HELP_MAX_UNITS)
        if name == 'verify':
            sub.add_argument('--max-deg', type=int, default=config.DEFAULT_VERIFY_MAX_DEG,
                             help=CliMessages.HELP_MAX_DEG)
            continue
        sub.add_argument('--modulus', required=True, help=CliMessages.HELP_MODULUS)
        if name not in ('genus', 'generators'):
            sub.add_argument('--at', type=int, default=0, dest='anchor', help=CliMessages.HELP_AT)
        if name == 'rep':
            sub.add_argument('--unit', help=CliMessages.HELP_UNIT)
    return parser


def dispatch(argv: List[str]) -> Tuple[str, int]:
    """Run one command; returns the output document and the exit code"""
    document, code, _ = _run(argv)
    return document, code


def _run(argv: List[str]) -> Tuple[str, int, bool]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return '', int(e.code or 0), e.code not in (0, None)

    try:
        run = RunConfig(
            q=args.q,
            modulus_literal=getattr(args, 'modulus', None),
            anchor=getattr(args, 'anchor', 0),
            format=args.format,
            max_genus=args.max_genus,
            max_units=args.max_units,
            unit=getattr(args, 'unit', None),
            max_deg=getattr(args, 'max_deg', config.DEFAULT_VERIFY_MAX_DEG),
        )
        handlers = CommandHandlers(run)
        document = handlers.handle(args.command)
        return document, handlers.exit_code, False
    except Exception as e:
        return (*error_handler(e), True)


def main(argv: Optional[List[str]] = None):
    """Main entry point"""
    document, code, failed = _run(sys.argv[1:] if argv is None else argv)
    if document:
        print(document, file=sys.stderr if failed else sys.stdout)
    sys.exit(code)


if __name__ == '__main__':
    main()
