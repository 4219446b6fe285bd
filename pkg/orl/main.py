# orl/main.py
"""
Point d'entrée de la ligne de commande

    python -m orl.main <commande> [options]

Codes de sortie : 0 succès, 1 vérification en échec, 2 erreur d'usage ou d'entrée.
"""
import argparse
import asyncio
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from orl.config.container import container
from orl.domain.errors import BudgetExceededError, OgfFormatError, ParameterError, PreconditionError
from orl.presentation.cli.commands import (
    setup_construction_commands, setup_embedding_commands, setup_graph_commands,
    setup_qeh_commands, setup_verify_commands,
)

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_USAGE = 2

INPUT_ERRORS = (OgfFormatError, PreconditionError, BudgetExceededError, ParameterError,
                ValidationError, OSError)

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Assemble les sous-commandes avec les services du conteneur"""
    settings = container.settings()
    codec = container.codec()
    closure_service = container.closure_service()
    pattern_service = container.pattern_service()
    oracle_service = container.oracle_service()
    embedding_service = container.embedding_service()
    qeh_service = container.qeh_service()
    homogeneous_service = container.homogeneous_service()
    construction_service = container.construction_service()

    parser = argparse.ArgumentParser(prog="orl", description="Ordered Ramsey lab")
    subparsers = parser.add_subparsers(dest="command", required=True)
    setup_graph_commands(subparsers, closure_service, pattern_service, codec)
    setup_embedding_commands(subparsers, embedding_service, codec)
    setup_qeh_commands(subparsers, qeh_service, homogeneous_service, pattern_service, oracle_service, codec)
    setup_construction_commands(subparsers, construction_service, codec, settings.oracle_budget)
    setup_verify_commands(subparsers, closure_service, pattern_service, oracle_service, embedding_service,
                          qeh_service, homogeneous_service, construction_service, codec)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    settings = container.settings()
    logging.basicConfig(level=settings.log_level, format="%(levelname)s %(name)s: %(message)s")

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    try:
        report = asyncio.run(args.handler(args))
    except INPUT_ERRORS as e:
        logger.debug(f"Command {args.command_name} rejected: {e!r}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"Command {args.command_name} crashed: {e}")
        raise

    sys.stdout.write(report.render())
    return report.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
