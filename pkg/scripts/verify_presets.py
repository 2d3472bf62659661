#!/usr/bin/env python
"""Run every non-exploratory preset and print its report."""

import logging
import sys

from dotenv import load_dotenv

from quartic_hull.cli.app import EXIT_ERROR, EXIT_FAILED, EXIT_OK, configure_logging
from quartic_hull.exceptions import QuarticHullError
from quartic_hull.workflow.report import run_all

logger = logging.getLogger(__name__)


def main() -> int:
    """Verify all presets; exit status 1 if any check fails."""
    load_dotenv()
    configure_logging()

    try:
        reports = run_all()
    except QuarticHullError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_ERROR

    for report in reports:
        print(report.to_table())
    failed = [r.preset for r in reports if not r.passed]
    if failed:
        logger.error(f"Failed presets: {', '.join(failed)}")
        return EXIT_FAILED
    logger.info(f"All {len(reports)} presets passed")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
