import logging
import sys
from pathlib import Path
from typing import Optional

logger = logging.getLogger(__name__)


class ReportWriter:
    """Writes rendered reports to stdout or to files."""

    def write(self, text: str, out: Optional[str] = None) -> Optional[Path]:
        """
        Write a rendered report.

        Args:
            text (str): Rendered report
            out (str, optional): Destination path; stdout when missing or "-"

        Returns:
            Path: File written, or None for stdout
        """
        if not out or out == "-":
            sys.stdout.write(text)
            sys.stdout.flush()
            return None
        path = Path(out)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            # newline="" keeps the bytes identical across platforms
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        except OSError as e:
            logger.error(f"Error writing report to {path}: {e}")
            raise
        logger.info(f"Report written to {path}")
        return path
