"""Ordered, single-threaded output to a file or stdout."""

import logging
import sys
from pathlib import Path
from typing import TextIO

logger = logging.getLogger(__name__)


class ReportWriter:
    """Write command output to ``--out`` (resolved against the output dir) or stdout."""

    def __init__(self, out: str | None = None, output_dir: str = "."):
        self.path: Path | None = None
        if out:
            path = Path(out)
            self.path = path if path.is_absolute() else Path(output_dir) / path
        self._stream: TextIO | None = None

    def _get_stream(self) -> TextIO:
        """Open the target on first use."""
        if self._stream is None:
            if self.path is None:
                self._stream = sys.stdout
            else:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                self._stream = open(self.path, "w", encoding="utf-8", newline="")
        return self._stream

    def write(self, text: str) -> None:
        """Write a block of output.

        Args:
            text: Output text; empty text is skipped with a warning
        """
        if not text:
            logger.warning("Attempted to write empty output")
            return
        self._get_stream().write(text)

    def close(self):
        """Close the file; stdout is only flushed."""
        if self._stream is None:
            return
        if self._stream is sys.stdout:
            self._stream.flush()
        else:
            self._stream.close()
            logger.info(f"Wrote {self.path}")
        self._stream = None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
