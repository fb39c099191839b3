"""Target summary cleaning: blank-line segmentation + whitespace repair."""

from __future__ import annotations

import re

_BLANK_LINE_SPLIT = re.compile(r"\n[ \t\r]*\n(?:[ \t\r]*\n)*")
_SPACE_RUN = re.compile(r"\s+")


def clean_target(raw: str) -> str:
    """Normalize a reference summary for training.

    Split at blank lines (lines containing only whitespace), turn each
    segment into a single line with single spaces, drop segments that end
    up empty, and rejoin the survivors separated by one blank line.
    """
    segments = _BLANK_LINE_SPLIT.split(raw)
    cleaned = [_SPACE_RUN.sub(" ", seg).strip() for seg in segments]
    return "\n\n".join(seg for seg in cleaned if seg)
