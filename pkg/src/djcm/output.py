"""Deterministic CSV and JSON emission.

Floats are printed with 17 significant digits (round-trip exact for
IEEE doubles), newlines are Unix, key order is sorted: re-running a
command with the same inputs reproduces every output byte for byte.
"""

from __future__ import annotations

import json
import os

import numpy as np

__all__ = ["fmt_float", "write_text", "write_csv", "write_json"]


def fmt_float(x) -> str:
    return f"{float(x):.17g}"


def write_text(path, text: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def write_csv(path, header: list[str], columns: list[np.ndarray]) -> None:
    """Comma-separated file with a header row; one array per column."""
    if len(header) != len(columns):
        raise ValueError("header and columns must have equal length")
    n = len(columns[0])
    if any(len(col) != n for col in columns):
        raise ValueError("all columns must have equal length")
    lines = [",".join(header)]
    for i in range(n):
        lines.append(",".join(fmt_float(col[i]) for col in columns))
    write_text(path, "\n".join(lines) + "\n")


def write_json(path, doc) -> None:
    write_text(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")
