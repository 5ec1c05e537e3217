"""Text formats for matrices and point sets.

Matrix text: ``m`` lines of ``m`` characters from ``{0, 1}``, line ``i`` is
row ``i`` and character ``j`` is column ``j``.  The compact form joins the
same row strings with commas on a single line.
"""

from __future__ import annotations

import csv
import io as _io
import json

from .errors import MatrixParseError
from .gf2 import BitMatrix, MAX_DIM


def _split_rows(text: str) -> list[tuple[int, int, str]]:
    """Return ``(line, column, row_string)`` triples, positions 1-based."""
    stripped = text.strip("\n")
    if "\n" not in stripped and "," in stripped:
        out = []
        col = 1
        for chunk in stripped.split(","):
            out.append((1, col, chunk))
            col += len(chunk) + 1
        return out
    return [(n, 1, line.rstrip("\r")) for n, line in enumerate(stripped.split("\n"), start=1)]


def parse_matrix(text: str, m: int | None = None) -> BitMatrix:
    """Parse a matrix in the multi-line or compact form.

    If ``m`` is given the matrix must have that dimension.
    """
    rows = _split_rows(text)
    if not rows or rows == [(1, 1, "")]:
        raise MatrixParseError("empty matrix", 1, 1)
    size = len(rows)
    if m is not None and size != m:
        raise MatrixParseError(f"expected {m} rows, got {size}", rows[-1][0], 1)
    if size > MAX_DIM:
        raise MatrixParseError(f"{size} rows exceeds the supported {MAX_DIM}", rows[-1][0], 1)
    packed = []
    for line, col, s in rows:
        for j, ch in enumerate(s):
            if ch not in "01":
                raise MatrixParseError(f"unexpected character {ch!r}", line, col + j)
        if len(s) != size:
            raise MatrixParseError(
                f"row has {len(s)} entries, expected {size}", line, col + min(len(s), size)
            )
        packed.append(sum(1 << j for j, ch in enumerate(s) if ch == "1"))
    return BitMatrix(size, tuple(packed))


def format_matrix(a: BitMatrix, compact: bool = False) -> str:
    return a.compact() if compact else a.to_text()


def dyadic(k: int, m: int) -> str:
    return f"{k}/{1 << m}"


def points_to_text(points, m: int) -> str:
    """One point per line, tab-separated exact dyadic coordinates ``k/2^m``."""
    return "".join("\t".join(dyadic(k, m) for k in p) + "\n" for p in points)


def points_to_csv(points, m: int) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    scale = float(1 << m)
    for p in points:
        writer.writerow([repr(k / scale) for k in p])
    return buf.getvalue()


def points_from_text(text: str) -> tuple[int, list[tuple[int, ...]]]:
    """Inverse of :func:`points_to_text`; returns ``(m, points)``."""
    pts = []
    m = None
    for line in text.splitlines():
        if not line.strip():
            continue
        coords = []
        for field in line.split("\t"):
            num, den = field.split("/")
            d = int(den)
            if d & (d - 1):
                raise ValueError(f"denominator {d} is not a power of two")
            mm = d.bit_length() - 1
            if m is None:
                m = mm
            elif m != mm:
                raise ValueError("inconsistent denominators")
            coords.append(int(num))
        pts.append(tuple(coords))
    return (m or 0), pts


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
