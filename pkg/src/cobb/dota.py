"""DOTA annotation ingestion.

One object per line: eight vertex coordinates, a category and a difficulty
flag, whitespace separated.  File headers (``imagesource:...``, ``gsd:...``)
are skipped by the file-level reader.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from cobb.errors import DotaParseError
from cobb.geometry import OrientedBox, Point2, min_area_rect

log = logging.getLogger(__name__)

_METADATA_PREFIXES = ("imagesource", "gsd")


@dataclass(frozen=True)
class DotaRecord:
    quad: tuple[Point2, Point2, Point2, Point2]
    category: str
    difficulty: int


def is_metadata_line(line: str) -> bool:
    stripped = line.strip().lower()
    return any(stripped.startswith(p) for p in _METADATA_PREFIXES)


def parse_dota_line(line: str, line_no: int | None = None) -> DotaRecord:
    """Parse one annotation line; malformed input raises :class:`DotaParseError`."""
    tokens = line.split()
    if len(tokens) != 10:
        raise DotaParseError(f"expected 10 tokens, got {len(tokens)}", line_no)
    coords = []
    for tok in tokens[:8]:
        try:
            v = float(tok)
        except ValueError:
            raise DotaParseError(f"non-numeric coordinate {tok!r}", line_no) from None
        if v != v or v in (float("inf"), float("-inf")):
            raise DotaParseError(f"non-finite coordinate {tok!r}", line_no)
        coords.append(v)
    category = tokens[8]
    if not category:
        raise DotaParseError("empty category", line_no)
    try:
        difficulty = int(tokens[9])
    except ValueError:
        raise DotaParseError(f"non-integer difficulty {tokens[9]!r}", line_no) from None
    pts = tuple(Point2(coords[2 * i], coords[2 * i + 1]) for i in range(4))
    return DotaRecord(_canonical_quad_order(pts), category, difficulty)


def _canonical_quad_order(pts):
    """Deterministic ordering: keep the cycle, start at the min-(y, x) vertex.

    Annotation quads are not guaranteed convex, so only the starting vertex
    and winding are normalized.
    """
    s = 0.0
    for i in range(4):
        a, b = pts[i], pts[(i + 1) % 4]
        s += a.x * b.y - b.x * a.y
    if s > 0:
        pts = pts[::-1]
    start = min(range(4), key=lambda i: (pts[i].y, pts[i].x))
    return pts[start:] + pts[:start]


def record_box(record: DotaRecord) -> OrientedBox:
    """Fit the annotation quad with its minimum-area enclosing rectangle."""
    return min_area_rect(record.quad)


def read_dota_file(path) -> tuple[list[DotaRecord], list[str]]:
    """All parseable records of a file plus skip reasons for the rest."""
    records: list[DotaRecord] = []
    skipped: list[str] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip() or is_metadata_line(line):
                continue
            try:
                records.append(parse_dota_line(line, line_no))
            except DotaParseError as exc:
                skipped.append(str(exc))
                log.warning("%s: skipped %s", path, exc)
    return records, skipped


def convert_annotations(input_path, codec, output_path, float_fmt: str = "%.17g") -> int:
    """Fit each annotation with a box, encode it, write one CSV row per record.

    Returns the number of rows written; unparseable lines are logged and
    skipped (reasons also land in the module logger).
    """
    records, _ = read_dota_file(input_path)
    n = 0
    with open(output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("category,difficulty," + ",".join(codec.component_names) + "\n")
        for rec in records:
            enc = codec.encode(record_box(rec))
            fh.write(f"{rec.category},{rec.difficulty}," + ",".join(float_fmt % v for v in enc) + "\n")
            n += 1
    return n
