"""Parsing and strict validation of the two CSV inputs.

The profile CSV has a header (``id,index,label,weight,year,words``; ``label``
optional, column order free) and one topic per row. The TES CSV is a bare
N x N grid, no header or labels, blanks allowed only on/below the diagonal.

Parsers return ``(value, report)`` where the report carries warnings; any
error aborts the parse by raising :class:`CsvValidationError`, whose report
locates every violation by row and column. In lenient mode a nonzero
contemporary entry or an off-unit diagonal is coerced with a warning instead.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field

from .model import TemporalTopicProfile, TesMatrix, TopicRecord

# Profile error codes.
MISSING_HEADER = "MissingHeader"
DUPLICATE_HEADER = "DuplicateHeader"
EMPTY_PROFILE = "EmptyProfile"
EMPTY_ID = "EmptyId"
DUPLICATE_ID = "DuplicateId"
BAD_INDEX = "BadIndex"
DUPLICATE_INDEX = "DuplicateIndex"
NON_CONTIGUOUS_INDEX = "NonContiguousIndex"
BAD_WEIGHT = "BadWeight"
WEIGHT_OUT_OF_RANGE = "WeightOutOfRange"
BAD_YEAR = "BadYear"
BAD_WORDS = "BadWords"
EMPTY_WORDS = "EmptyWords"

# Matrix error codes.
DIMENSION_MISMATCH = "DimensionMismatch"
BAD_NUMBER = "BadNumber"
VALUE_OUT_OF_RANGE = "ValueOutOfRange"
CONTEMPORARY_NONZERO = "ContemporaryNonzero"
DIAGONAL_NOT_ONE = "DiagonalNotOne"
BLANK_ABOVE_DIAGONAL = "BlankAboveDiagonal"

# Shared codes.
BAD_ENCODING = "BadEncoding"
BAD_CSV = "BadCsv"
ROWS_RESORTED = "RowsResorted"
BELOW_DIAGONAL_IGNORED = "BelowDiagonalIgnored"

#: Diagonal entries may deviate from 1 by at most this much before they are
#: rejected (strict) or coerced (lenient).
DIAGONAL_TOLERANCE = 1e-9

_PLAIN_DECIMAL = re.compile(r"[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)")
_PLAIN_INT = re.compile(r"[+-]?[0-9]+")
_QUOTE_CHARS = "'\"`"

_REQUIRED_COLUMNS = ("id", "index", "weight", "year", "words")


@dataclass(frozen=True)
class ValidationIssue:
    """One located problem; ``column`` is a field name (profile) or 1-based position (matrix)."""

    row: int | None
    column: str | int | None
    code: str
    message: str

    def format(self) -> str:
        where = []
        if self.row is not None:
            where.append(f"row {self.row}")
        if self.column is not None:
            where.append(f"column {self.column}")
        location = ", ".join(where) or "file"
        return f"{location}: {self.code}: {self.message}"


@dataclass
class ValidationReport:
    errors: list[ValidationIssue] = field(default_factory=list)
    warnings: list[ValidationIssue] = field(default_factory=list)

    def error(self, row: int | None, column: str | int | None, code: str, message: str) -> None:
        self.errors.append(ValidationIssue(row, column, code, message))

    def warning(self, row: int | None, column: str | int | None, code: str, message: str) -> None:
        self.warnings.append(ValidationIssue(row, column, code, message))

    @property
    def ok(self) -> bool:
        return not self.errors

    def format_lines(self) -> list[str]:
        lines = [f"error: {issue.format()}" for issue in self.errors]
        lines.extend(f"warning: {issue.format()}" for issue in self.warnings)
        return lines


class CsvValidationError(ValueError):
    """Raised when a CSV input violates its contract; carries the full report."""

    def __init__(self, report: ValidationReport):
        self.report = report
        summary = "; ".join(issue.format() for issue in report.errors) or "invalid input"
        super().__init__(summary)


def _decode(data: bytes, report: ValidationReport) -> str | None:
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        line = data[: exc.start].count(b"\n") + 1
        report.error(line, None, BAD_ENCODING, f"input is not valid UTF-8 at byte {exc.start}")
        return None


def _read_rows(text: str, report: ValidationReport) -> list[list[str]] | None:
    reader = csv.reader(io.StringIO(text))
    try:
        rows = list(reader)
    except csv.Error as exc:
        report.error(reader.line_num, None, BAD_CSV, f"unreadable CSV: {exc}")
        return None
    while rows and rows[-1] == []:
        rows.pop()
    return rows


def _parse_decimal(cell: str) -> float | None:
    """Plain decimal number or None; scientific notation, inf and nan are rejected."""
    if _PLAIN_DECIMAL.fullmatch(cell):
        return float(cell)
    return None


def _parse_int(cell: str) -> int | None:
    if _PLAIN_INT.fullmatch(cell):
        return int(cell)
    return None


def _parse_words(cell: str) -> tuple[str, ...] | None:
    """Parse a bracketed, quoted term list like ``['alpha', 'beta']``."""
    cell = cell.strip()
    if not (cell.startswith("[") and cell.endswith("]")):
        return None
    inner = cell[1:-1].strip()
    if not inner:
        return ()
    words = []
    for part in inner.split(","):
        word = part.strip().strip(_QUOTE_CHARS)
        if not word:
            return None
        words.append(word)
    return tuple(words)


def parse_profile(data: bytes) -> tuple[TemporalTopicProfile, ValidationReport]:
    """Parse a temporal topic profile CSV.

    Rows may arrive in any order; they are re-sorted ascending by
    (year, index), with a warning when re-sorting occurred. Raises
    :class:`CsvValidationError` if any row violates the profile contract.
    """
    report = ValidationReport()
    text = _decode(data, report)
    if text is None:
        raise CsvValidationError(report)
    rows = _read_rows(text, report)
    if rows is None:
        raise CsvValidationError(report)
    if not rows:
        report.error(1, None, MISSING_HEADER, "file is empty, expected a header row")
        raise CsvValidationError(report)

    header = [cell.strip().lower() for cell in rows[0]]
    columns: dict[str, int] = {}
    for pos, name in enumerate(header):
        if name in columns:
            if name in _REQUIRED_COLUMNS or name == "label":
                report.error(1, name, DUPLICATE_HEADER, f"column {name!r} appears more than once")
        else:
            columns[name] = pos
    for name in _REQUIRED_COLUMNS:
        if name not in columns:
            report.error(1, name, MISSING_HEADER, f"required column {name!r} is missing")
    if not report.ok:
        raise CsvValidationError(report)

    def cell(row: list[str], name: str) -> str:
        pos = columns.get(name, -1)
        if pos < 0 or pos >= len(row):
            return ""
        return row[pos].strip()

    records: list[tuple[int, TopicRecord]] = []  # (csv row number, record)
    ids_seen: dict[str, int] = {}
    indices_seen: dict[int, int] = {}
    for offset, row in enumerate(rows[1:]):
        rownum = offset + 2
        topic_id = cell(row, "id")
        if not topic_id:
            report.error(rownum, "id", EMPTY_ID, "id must be non-empty")
        elif topic_id in ids_seen:
            report.error(
                rownum, "id", DUPLICATE_ID, f"id {topic_id!r} already used in row {ids_seen[topic_id]}"
            )
        else:
            ids_seen[topic_id] = rownum

        index = _parse_int(cell(row, "index"))
        if index is None or index < 0:
            report.error(
                rownum, "index", BAD_INDEX, f"index must be a non-negative integer, got {cell(row, 'index')!r}"
            )
            index = None
        elif index in indices_seen:
            report.error(
                rownum, "index", DUPLICATE_INDEX, f"index {index} already used in row {indices_seen[index]}"
            )
            index = None
        else:
            indices_seen[index] = rownum

        weight = _parse_decimal(cell(row, "weight"))
        if weight is None:
            report.error(
                rownum, "weight", BAD_WEIGHT, f"weight must be a plain decimal, got {cell(row, 'weight')!r}"
            )
        elif not 0.0 <= weight <= 1.0:
            report.error(rownum, "weight", WEIGHT_OUT_OF_RANGE, f"weight must be in [0, 1], got {weight}")
            weight = None

        year = _parse_int(cell(row, "year"))
        if year is None:
            report.error(rownum, "year", BAD_YEAR, f"year must be an integer, got {cell(row, 'year')!r}")

        words = _parse_words(cell(row, "words"))
        if words is None:
            report.error(
                rownum, "words", BAD_WORDS, "words must be a bracketed, quoted, comma-separated list"
            )
        elif not words:
            report.error(rownum, "words", EMPTY_WORDS, "words must contain at least one term")
            words = None

        label = cell(row, "label") or None
        if topic_id and index is not None and weight is not None and year is not None and words:
            records.append(
                (rownum, TopicRecord(id=topic_id, index=index, weight=weight, year=year, words=words, label=label))
            )

    if not rows[1:]:
        report.error(2, None, EMPTY_PROFILE, "profile must contain at least one topic")
    if report.ok:
        expected = set(range(len(records)))
        actual = {record.index for _, record in records}
        if actual != expected:
            missing = sorted(expected - actual)
            report.error(
                None,
                "index",
                NON_CONTIGUOUS_INDEX,
                f"indices must be exactly 0..{len(records) - 1}, missing {missing}",
            )
    if not report.ok:
        raise CsvValidationError(report)

    ordered = sorted(records, key=lambda item: (item[1].year, item[1].index))
    if [rownum for rownum, _ in ordered] != [rownum for rownum, _ in records]:
        first = next(
            rownum for (rownum, _), (sorted_rownum, _) in zip(records, ordered) if rownum != sorted_rownum
        )
        report.warning(first, None, ROWS_RESORTED, "rows were re-sorted ascending by (year, index)")

    try:
        profile = TemporalTopicProfile(topics=tuple(record for _, record in ordered))
    except ValueError as exc:
        report.error(None, None, NON_CONTIGUOUS_INDEX, str(exc))
        raise CsvValidationError(report) from exc
    return profile, report


def parse_tes(
    data: bytes, profile: TemporalTopicProfile, lenient: bool = False
) -> tuple[TesMatrix, ValidationReport]:
    """Parse a TES matrix CSV against the profile's size and year structure.

    Blank cells are permitted only on/below the diagonal; below-diagonal
    content is ignored and stored as 0. Raises :class:`CsvValidationError`
    on any violation that lenient mode cannot coerce.
    """
    report = ValidationReport()
    text = _decode(data, report)
    if text is None:
        raise CsvValidationError(report)
    rows = _read_rows(text, report)
    if rows is None:
        raise CsvValidationError(report)
    n = len(profile)
    if len(rows) != n:
        report.error(
            min(len(rows), n) + 1, None, DIMENSION_MISMATCH, f"expected {n} rows, found {len(rows)}"
        )
        raise CsvValidationError(report)
    for i, row in enumerate(rows):
        if len(row) != n:
            report.error(i + 1, None, DIMENSION_MISMATCH, f"expected {n} columns, found {len(row)}")
    if not report.ok:
        raise CsvValidationError(report)

    years = [topic.year for topic in profile.topics]
    entries: list[list[float]] = []
    for i, row in enumerate(rows):
        parsed_row: list[float] = []
        for j, raw in enumerate(row):
            cell = raw.strip()
            rownum, colnum = i + 1, j + 1
            if j < i:
                if cell:
                    report.warning(
                        rownum, colnum, BELOW_DIAGONAL_IGNORED, "value below the diagonal is ignored"
                    )
                parsed_row.append(0.0)
                continue
            if j == i:
                if not cell:
                    parsed_row.append(1.0)
                    continue
                value = _parse_decimal(cell)
                if value is None:
                    report.error(rownum, colnum, BAD_NUMBER, f"not a plain decimal: {cell!r}")
                    parsed_row.append(1.0)
                elif abs(value - 1.0) <= DIAGONAL_TOLERANCE:
                    parsed_row.append(1.0)
                elif lenient:
                    report.warning(rownum, colnum, DIAGONAL_NOT_ONE, f"diagonal entry {value} coerced to 1")
                    parsed_row.append(1.0)
                else:
                    report.error(rownum, colnum, DIAGONAL_NOT_ONE, f"diagonal entry must be 1, got {value}")
                    parsed_row.append(1.0)
                continue
            # strictly above the diagonal
            if not cell:
                report.error(rownum, colnum, BLANK_ABOVE_DIAGONAL, "blank cell above the diagonal")
                parsed_row.append(0.0)
                continue
            value = _parse_decimal(cell)
            if value is None:
                report.error(rownum, colnum, BAD_NUMBER, f"not a plain decimal: {cell!r}")
                parsed_row.append(0.0)
                continue
            if not 0.0 <= value <= 1.0:
                report.error(rownum, colnum, VALUE_OUT_OF_RANGE, f"TES must be in [0, 1], got {value}")
                parsed_row.append(0.0)
                continue
            if years[i] == years[j] and value != 0.0:
                if lenient:
                    report.warning(
                        rownum, colnum, CONTEMPORARY_NONZERO, f"contemporary TES {value} coerced to 0"
                    )
                    parsed_row.append(0.0)
                else:
                    report.error(
                        rownum,
                        colnum,
                        CONTEMPORARY_NONZERO,
                        f"TES between contemporary topics (year {years[i]}) must be 0, got {value}",
                    )
                    parsed_row.append(0.0)
                continue
            parsed_row.append(value)
        entries.append(parsed_row)

    if not report.ok:
        raise CsvValidationError(report)
    try:
        matrix = TesMatrix(n=n, entries=tuple(tuple(row) for row in entries))
    except ValueError as exc:
        report.error(None, None, VALUE_OUT_OF_RANGE, str(exc))
        raise CsvValidationError(report) from exc
    return matrix, report


def format_number(value: float) -> str:
    """Shortest exact decimal form; integral floats drop the trailing ``.0``."""
    if value == int(value):
        return str(int(value))
    return repr(value)


def profile_to_csv(profile: TemporalTopicProfile) -> bytes:
    """Serialize a profile back to its CSV form (canonical header order)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id", "index", "label", "weight", "year", "words"])
    for topic in profile.topics:
        words = "[" + ", ".join(f"'{word}'" for word in topic.words) + "]"
        writer.writerow(
            [topic.id, topic.index, topic.label or "", format_number(topic.weight), topic.year, words]
        )
    return out.getvalue().encode("utf-8")


def tes_to_csv(matrix: TesMatrix) -> bytes:
    """Serialize a matrix back to CSV: upper triangle and diagonal, blanks below."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for i in range(matrix.n):
        row = ["" if j < i else format_number(matrix.entries[i][j]) for j in range(matrix.n)]
        writer.writerow(row)
    return out.getvalue().encode("utf-8")
