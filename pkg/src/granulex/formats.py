"""File formats: space JSON, information-table CSV, and JSON number output."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import IO, Iterable, Optional, Sequence, Union

from .space import ApproximationSpace, DomainError, Partition, Universe

SIG_DIGITS = 12


def fmt(x: float) -> float:
    """Round to 12 significant digits for stable JSON output."""
    return float(format(x, f".{SIG_DIGITS}g"))


def space_to_dict(space: ApproximationSpace) -> dict:
    return {"universe": list(space.universe.labels), "blocks": space.partition.block_labels()}


def space_from_dict(data: dict) -> ApproximationSpace:
    try:
        labels = data["universe"]
        blocks = data["blocks"]
    except (KeyError, TypeError):
        raise DomainError("space JSON needs 'universe' and 'blocks' keys") from None
    if not isinstance(labels, list) or not isinstance(blocks, list):
        raise DomainError("'universe' and 'blocks' must be lists")
    universe = Universe(tuple(str(x) for x in labels))
    return ApproximationSpace(universe, Partition.from_labels(universe, blocks))


def load_space(path: Union[str, Path]) -> ApproximationSpace:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON ({exc})") from None
    return space_from_dict(data)


def dump_space(space: ApproximationSpace) -> str:
    return json.dumps(space_to_dict(space))


class InformationTable:
    """Rectangular table of string cells with a header row."""

    def __init__(self, columns: Sequence[str], rows: Sequence[Sequence[str]]):
        columns = list(columns)
        if len(set(columns)) != len(columns):
            raise DomainError("table column names must be distinct")
        if not rows:
            raise DomainError("table has no rows")
        for lineno, row in enumerate(rows, start=2):
            if len(row) != len(columns):
                raise DomainError(f"row on line {lineno} has {len(row)} cells, expected {len(columns)}")
        self.columns = columns
        self.rows = [list(r) for r in rows]

    @classmethod
    def read_csv(cls, source: Union[str, Path, IO[str]]) -> "InformationTable":
        if isinstance(source, (str, Path)):
            with open(source, newline="", encoding="utf-8") as fh:
                return cls._from_reader(csv.reader(fh))
        return cls._from_reader(csv.reader(source))

    @classmethod
    def from_text(cls, text: str) -> "InformationTable":
        return cls.read_csv(io.StringIO(text, newline=""))

    @classmethod
    def _from_reader(cls, reader) -> "InformationTable":
        records = [r for r in reader if r]
        if not records:
            raise DomainError("table is empty")
        return cls(records[0], records[1:])

    def column(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise DomainError(f"unknown column {name!r}; columns are {self.columns}") from None


def ingest_table(
    table: InformationTable, attributes: Iterable[str], id_column: Optional[str] = None
) -> ApproximationSpace:
    """Partition rows by indiscernibility on ``attributes``.

    Rows land in the same block iff they agree on every selected attribute, so
    an empty attribute list puts all rows in one block. Row ids come from
    ``id_column`` when given, otherwise 1-based row numbers.
    """
    cols = [table.column(a) for a in attributes]
    if id_column is not None:
        id_idx = table.column(id_column)
        labels = [row[id_idx] for row in table.rows]
    else:
        labels = [str(i) for i in range(1, len(table.rows) + 1)]
    universe = Universe(tuple(labels))
    groups: dict[tuple, int] = {}
    for i, row in enumerate(table.rows):
        key = tuple(row[c] for c in cols)
        groups[key] = groups.get(key, 0) | (1 << i)
    return ApproximationSpace(universe, Partition(universe, tuple(groups.values())))
