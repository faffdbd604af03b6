"""Loader for the bundled denominator-bound constants (``data/denominator_bounds.txt``)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .errors import InvalidInput


@dataclass(frozen=True)
class TableRow:
    n: int
    C1: str
    logD1: str
    logD2: str

    def constants(self, which: str = "table1") -> tuple[Fraction, Fraction]:
        """(C, log D) as exact rationals for ``table1`` = (C1, D1) or ``table1-d2`` = (100, D2)."""
        if which == "table1":
            return Fraction(self.C1), Fraction(self.logD1)
        if which == "table1-d2":
            return Fraction(100), Fraction(self.logD2)
        raise InvalidInput(f"unknown table column choice {which!r}")


def parse_table(text: str) -> dict[int, TableRow]:
    rows: dict[int, TableRow] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise InvalidInput(f"line {lineno}: expected 'n C1 logD1 logD2'")
        n = int(parts[0])
        for p in parts[1:]:
            Fraction(p)  # validates the number syntax
        rows[n] = TableRow(n, parts[1], parts[2], parts[3])
    return rows


@lru_cache(maxsize=1)
def load_table() -> dict[int, TableRow]:
    text = resources.files("thuefund").joinpath("data/denominator_bounds.txt").read_text()
    return parse_table(text)


def table_row(n: int) -> TableRow:
    rows = load_table()
    if n not in rows:
        raise InvalidInput(f"no tabulated constants for n = {n}")
    return rows[n]
