"""Plain-text readers for graphs, measures, cut families and maps.

All formats are UTF-8, one record per line; ``#`` starts a comment and
blank lines are skipped.  Numbers are decimals or ``p/q`` fractions.
"""

from __future__ import annotations

from collections.abc import Iterator
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .cuts import CutFamily, mask_of
from .graph import WeightedGraph
from .measures import Measure

PathLike = Union[str, Path]


class ParseError(ValueError):
    def __init__(self, message: str, source: str = "<text>", line: int = 0):
        where = f"{source}:{line}: " if line else f"{source}: "
        super().__init__(where + message)
        self.source = source
        self.line = line


def _records(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def parse_number(token: str, source: str = "<text>", line: int = 0) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a number: {token!r}", source, line) from None


def _read(path: PathLike) -> tuple[str, str]:
    p = Path(path)
    return p.read_text(encoding="utf-8"), str(p)


def parse_graph(text: str, source: str = "<text>") -> WeightedGraph:
    edges = []
    for lineno, fields in _records(text):
        if len(fields) != 3:
            raise ParseError("expected 'LABEL LABEL WEIGHT'", source, lineno)
        edges.append((fields[0], fields[1], parse_number(fields[2], source, lineno)))
    if not edges:
        raise ParseError("no edges", source)
    return WeightedGraph.from_edges(edges)


def read_graph(path: PathLike) -> WeightedGraph:
    return parse_graph(*_read(path))


def parse_measure(text: str, labels: tuple[str, ...], source: str = "<text>") -> Measure:
    """Dense measure over ``labels``; omitted vertices carry mass 0."""
    index = {lab: i for i, lab in enumerate(labels)}
    out = [Fraction(0)] * len(labels)
    for lineno, fields in _records(text):
        if len(fields) != 2:
            raise ParseError("expected 'LABEL MASS'", source, lineno)
        if fields[0] not in index:
            raise ParseError(f"unknown vertex {fields[0]!r}", source, lineno)
        out[index[fields[0]]] += parse_number(fields[1], source, lineno)
    return tuple(out)


def read_measure(path: PathLike, labels: tuple[str, ...]) -> Measure:
    text, source = _read(path)
    return parse_measure(text, labels, source)


def parse_cuts(text: str, labels: Optional[tuple[str, ...]] = None,
               source: str = "<text>") -> tuple[CutFamily, tuple[str, ...]]:
    """Cut family from lines ``LAMBDA : LABEL LABEL ...``.

    Without ``labels`` the vertex set is every label seen, in order of
    first appearance.
    """
    rows = []
    seen: dict[str, int] = {} if labels is None else {lab: i for i, lab in enumerate(labels)}
    for lineno, fields in _records(text):
        if len(fields) < 3 or fields[1] != ":":
            raise ParseError("expected 'LAMBDA : LABEL ...'", source, lineno)
        lam = parse_number(fields[0], source, lineno)
        for lab in fields[2:]:
            if lab not in seen:
                if labels is not None:
                    raise ParseError(f"unknown vertex {lab!r}", source, lineno)
                seen[lab] = len(seen)
        rows.append((lineno, lam, [seen[lab] for lab in fields[2:]]))
    names = tuple(seen)
    entries = []
    for lineno, lam, members in rows:
        entry = (mask_of(members), lam)
        try:
            CutFamily(len(names), (entry,))
        except ValueError as exc:
            raise ParseError(str(exc), source, lineno) from None
        entries.append(entry)
    return CutFamily(len(names), tuple(entries)), names


def read_cuts(path: PathLike, labels: Optional[tuple[str, ...]] = None
              ) -> tuple[CutFamily, tuple[str, ...]]:
    text, source = _read(path)
    return parse_cuts(text, labels, source)


def parse_map(text: str, source: str = "<text>") -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, fields in _records(text):
        if len(fields) != 2:
            raise ParseError("expected 'SOURCE_LABEL TARGET_LABEL'", source, lineno)
        if fields[0] in out:
            raise ParseError(f"vertex {fields[0]!r} mapped twice", source, lineno)
        out[fields[0]] = fields[1]
    return out


def read_map(path: PathLike) -> dict[str, str]:
    return parse_map(*_read(path))


def format_graph(g: WeightedGraph) -> str:
    return "".join(f"{g.labels[i]} {g.labels[j]} {w}\n" for i, j, w in g.edges)


def format_measure(labels: tuple[str, ...], values: Measure) -> str:
    return "".join(f"{lab} {v}\n" for lab, v in zip(labels, values) if v)
