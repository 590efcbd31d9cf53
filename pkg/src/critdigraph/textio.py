"""Line-oriented text formats.

    # comment
    digraph 3
    0 1
    1 2
    2 0

``graph n`` in the header denotes an undirected graph; each line is then an
edge. '#' starts a comment anywhere on a line; blank lines are ignored.
"""

from __future__ import annotations

from collections.abc import Iterable

from .digraph import Digraph
from .errors import ArcFormatError, DuplicateArcError, HeaderError, LoopError, RangeError
from .matching import UGraph


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse(text: str, keyword: str) -> tuple[int, list[tuple[int, int]]]:
    lines = _lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise HeaderError(f"missing '{keyword} n' header") from None
    fields = header.split()
    if len(fields) != 2 or fields[0] != keyword:
        raise HeaderError(f"expected '{keyword} n', got {header!r}", lineno)
    try:
        n = int(fields[1])
    except ValueError:
        raise HeaderError(f"vertex count is not an integer: {fields[1]!r}", lineno) from None
    if n < 0:
        raise HeaderError(f"negative vertex count {n}", lineno)

    pairs = []
    seen = set()
    for lineno, line in lines:
        fields = line.split()
        if len(fields) != 2:
            raise ArcFormatError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ArcFormatError(f"non-integer endpoint in {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise RangeError(f"endpoint out of range [0, {n}) in {line!r}", lineno)
        if u == v:
            raise LoopError(f"loop at vertex {u}", lineno)
        key = (u, v) if keyword == "digraph" else (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateArcError(f"duplicate {'arc' if keyword == 'digraph' else 'edge'} {line!r}", lineno)
        seen.add(key)
        pairs.append((u, v))
    return n, pairs


def parse_digraph(text: str) -> Digraph:
    n, arcs = _parse(text, "digraph")
    return Digraph.from_arcs(n, arcs)


def parse_graph(text: str) -> UGraph:
    n, edges = _parse(text, "graph")
    return UGraph.from_edges(n, edges)


def serialize_digraph(G: Digraph) -> str:
    return "\n".join([f"digraph {G.n}"] + [f"{u} {v}" for u, v in G.arcs])


def serialize_graph(H: UGraph) -> str:
    return "\n".join([f"graph {H.n}"] + [f"{u} {v}" for u, v in H.edges])


def format_classes(classes: Iterable[Iterable[int]]) -> str:
    """One line per class, vertices ascending, classes by smallest element."""
    rows = sorted(sorted(c) for c in classes)
    return "\n".join(" ".join(map(str, row)) for row in rows)
