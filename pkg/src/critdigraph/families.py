"""Generators for named digraph families."""

from __future__ import annotations

from .digraph import Digraph


def bidirected_complete(k: int) -> Digraph:
    if k < 0:
        raise ValueError("k must be non-negative")
    full = (1 << k) - 1
    return Digraph(k, (full & ~(1 << u) for u in range(k)))


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise ValueError("a directed cycle needs at least 2 vertices")
    return Digraph.from_arcs(n, ((i, (i + 1) % n) for i in range(n)))


def bidirected_join(G1: Digraph, G2: Digraph) -> Digraph:
    """Disjoint union of G1 and G2 plus a digon between every u in G1 and v in G2."""
    n1, n2 = G1.n, G2.n
    first = (1 << n1) - 1
    second = ((1 << n2) - 1) << n1
    rows = [row | second for row in G1.out] + [(row << n1) | first for row in G2.out]
    return Digraph(n1 + n2, rows)


FAMILIES = ("bidirected_complete", "directed_cycle", "bidirected_join")


def gen_instance(family: str, k: int | None = None, n: int | None = None,
                 parts: tuple[Digraph, Digraph] | None = None) -> Digraph:
    if family == "bidirected_complete":
        if k is None:
            raise ValueError("bidirected_complete needs k")
        return bidirected_complete(k)
    if family == "directed_cycle":
        if n is None:
            raise ValueError("directed_cycle needs n")
        return directed_cycle(n)
    if family == "bidirected_join":
        if parts is None or len(parts) != 2:
            raise ValueError("bidirected_join needs two parts")
        return bidirected_join(*parts)
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
