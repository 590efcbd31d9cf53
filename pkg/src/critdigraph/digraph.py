"""Loopless digraphs on vertices 0..n-1, stored as out/in-neighbour bitmasks.

Arc-bitmask order
-----------------
A digraph on n vertices corresponds to an integer with n(n-1) bits. Arcs
are numbered in colex order of their larger endpoint: for m = 1, 2, ...
the pairs (0, m), (m, 0), (1, m), (m, 1), ..., (m-1, m), (m, m-1) follow
the n = m block. Consequently the low m(m-1) bits of a mask are exactly
the subdigraph induced by {0, ..., m-1}, and enumeration at order n
extends enumeration at order n-1.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from functools import lru_cache

from .errors import PreconditionError


def arc_bit(u: int, v: int) -> int:
    """Bit position of arc (u, v) in the colex arc order."""
    m = u if u > v else v
    i = v if u > v else u
    return m * (m - 1) + 2 * i + (1 if u > v else 0)


@lru_cache(maxsize=None)
def arc_order(n: int) -> tuple[tuple[int, int], ...]:
    """All ordered pairs of distinct vertices, indexed by bit position."""
    pairs: list[tuple[int, int]] = []
    for m in range(1, n):
        for i in range(m):
            pairs.append((i, m))
            pairs.append((m, i))
    return tuple(pairs)


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Digraph:
    """Immutable loopless digraph.

    ``out[u]`` has bit v set iff (u, v) is an arc. ``labels[i]`` is the
    original name of vertex i when the digraph was cut out of a larger one;
    labels do not take part in equality.
    """

    __slots__ = ("n", "out", "inn", "labels", "_hash")

    def __init__(self, n: int, out: Iterable[int], labels: Iterable[int] | None = None):
        out = tuple(out)
        if len(out) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(out)}")
        full = (1 << n) - 1
        inn = [0] * n
        for u, row in enumerate(out):
            if row & ~full:
                raise ValueError(f"row {u} has endpoints outside [0, {n})")
            if row >> u & 1:
                raise ValueError(f"loop at vertex {u}")
            for v in bits(row):
                inn[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "out", out)
        object.__setattr__(self, "inn", tuple(inn))
        object.__setattr__(self, "labels", tuple(range(n)) if labels is None else tuple(labels))
        object.__setattr__(self, "_hash", hash((n, out)))

    def __setattr__(self, name, value):
        raise AttributeError("Digraph is immutable")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
        out = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n = {n}")
            out[u] |= 1 << v
        return cls(n, out)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> Digraph:
        out = [0] * n
        for b in bits(mask):
            u, v = arc_order(n)[b]
            out[u] |= 1 << v
        return cls(n, out)

    @classmethod
    def empty(cls, n: int) -> Digraph:
        return cls(n, [0] * n)

    def to_mask(self) -> int:
        mask = 0
        for u, row in enumerate(self.out):
            for v in bits(row):
                mask |= 1 << arc_bit(u, v)
        return mask

    @property
    def arcs(self) -> list[tuple[int, int]]:
        """Arcs in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.out[u])]

    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def is_digon(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1 and self.out[v] >> u & 1)

    def arc_count(self) -> int:
        return sum(row.bit_count() for row in self.out)

    def original(self, vertices: Iterable[int]) -> list[int]:
        """Map local vertex indices back to original labels, sorted."""
        return sorted(self.labels[v] for v in vertices)

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.out == other.out

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.arcs})"


def _check_subset(n: int, vertices: Iterable[int]) -> list[int]:
    members = sorted(set(vertices))
    for v in members:
        if not 0 <= v < n:
            raise PreconditionError(f"vertex {v} out of range for n = {n}")
    return members


def complement(G: Digraph) -> Digraph:
    full = (1 << G.n) - 1
    return Digraph(G.n, (full & ~row & ~(1 << u) for u, row in enumerate(G.out)), G.labels)


def induced_subdigraph(G: Digraph, S: Iterable[int]) -> Digraph:
    """G[S] relabelled to 0..|S|-1 in ascending order of S.

    The result's ``labels`` carry G's labels of the chosen vertices, so
    nested restrictions still report names from the outermost digraph.
    """
    members = _check_subset(G.n, S)
    index = {v: i for i, v in enumerate(members)}
    out = []
    for v in members:
        row = 0
        for w in bits(G.out[v]):
            if w in index:
                row |= 1 << index[w]
        out.append(row)
    return Digraph(len(members), out, (G.labels[v] for v in members))


def delete_vertices(G: Digraph, S: Iterable[int]) -> Digraph:
    """G - S, as an induced subdigraph on the remaining vertices."""
    drop = set(S)
    return induced_subdigraph(G, (v for v in range(G.n) if v not in drop))


def delete_arc(G: Digraph, u: int, v: int) -> Digraph:
    if not G.has_arc(u, v):
        raise PreconditionError(f"({u}, {v}) is not an arc")
    out = list(G.out)
    out[u] &= ~(1 << v)
    return Digraph(G.n, out, G.labels)


def disjoint_union(G1: Digraph, G2: Digraph) -> Digraph:
    shift = G1.n
    return Digraph(G1.n + G2.n, list(G1.out) + [row << shift for row in G2.out])


def subset_is_acyclic(out: tuple[int, ...], S: int) -> bool:
    """Whether the subdigraph induced by bitmask S has no directed cycle.

    Peels vertices with no in-arc from the remaining set until stuck.
    """
    remaining = S
    while remaining:
        progress = False
        for v in bits(remaining):
            # v has no in-neighbour left iff no remaining u has v in its row
            has_in = False
            for u in bits(remaining):
                if out[u] >> v & 1:
                    has_in = True
                    break
            if not has_in:
                remaining &= ~(1 << v)
                progress = True
        if not progress:
            return False
    return True


def is_acyclic(G: Digraph) -> bool:
    return subset_is_acyclic(G.out, (1 << G.n) - 1)


def closes_cycle(out: tuple[int, ...], S: int, v: int) -> bool:
    """Whether adding v to the acyclic vertex set S creates a directed cycle.

    Any new cycle passes through v, so it suffices to ask whether some
    out-neighbour of v in S reaches an in-neighbour of v inside G[S].
    """
    frontier = out[v] & S
    if not frontier:
        return False
    seen = frontier
    while frontier:
        nxt = 0
        for w in bits(frontier):
            if out[w] >> v & 1:
                return True
            nxt |= out[w]
        frontier = nxt & S & ~seen
        seen |= frontier
    return False


def weak_components(G: Digraph) -> list[list[int]]:
    """Components of the underlying undirected graph, each sorted, ordered by minimum."""
    und = [G.out[u] | G.inn[u] for u in range(G.n)]
    unseen = (1 << G.n) - 1
    components = []
    while unseen:
        start = unseen & -unseen
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for w in bits(frontier):
                nxt |= und[w]
            frontier = nxt & ~comp
            comp |= frontier
        unseen &= ~comp
        components.append(list(bits(comp)))
    return components


def is_weakly_connected(G: Digraph) -> bool:
    return len(weak_components(G)) == 1
