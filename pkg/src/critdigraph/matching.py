"""Maximum-cardinality matching and the Gallai-Edmonds decomposition.

The matching engine is Edmonds' blossom algorithm in its plain O(n^3)
cardinality form. It is deterministic: free vertices are tried as roots in
ascending order, and neighbours are scanned in ascending order.

The decomposition follows the textbook definition literally. D is found by
n + 1 matching computations (v is in D iff deleting v leaves the matching
number unchanged), which is trivially correct and cheap at the sizes this
package is meant for.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field

from .digraph import bits
from .errors import PreconditionError, StructureError

Matching = frozenset  # of sorted (u, v) pairs with u < v


class UGraph:
    """Immutable simple undirected graph on 0..n-1 with bitmask rows.

    ``labels`` names each vertex in some enclosing structure (the auxiliary
    graph lives on a subset of a digraph's vertices); labels do not take
    part in equality.
    """

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, adj: Iterable[int], labels: Iterable[int] | None = None):
        adj = tuple(adj)
        if len(adj) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(adj)}")
        for u, row in enumerate(adj):
            if row >> u & 1:
                raise ValueError(f"loop at vertex {u}")
            if row >> n:
                raise ValueError(f"row {u} has endpoints outside [0, {n})")
            for v in bits(row):
                if not adj[v] >> u & 1:
                    raise ValueError(f"adjacency not symmetric at {{{u}, {v}}}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "labels", tuple(range(n)) if labels is None else tuple(labels))

    def __setattr__(self, name, value):
        raise AttributeError("UGraph is immutable")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> UGraph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad edge ({u}, {v}) for n = {n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, labels)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def subgraph(self, S: Iterable[int]) -> UGraph:
        """H[S], relabelled to 0..|S|-1 in ascending order, keeping labels."""
        members = sorted(set(S))
        index = {v: i for i, v in enumerate(members)}
        adj = []
        for v in members:
            row = 0
            for w in bits(self.adj[v]):
                if w in index:
                    row |= 1 << index[w]
            adj.append(row)
        return UGraph(len(members), adj, (self.labels[v] for v in members))

    def components(self) -> list[list[int]]:
        unseen = (1 << self.n) - 1
        out = []
        while unseen:
            comp = frontier = unseen & -unseen
            while frontier:
                nxt = 0
                for w in bits(frontier):
                    nxt |= self.adj[w]
                frontier = nxt & ~comp
                comp |= frontier
            unseen &= ~comp
            out.append(list(bits(comp)))
        return out

    def __eq__(self, other):
        if not isinstance(other, UGraph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"UGraph(n={self.n}, edges={self.edges})"


def is_matching(H: UGraph, M: Iterable[tuple[int, int]]) -> bool:
    used = 0
    for u, v in M:
        if not H.has_edge(u, v) or used >> u & 1 or used >> v & 1:
            return False
        used |= 1 << u | 1 << v
    return True


def covered(M: Iterable[tuple[int, int]]) -> set[int]:
    return {x for e in M for x in e}


def _blossom_mate(n: int, adj: tuple[int, ...], forbidden: int = 0) -> list[int]:
    """Edmonds' algorithm; returns mate[v] (-1 if exposed).

    Vertices in the ``forbidden`` bitmask are treated as deleted.
    """
    nbrs = [[w for w in bits(adj[v] & ~forbidden)] if not forbidden >> v & 1 else []
            for v in range(n)]
    mate = [-1] * n

    def find_path(root: int) -> bool:
        # parent links of the alternating forest and blossom bases
        parent = [-1] * n
        base = list(range(n))
        in_tree = [False] * n
        in_tree[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            marked = [False] * n
            while True:
                a = base[a]
                marked[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if marked[b]:
                    return b
                b = parent[mate[b]]

        def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
            while base[v] != b:
                in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while queue:
            v = queue.popleft()
            for w in nbrs[v]:
                if base[v] == base[w] or mate[v] == w:
                    continue
                if w == root or (mate[w] != -1 and parent[mate[w]] != -1):
                    # odd cycle: contract the blossom
                    b = lca(v, w)
                    in_blossom = [False] * n
                    mark_path(v, b, w, in_blossom)
                    mark_path(w, b, v, in_blossom)
                    for x in range(n):
                        if in_blossom[base[x]]:
                            base[x] = b
                            if not in_tree[x]:
                                in_tree[x] = True
                                queue.append(x)
                elif parent[w] == -1:
                    parent[w] = v
                    if mate[w] == -1:
                        # augment along the alternating path ending at w
                        while w != -1:
                            pv = parent[w]
                            nxt = mate[pv]
                            mate[w] = pv
                            mate[pv] = w
                            w = nxt
                        return True
                    in_tree[mate[w]] = True
                    queue.append(mate[w])
        return False

    for root in range(n):
        if mate[root] == -1 and nbrs[root]:
            find_path(root)
    return mate


def _pairs(mate: list[int]) -> Matching:
    return frozenset((v, w) for v, w in enumerate(mate) if v < w)


def max_matching(H: UGraph) -> Matching:
    """A maximum matching of H as a frozenset of (u, v) pairs with u < v."""
    return _pairs(_blossom_mate(H.n, H.adj))


def matching_number(H: UGraph, forbidden: int = 0) -> int:
    return sum(1 for v, w in enumerate(_blossom_mate(H.n, H.adj, forbidden)) if v < w)


def has_perfect_matching(H: UGraph) -> bool:
    return H.n % 2 == 0 and 2 * matching_number(H) == H.n


@dataclass(frozen=True)
class GEDecomposition:
    """Gallai-Edmonds sets of a graph, as sorted vertex lists (local indices).

    ``components`` are the vertex sets of the components of H[D].
    """

    D: tuple[int, ...]
    A: tuple[int, ...]
    C: tuple[int, ...]
    components: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def c(self) -> int:
        return len(self.components)


def ge_decompose(H: UGraph) -> GEDecomposition:
    nu = matching_number(H)
    D = [v for v in range(H.n) if matching_number(H, 1 << v) == nu]
    dmask = sum(1 << v for v in D)
    A = [v for v in range(H.n) if not dmask >> v & 1 and H.adj[v] & dmask]
    amask = sum(1 << v for v in A)
    C = [v for v in range(H.n) if not (dmask | amask) >> v & 1]
    sub = H.subgraph(D)
    components = tuple(tuple(D[i] for i in comp) for comp in sub.components())
    return GEDecomposition(tuple(D), tuple(A), tuple(C), components)


def max_matching_missing(H: UGraph, u: int) -> Matching:
    """A maximum matching of H that leaves u exposed.

    Computed as a maximum matching of H - u; this has size nu(H) exactly
    when u lies in D(H), which is checked.
    """
    if not 0 <= u < H.n:
        raise PreconditionError(f"vertex {u} out of range")
    mate = _blossom_mate(H.n, H.adj, 1 << u)
    M = _pairs(mate)
    if len(M) != matching_number(H):
        raise PreconditionError(f"vertex {u} is covered by every maximum matching (not in D)")
    return M


def is_factor_critical(H: UGraph) -> bool:
    if H.n % 2 == 0:
        return False
    return all(2 * matching_number(H, 1 << v) == H.n - 1 for v in range(H.n))


@dataclass
class GECertificate:
    perfect_on_C: bool
    factor_critical_components: list[bool]
    matching_number: int
    formula_value: int | None
    size_formula: bool

    @property
    def passed(self) -> bool:
        return self.perfect_on_C and all(self.factor_critical_components) and self.size_formula

    def as_dict(self) -> dict:
        return {
            "perfect_matching_on_C": self.perfect_on_C,
            "factor_critical_components": self.factor_critical_components,
            "matching_number": self.matching_number,
            "formula_value": self.formula_value,
            "size_formula": self.size_formula,
            "passed": self.passed,
        }


def verify_ge_structure(H: UGraph, dec: GEDecomposition) -> GECertificate:
    """Check the quoted Gallai-Edmonds conclusions for ``dec`` on H.

    (i) H[C] has a perfect matching; (ii) every component of H[D] is
    factor-critical, hence has a near-perfect matching; (iii) the matching
    number equals (|V| + |A| - c) / 2.

    Raises StructureError if ``dec`` is not even a partition of V(H) into
    D, A, C with components partitioning D.
    """
    parts = list(dec.D) + list(dec.A) + list(dec.C)
    if sorted(parts) != list(range(H.n)):
        raise StructureError("D, A, C do not partition the vertex set")
    if sorted(v for comp in dec.components for v in comp) != sorted(dec.D):
        raise StructureError("components do not partition D")
    for comp in dec.components:
        if len(H.subgraph(comp).components()) != 1:
            raise StructureError(f"component {list(comp)} is not connected in H[D]")
    perfect = has_perfect_matching(H.subgraph(dec.C))
    fc = [is_factor_critical(H.subgraph(comp)) for comp in dec.components]
    nu = matching_number(H)
    twice = H.n + len(dec.A) - dec.c
    formula = twice // 2 if twice % 2 == 0 else None
    return GECertificate(perfect, fc, nu, formula, formula == nu)
