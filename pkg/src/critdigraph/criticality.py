"""Vertex-critical and critical digraphs.

Both checks only look at single deletions. This is enough because chi is
monotone under taking subdigraphs: every proper induced subdigraph lies in
some G - v, and every proper subdigraph lies in some G - v or G - e. If all
of those have chi < k, so does everything below them.
"""

from __future__ import annotations

from .dichromatic import chi
from .digraph import Digraph, delete_arc, delete_vertices


def is_vertex_critical(G: Digraph, k: int | None = None) -> bool:
    """True iff chi(G - v) < chi(G) for every vertex v.

    A single vertex is 1-vertex-critical (the empty digraph has chi 0).
    """
    if G.n == 0:
        return False
    if k is None:
        k = chi(G)
    return all(chi(delete_vertices(G, [v])) < k for v in range(G.n))


def is_critical(G: Digraph, k: int | None = None) -> bool:
    """True iff every proper subdigraph of G has smaller dichromatic number."""
    if G.n == 0:
        return False
    if k is None:
        k = chi(G)
    if G.n > 1 and any(G.out[v] | G.inn[v] == 0 for v in range(G.n)):
        return False
    return all(chi(delete_arc(G, u, v)) < k for u, v in G.arcs)
