"""Acyclic colourings and the exact dichromatic number.

Search is plain backtracking over vertices 0, 1, ..., n-1. Each class is a
vertex bitmask that is kept acyclic at all times: inserting a vertex only
needs a reachability check inside the class (see ``closes_cycle``). Class
slots are interchangeable, so vertex i may only open the first unused slot;
this removes the t! relabellings of every partition. Because slots are tried
in ascending order, the first colouring found is the lexicographically
smallest class assignment, which makes witnesses deterministic.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .digraph import Digraph, closes_cycle, induced_subdigraph, is_acyclic
from .errors import InvalidMatchingError, PreconditionError


@dataclass(frozen=True)
class Colouring:
    """A partition of ``ground`` into classes.

    Classes are stored sorted internally and ordered by smallest element, so
    equal partitions compare equal. Acyclicity is a property relative to a
    digraph and is checked by ``is_valid_colouring``, not here.
    """

    classes: tuple[tuple[int, ...], ...]
    ground: frozenset[int]

    @classmethod
    def of(cls, classes: Iterable[Iterable[int]], ground: Iterable[int] | None = None) -> Colouring:
        norm = sorted(tuple(sorted(c)) for c in classes)
        if any(not c for c in norm):
            raise ValueError("colour classes must be non-empty")
        flat = [v for c in norm for v in c]
        if len(flat) != len(set(flat)):
            raise ValueError("colour classes overlap")
        ground = frozenset(flat) if ground is None else frozenset(ground)
        if set(flat) != ground:
            raise ValueError("colour classes do not cover the ground set")
        return cls(tuple(norm), ground)

    def __len__(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def union(self, other: Colouring) -> Colouring:
        if self.ground & other.ground:
            raise ValueError("ground sets overlap")
        return Colouring.of(self.classes + other.classes, self.ground | other.ground)

    def as_lists(self) -> list[list[int]]:
        return [list(c) for c in self.classes]


def is_valid_colouring(G: Digraph, P: Colouring) -> bool:
    if P.ground != frozenset(range(G.n)):
        return False
    return all(is_acyclic(induced_subdigraph(G, c)) for c in P.classes)


def singleton_count(P: Colouring) -> int:
    return sum(1 for c in P.classes if len(c) == 1)


def restrict(P: Colouring, S: Iterable[int]) -> Colouring:
    S = frozenset(S)
    if not S <= P.ground:
        raise PreconditionError("restriction set is not inside the ground set")
    return Colouring.of((x for c in P.classes if (x := [v for v in c if v in S])), S)


def _assign(out: tuple[int, ...], n: int, t: int) -> list[int] | None:
    """Lexicographically first assignment of 0..n-1 to at most t acyclic classes."""
    if n == 0:
        return []
    classes = [0] * t
    slot = [0] * n

    def place(i: int, opened: int) -> bool:
        if i == n:
            return True
        for j in range(min(opened + 1, t)):
            if not closes_cycle(out, classes[j], i):
                classes[j] |= 1 << i
                slot[i] = j
                if place(i + 1, max(opened, j + 1)):
                    return True
                classes[j] &= ~(1 << i)
        return False

    return slot if place(0, 0) else None


def colourable(G: Digraph, t: int) -> bool:
    """Whether G has an acyclic colouring with at most t classes."""
    if t < 0:
        return False
    return _assign(G.out, G.n, t) is not None


def _to_colouring(G: Digraph, slot: list[int]) -> Colouring:
    groups: dict[int, list[int]] = {}
    for v, j in enumerate(slot):
        groups.setdefault(j, []).append(v)
    return Colouring.of(groups.values(), range(G.n))


def chi_witness(G: Digraph, lower: int = 1) -> tuple[int, Colouring]:
    """Dichromatic number of G with the first optimal colouring found.

    Iterative deepening on the class count, starting at ``lower`` (which
    must be a valid lower bound). The 0-vertex digraph has chi = 0.
    """
    if G.n == 0:
        return 0, Colouring.of([], [])
    for t in range(max(lower, 1), G.n + 1):
        slot = _assign(G.out, G.n, t)
        if slot is not None:
            return t, _to_colouring(G, slot)
    raise AssertionError("singletons always form a colouring")


def chi(G: Digraph) -> int:
    return chi_witness(G)[0]


def extreme_colouring(G: Digraph, k: int | None = None) -> Colouring:
    """An optimal colouring with the fewest singleton classes.

    Branch and bound over partitions into exactly k = chi(G) classes. At a
    partial assignment with s classes of size one, r vertices left and u
    slots still unopened, at least u of the remaining vertices are spent on
    opening slots, so at most r - u existing singletons can still grow;
    s - (r - u) is therefore a lower bound on the final singleton count.
    Ties go to the lexicographically first class assignment.
    """
    n, out = G.n, G.out
    if n == 0:
        return Colouring.of([], [])
    if k is None:
        k = chi(G)
    classes = [0] * k
    size = [0] * k
    slot = [0] * n
    best: list = [n + 1, None]

    def place(i: int, opened: int, singles: int) -> None:
        remaining = n - i
        unopened = k - opened
        if unopened > remaining:
            return
        if singles - max(0, remaining - unopened) >= best[0]:
            return
        if i == n:
            best[0] = singles
            best[1] = slot.copy()
            return
        for j in range(min(opened + 1, k)):
            if closes_cycle(out, classes[j], i):
                continue
            delta = 1 if size[j] == 0 else (-1 if size[j] == 1 else 0)
            classes[j] |= 1 << i
            size[j] += 1
            slot[i] = j
            place(i + 1, max(opened, j + 1), singles + delta)
            classes[j] &= ~(1 << i)
            size[j] -= 1

    place(0, 0, 0)
    if best[1] is None:
        raise PreconditionError(f"G has no colouring with exactly {k} classes")
    return _to_colouring(G, best[1])


def matching_to_colouring(G: Digraph, U: Iterable[int], M: Iterable[tuple[int, int]]) -> Colouring:
    """Colouring of G[U]: one class per matched pair, singletons elsewhere.

    Pairs are given in G's vertex names. A pair spanning a digon cannot be a
    colour class, which means the auxiliary graph was built wrongly.
    """
    U = frozenset(U)
    classes = []
    used: set[int] = set()
    for u, v in M:
        if u not in U or v not in U:
            raise InvalidMatchingError(f"pair ({u}, {v}) leaves the vertex set U")
        if u in used or v in used:
            raise InvalidMatchingError(f"pair ({u}, {v}) shares a vertex with another pair")
        if G.is_digon(u, v):
            raise InvalidMatchingError(f"pair ({u}, {v}) spans a digon")
        used.update((u, v))
        classes.append((u, v))
    classes.extend((v,) for v in sorted(U - used))
    return Colouring.of(classes, U)
