"""Exhaustive check of the disconnected-complement theorem on small orders.

For every digraph G on n <= n_max vertices: compute k = chi(G); if G is
k-vertex-critical and n <= 2k - 2, its complement must be weakly
disconnected (and, with ``full_trace``, the whole proof replay must pass).

Digraphs are handled as arc bitmasks in the colex order of ``digraph``.
Since the low bits of a mask are the digraph with its last vertex removed,
chi(G - (n-1)) is a table lookup one order down, and chi(G) is either that
value or one more; a single feasibility search decides which. The same
table answers chi(G - v) for the vertex-criticality test.

Work at each order is split into 2^m shards by fixing the m lowest arc
bits. Shards are independent and their results merge by summation and
concatenation, so the report does not depend on the number of workers.
"""

from __future__ import annotations

import itertools
import time
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .criticality import is_critical
from .dichromatic import _assign
from .digraph import Digraph, arc_bit, arc_order
from .errors import HypothesisError, PreconditionError, TheoremViolation
from .pipeline import run_proof_pipeline
from .textio import serialize_digraph

MAX_ORDER = 6
_CHUNK = 8


def arc_bits(n: int) -> int:
    return n * (n - 1)


# -- mask decoding ---------------------------------------------------------

@lru_cache(maxsize=None)
def _decode_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """Per 8-bit chunk of a mask, the rows it contributes, packed n bits per vertex."""
    order = arc_order(n)
    tables = []
    for start in range(0, arc_bits(n), _CHUNK):
        width = min(_CHUNK, arc_bits(n) - start)
        table = []
        for byte in range(1 << width):
            packed = 0
            for b in range(width):
                if byte >> b & 1:
                    u, v = order[start + b]
                    packed |= 1 << (n * u + v)
            table.append(packed)
        tables.append(tuple(table))
    return tuple(tables)


def decode(n: int, mask: int) -> tuple[int, ...]:
    """Out-neighbour rows of the digraph with the given arc mask."""
    packed = 0
    for i, table in enumerate(_decode_tables(n)):
        packed |= table[mask >> (_CHUNK * i) & 0xFF]
    full = (1 << n) - 1
    return tuple(packed >> (n * u) & full for u in range(n))


@lru_cache(maxsize=None)
def _deletion_tables(n: int, v: int) -> tuple[tuple[int, ...], ...]:
    """Chunk tables mapping an order-n mask to the order-(n-1) mask of G - v."""
    order = arc_order(n)

    def shift(x: int) -> int:
        return x - 1 if x > v else x

    tables = []
    for start in range(0, arc_bits(n), _CHUNK):
        width = min(_CHUNK, arc_bits(n) - start)
        table = []
        for byte in range(1 << width):
            sub = 0
            for b in range(width):
                if byte >> b & 1:
                    x, y = order[start + b]
                    if v not in (x, y):
                        sub |= 1 << arc_bit(shift(x), shift(y))
            table.append(sub)
        tables.append(tuple(table))
    return tuple(tables)


def delete_vertex_mask(n: int, mask: int, v: int) -> int:
    sub = 0
    for i, table in enumerate(_deletion_tables(n, v)):
        sub |= table[mask >> (_CHUNK * i) & 0xFF]
    return sub


# -- canonical forms -------------------------------------------------------

def permute_mask(n: int, mask: int, perm: tuple[int, ...]) -> int:
    """Mask of the digraph with vertex i renamed perm[i]."""
    order = arc_order(n)
    out = 0
    b = 0
    while mask:
        if mask & 1:
            u, v = order[b]
            out |= 1 << arc_bit(perm[u], perm[v])
        mask >>= 1
        b += 1
    return out


def canonical_mask(n: int, mask: int) -> int:
    """Smallest mask over all vertex relabellings."""
    return min(permute_mask(n, mask, p) for p in itertools.permutations(range(n)))


def _canonical_array(n: int, masks: np.ndarray) -> np.ndarray:
    order = arc_order(n)
    nbits = arc_bits(n)
    best = masks.copy()
    for perm in itertools.permutations(range(n)):
        image = np.zeros_like(masks)
        for start in range(0, nbits, _CHUNK):
            width = min(_CHUNK, nbits - start)
            table = np.zeros(1 << width, dtype=np.int64)
            for b in range(width):
                u, v = order[start + b]
                bit = np.int64(1) << np.int64(arc_bit(perm[u], perm[v]))
                idx = np.arange(1 << width)
                table[(idx >> b) & 1 == 1] |= bit
            image |= table[(masks >> start) & ((1 << width) - 1)]
        np.minimum(best, image, out=best)
    return best


@lru_cache(maxsize=None)
def canonical_representatives(n: int) -> tuple[int, ...]:
    """Canonical masks of all isomorphism classes of digraphs on n vertices, ascending.

    Every digraph is isomorphic to one whose first n-1 vertices induce a
    representative at order n-1, so candidates are those representatives
    extended by every pattern of arcs to and from the new vertex.
    """
    if n < 0 or n > MAX_ORDER:
        raise PreconditionError(f"order {n} outside [0, {MAX_ORDER}]")
    if n <= 1:
        return (0,)
    prev = np.array(canonical_representatives(n - 1), dtype=np.int64)
    ext = np.arange(1 << (2 * (n - 1)), dtype=np.int64) << np.int64(arc_bits(n - 1))
    reps: set[int] = set()
    # bounded batches keep memory flat at n = 6
    step = max(1, (1 << 20) // len(ext))
    for i in range(0, len(prev), step):
        cand = (prev[i:i + step, None] | ext[None, :]).ravel()
        reps.update(np.unique(_canonical_array(n, cand)).tolist())
    return tuple(sorted(reps))


def iter_masks(n: int, dedup: bool = False, shard: int = 0, shard_bits: int = 0) -> Iterator[int]:
    """Masks at order n whose lowest ``shard_bits`` arc bits equal ``shard``."""
    if n < 0 or n > MAX_ORDER:
        raise PreconditionError(f"order {n} outside [0, {MAX_ORDER}]")
    m = min(shard_bits, arc_bits(n))
    if shard >= 1 << m:
        return
    if dedup:
        low = (1 << m) - 1
        yield from (x for x in canonical_representatives(n) if x & low == shard)
    else:
        yield from range(shard, 1 << arc_bits(n), 1 << m)


def enumerate_digraphs(n: int, dedup: bool = False) -> Iterator[Digraph]:
    """All labelled digraphs on n vertices in mask order, or one per isomorphism class."""
    for mask in iter_masks(n, dedup):
        yield Digraph(n, decode(n, mask))


# -- chi lookup ------------------------------------------------------------

class ChiTable:
    """Memoised chi by (order, mask), filled on demand.

    Orders up to 5 use a flat byte table (255 = unknown); order 6 a dict.
    """

    def __init__(self):
        self._tables: dict[int, bytearray | dict] = {}

    def _table(self, n: int):
        tab = self._tables.get(n)
        if tab is None:
            tab = bytearray(b"\xff") * (1 << arc_bits(n)) if n <= 5 else {}
            self._tables[n] = tab
        return tab

    def get(self, n: int, mask: int, out: tuple[int, ...] | None = None) -> int:
        tab = self._table(n)
        k = tab.get(mask, 255) if isinstance(tab, dict) else tab[mask]
        if k == 255:
            k = self._compute(n, mask, out)
            tab[mask] = k
        return k

    def _compute(self, n: int, mask: int, out) -> int:
        if n == 0:
            return 0
        lower = self.get(n - 1, mask & ((1 << arc_bits(n - 1)) - 1))
        if out is None:
            out = decode(n, mask)
        return lower if _assign(out, n, lower) is not None else lower + 1


_CHI = ChiTable()


# -- report ----------------------------------------------------------------

@dataclass
class OrderStats:
    n: int
    scanned: int = 0
    vertex_critical: int = 0
    critical: int = 0
    in_bound: int = 0
    in_bound_critical: int = 0
    verified: int = 0
    skipped_by_prefilter: int = 0
    vertex_critical_by_k: dict[int, int] = field(default_factory=dict)
    seconds: float = 0.0

    def merge(self, other: OrderStats) -> None:
        for name in ("scanned", "vertex_critical", "critical", "in_bound",
                     "in_bound_critical", "verified", "skipped_by_prefilter"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        for k, c in other.vertex_critical_by_k.items():
            self.vertex_critical_by_k[k] = self.vertex_critical_by_k.get(k, 0) + c

    def as_dict(self, timing: bool = False) -> dict:
        d = {
            "n": self.n,
            "scanned": self.scanned,
            "vertex_critical": self.vertex_critical,
            "critical": self.critical,
            "in_bound": self.in_bound,
            "in_bound_critical": self.in_bound_critical,
            "verified": self.verified,
            "skipped_by_prefilter": self.skipped_by_prefilter,
            "vertex_critical_by_k": {str(k): c for k, c in sorted(self.vertex_critical_by_k.items())},
        }
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


@dataclass
class VerificationReport:
    n_max: int
    dedup: bool
    full_trace: bool
    census: bool
    orders: list[OrderStats] = field(default_factory=list)
    instances: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def verdict(self) -> str:
        return "FAIL" if self.counterexamples else "PASS"

    def as_dict(self, timing: bool = False) -> dict:
        d = {
            "n_max": self.n_max,
            "dedup": self.dedup,
            "full_trace": self.full_trace,
            "census": self.census,
            "verdict": self.verdict,
            "orders": [o.as_dict(timing) for o in self.orders],
            "instances": self.instances,
            "counterexamples": self.counterexamples,
        }
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


@dataclass
class _ShardResult:
    stats: OrderStats
    instances: list[dict]
    counterexamples: list[dict]


def _complement_components(n: int, out: tuple[int, ...]) -> int:
    """Weak components of the complement: u, v are adjacent there unless they form a digon."""
    full = (1 << n) - 1
    inn = [0] * n
    for u, row in enumerate(out):
        r = row
        while r:
            low = r & -r
            inn[low.bit_length() - 1] |= 1 << u
            r ^= low
    nbr = [full & ~(out[u] & inn[u]) & ~(1 << u) for u in range(n)]
    unseen = full
    count = 0
    while unseen:
        comp = frontier = unseen & -unseen
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= nbr[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~comp
            comp |= frontier
        unseen &= ~comp
        count += 1
    return count


def _trace_summary(trace) -> dict:
    dec = trace.dec
    return {
        "passed": trace.passed,
        "singletons": sum(1 for c in trace.P.classes if len(c) == 1),
        "U": len(trace.U),
        "W": len(trace.W),
        "C": len(dec.C),
        "D_sizes": [len(comp) for comp in dec.components],
        "A": len(dec.A),
        "c": dec.c,
        "nu": trace.nu,
        "chi_W": trace.chi_W,
    }


def scan_shard(n: int, shard: int, shard_bits: int, dedup: bool = False,
               full_trace: bool = False, census: bool = True) -> _ShardResult:
    stats = OrderStats(n)
    instances: list[dict] = []
    counterexamples: list[dict] = []
    k_min = (n + 3) // 2  # smallest k with n <= 2k - 2
    low_bits = arc_bits(n - 1) if n else 0
    low_mask = (1 << low_bits) - 1
    chi_table = _CHI

    for mask in iter_masks(n, dedup, shard, shard_bits):
        stats.scanned += 1
        if n == 0:
            continue
        out = decode(n, mask)
        if not census:
            # only connected complements in the bound can refute the theorem
            lower = chi_table.get(n - 1, mask & low_mask)
            if lower + 1 < k_min or _complement_components(n, out) >= 2:
                stats.skipped_by_prefilter += 1
                continue
        k = chi_table.get(n, mask, out)
        # vertex-critical iff chi(G - v) = k - 1 for every v; v = n - 1 is the low-bit mask
        if chi_table.get(n - 1, mask & low_mask) != k - 1:
            continue
        if any(chi_table.get(n - 1, delete_vertex_mask(n, mask, v)) != k - 1 for v in range(n - 1)):
            continue
        stats.vertex_critical += 1
        stats.vertex_critical_by_k[k] = stats.vertex_critical_by_k.get(k, 0) + 1
        G = Digraph(n, out)
        critical = is_critical(G, k)
        stats.critical += critical
        if n > 2 * k - 2:
            continue
        stats.in_bound += 1
        stats.in_bound_critical += critical
        components = _complement_components(n, out)
        entry = {"n": n, "mask": mask, "k": k, "critical": critical,
                 "complement_components": components}
        problem = None if components >= 2 else "complement is connected"
        if full_trace:
            try:
                trace = run_proof_pipeline(G)
                entry["trace"] = _trace_summary(trace)
            except TheoremViolation as exc:
                entry["trace"] = _trace_summary(exc.trace)
                problem = f"proof step {exc.step} failed"
            except HypothesisError as exc:
                problem = f"pipeline disagrees on hypotheses: {exc}"
        instances.append(entry)
        if problem is None:
            stats.verified += 1
        else:
            counterexamples.append({"n": n, "mask": mask, "k": k, "reason": problem,
                                    "digraph": serialize_digraph(G)})
    return _ShardResult(stats, instances, counterexamples)


def _scan_args(args):
    return scan_shard(*args)


def verify_theorem_up_to(n_max: int, dedup: bool = False, jobs: int = 1, full_trace: bool = False,
                         census: bool = True, shard_bits: int = 4, progress=None) -> VerificationReport:
    """Scan every order 0..n_max and collect a report; the verdict is PASS iff
    no counterexample turned up."""
    if not 0 <= n_max <= MAX_ORDER:
        raise PreconditionError(f"n_max must lie in [0, {MAX_ORDER}]")
    report = VerificationReport(n_max, dedup, full_trace, census)
    start = time.perf_counter()
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for n in range(n_max + 1):
            t0 = time.perf_counter()
            m = min(shard_bits, arc_bits(n))
            tasks = [(n, s, m, dedup, full_trace, census) for s in range(1 << m)]
            results = pool.map(_scan_args, tasks) if pool else map(_scan_args, tasks)
            stats = OrderStats(n)
            instances, bad = [], []
            for res in results:
                stats.merge(res.stats)
                instances.extend(res.instances)
                bad.extend(res.counterexamples)
            stats.seconds = time.perf_counter() - t0
            report.orders.append(stats)
            report.instances.extend(sorted(instances, key=lambda e: e["mask"]))
            report.counterexamples.extend(sorted(bad, key=lambda e: e["mask"]))
            if progress:
                progress(stats)
    finally:
        if pool:
            pool.shutdown()
    report.seconds = time.perf_counter() - start
    return report

