"""Step-by-step replay of the disconnected-complement argument on one digraph.

Given a k-vertex-critical digraph G on at most 2k - 2 vertices, the argument
runs as follows, and every quantity it mentions is recomputed here with
independent solver calls:

  a. take an extreme colouring P (optimal, fewest singletons); it has >= 2
     singleton classes;
  b. U = vertices in classes of size 1 or 2, W = the rest, and H is the
     graph on U joining u, v unless both (u, v) and (v, u) are arcs;
     decompose H into D, A, C with components D_1..D_c of H[D];
  c. for u in D, a maximum matching M_u missing u turns into a colouring of
     G[U], and P_u = P[W] + that colouring is an extreme colouring of G
     with {u} as a class;
  d. chi(G[C]) = |C|/2 and chi(G[D_i]) = (|D_i| + 1)/2;
  e. c >= 2;
  f. no arc of the complement joins D_i to V - (A + D_i);
  g. chi(G - A) = chi(G[W]) + (|C| + |D| + c)/2;
  h. chi(G) = chi(G[W]) + chi(G[U]) = chi(G[W]) + (|C| + |D| + c)/2;
  i. so chi(G - A) = chi(G), and vertex-criticality forces A to be empty;
  j. the complement of G has at least two weak components.

Halved quantities are compared after doubling, so every identity is checked
in exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .criticality import is_vertex_critical
from .dichromatic import (
    Colouring,
    chi,
    extreme_colouring,
    is_valid_colouring,
    matching_to_colouring,
    restrict,
    singleton_count,
)
from .digraph import Digraph, complement, delete_vertices, induced_subdigraph, weak_components
from .errors import HypothesisError, PreconditionError, TheoremViolation
from .matching import (
    GEDecomposition,
    UGraph,
    ge_decompose,
    matching_number,
    max_matching_missing,
    verify_ge_structure,
)


def build_auxiliary_graph(G: Digraph, P: Colouring) -> tuple[list[int], list[int], UGraph]:
    """Split V into U (classes of size 1 or 2) and W, and build H on U.

    H is returned on local vertices 0..|U|-1 with ``labels`` = U, so that
    uv is an edge iff u, v do not form a digon of G.
    """
    if not is_valid_colouring(G, P):
        raise PreconditionError("P is not a valid colouring of G")
    U = sorted(v for c in P.classes if len(c) <= 2 for v in c)
    W = sorted(v for c in P.classes if len(c) >= 3 for v in c)
    edges = [(i, j) for i, u in enumerate(U) for j, v in enumerate(U)
             if i < j and not G.is_digon(u, v)]
    return U, W, UGraph.from_edges(len(U), edges, U)


def find_improving_exchange(G: Digraph, P: Colouring) -> tuple[int, int, str] | None:
    """First exchange that would contradict extremality (or optimality) of P.

    For a singleton {u} and a vertex v in a class of size >= 3, a missing
    arc between u and v lets {u, v} become a class, lowering the singleton
    count. For two singletons, a missing arc lets them merge, lowering the
    number of classes. Returns (u, v, kind) or None.
    """
    singles = [c[0] for c in P.classes if len(c) == 1]
    large = [v for c in P.classes if len(c) >= 3 for v in c]
    for u in singles:
        for v in singles:
            if u < v and not G.is_digon(u, v):
                return u, v, "merge_singletons"
        for v in large:
            if not G.is_digon(u, v):
                return u, v, "pair_with_large_class"
    return None


def exchange_extremality_check(G: Digraph, P: Colouring, k: int | None = None) -> bool:
    if not is_valid_colouring(G, P):
        raise PreconditionError("P is not a valid colouring of G")
    if k is None:
        k = chi(G)
    if len(P) != k:
        raise PreconditionError(f"P has {len(P)} classes but chi(G) = {k}")
    return find_improving_exchange(G, P) is None


@dataclass
class Step:
    name: str
    claim: str
    passed: bool
    values: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"step": self.name, "claim": self.claim, "passed": self.passed, "values": self.values}


@dataclass
class ProofTrace:
    n: int
    k: int
    vertex_critical: bool
    in_bound: bool
    exploratory: bool = False
    P: Colouring | None = None
    U: list[int] = field(default_factory=list)
    W: list[int] = field(default_factory=list)
    H_edges: list[tuple[int, int]] = field(default_factory=list)
    dec: GEDecomposition | None = None  # in G's vertex names
    nu: int | None = None
    chi_W: int | None = None
    chi_C: int | None = None
    chi_D: list[int] = field(default_factory=list)
    chi_U: int | None = None
    chi_G_minus_A: int | None = None
    complement_components: list[list[int]] = field(default_factory=list)
    steps: list[Step] = field(default_factory=list)

    @property
    def hypotheses_met(self) -> bool:
        return self.vertex_critical and self.in_bound

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.steps)

    @property
    def conclusive(self) -> bool:
        return self.hypotheses_met and self.passed

    @property
    def A_empty(self) -> bool | None:
        return None if self.dec is None else not self.dec.A

    @property
    def conclusion(self) -> bool:
        return len(self.complement_components) >= 2

    def failed_steps(self) -> list[str]:
        return [s.name for s in self.steps if not s.passed]

    def as_dict(self) -> dict:
        dec = self.dec
        return {
            "n": self.n,
            "k": self.k,
            "hypotheses": {
                "vertex_critical": self.vertex_critical,
                "n_at_most_2k_minus_2": self.in_bound,
            },
            "exploratory": self.exploratory,
            "P": None if self.P is None else self.P.as_lists(),
            "U": self.U,
            "W": self.W,
            "H_edges": [list(e) for e in self.H_edges],
            "decomposition": None if dec is None else {
                "D": list(dec.D),
                "A": list(dec.A),
                "C": list(dec.C),
                "components": [list(c) for c in dec.components],
                "c": dec.c,
            },
            "nu": self.nu,
            "chi": {"W": self.chi_W, "C": self.chi_C, "D_i": self.chi_D, "U": self.chi_U,
                    "G_minus_A": self.chi_G_minus_A, "G": self.k},
            "A_empty": self.A_empty,
            "complement_components": self.complement_components,
            "conclusion": self.conclusion,
            "passed": self.passed,
            "conclusive": self.conclusive,
            "steps": [s.as_dict() for s in self.steps],
        }


def _chi_on(G: Digraph, S) -> int:
    return chi(induced_subdigraph(G, S))


def run_proof_pipeline(G: Digraph, exploratory: bool = False) -> ProofTrace:
    """Replay the argument on G and return the verified trace.

    Raises HypothesisError if G is not vertex-critical or has more than
    2k - 2 vertices, unless ``exploratory`` is set; then every step still
    runs and the trace is marked non-conclusive. Raises TheoremViolation
    (carrying the full trace) if any step fails on a digraph that meets the
    hypotheses.
    """
    k = chi(G)
    trace = ProofTrace(
        n=G.n, k=k,
        vertex_critical=is_vertex_critical(G, k),
        in_bound=G.n <= 2 * k - 2,
        exploratory=exploratory,
    )
    if not trace.hypotheses_met:
        failed = []
        if not trace.vertex_critical:
            failed.append("G is not vertex-critical")
        if not trace.in_bound:
            failed.append(f"n = {G.n} > 2k - 2 = {2 * k - 2}")
        if not exploratory:
            raise HypothesisError(failed)

    def check(name: str, claim: str, passed: bool, **values) -> bool:
        trace.steps.append(Step(name, claim, bool(passed), values))
        return passed

    V = range(G.n)

    # a
    P = extreme_colouring(G, k)
    trace.P = P
    check("a_extreme_colouring", "P is an optimal colouring with singleton_count(P) >= 2",
          is_valid_colouring(G, P) and len(P) == k and singleton_count(P) >= 2
          and exchange_extremality_check(G, P, k),
          classes=P.as_lists(), singletons=singleton_count(P))

    # b
    U, W, H = build_auxiliary_graph(G, P)
    local = ge_decompose(H)

    def names(vs):
        return tuple(U[v] for v in vs)

    dec = GEDecomposition(names(local.D), names(local.A), names(local.C),
                          tuple(names(comp) for comp in local.components))
    nu = matching_number(H)
    cert = verify_ge_structure(H, local)
    trace.U, trace.W, trace.dec, trace.nu = U, W, dec, nu
    trace.H_edges = [(U[i], U[j]) for i, j in H.edges]
    check("b_auxiliary_graph",
          "U = classes of size <= 2, W = V - U; H joins u, v unless {(u,v),(v,u)} is in E; "
          "D, A, C satisfy the Gallai-Edmonds certificate",
          all(len(c) >= 3 for c in restrict(P, W).classes)
          and all(H.has_edge(i, j) == (not G.is_digon(U[i], U[j]))
                  for i in range(H.n) for j in range(H.n) if i != j)
          and cert.passed,
          U=U, W=W, D=list(dec.D), A=list(dec.A), C=list(dec.C),
          components=[list(c) for c in dec.components], nu=nu, certificate=cert.as_dict())

    # c
    PW = restrict(P, W)
    per_u = []
    ok = True
    for i in local.D:
        u = U[i]
        try:
            M = max_matching_missing(H, i)
            Mu = matching_to_colouring(G, U, [(U[a], U[b]) for a, b in sorted(M)])
            Pu = PW.union(Mu)
            good = (is_valid_colouring(G, Pu) and len(Pu) == k and (u,) in Pu.classes
                    and singleton_count(Pu) == singleton_count(P)
                    and exchange_extremality_check(G, Pu, k))
            per_u.append({"u": u, "M_u": sorted([U[a], U[b]] for a, b in M),
                          "P_u": Pu.as_lists(), "passed": good})
        except (PreconditionError, ValueError) as exc:
            good = False
            per_u.append({"u": u, "error": str(exc), "passed": False})
        ok = ok and good
    check("c_colourings_P_u",
          "for each u in D, P_u = P[W] + colouring(M_u) is an extreme k-colouring with {u} as a class",
          ok, per_u=per_u)

    # d
    chi_C = _chi_on(G, dec.C)
    chi_D = [_chi_on(G, comp) for comp in dec.components]
    trace.chi_C, trace.chi_D = chi_C, chi_D
    check("d_chi_C", "chi(G[C]) = |C|/2", 2 * chi_C == len(dec.C), chi_C=chi_C, size_C=len(dec.C))
    check("d_chi_D_i", "chi(G[D_i]) = (|D_i| + 1)/2 for every i",
          all(2 * x == len(comp) + 1 for x, comp in zip(chi_D, dec.components)),
          chi_D_i=chi_D, sizes_D_i=[len(comp) for comp in dec.components])

    # e
    check("e_c_at_least_2", "c >= 2", dec.c >= 2, c=dec.c)

    # f
    Gbar = complement(G)
    A = set(dec.A)
    crossing = []
    for comp in dec.components:
        inside = set(comp)
        for u in comp:
            for v in V:
                if v not in A and v not in inside and (Gbar.has_arc(u, v) or Gbar.has_arc(v, u)):
                    crossing.append([u, v])
    check("f_complement_split",
          "complement(G) - A = complement(G)[W + C] + complement(G)[D_1] + ... + complement(G)[D_c]",
          not crossing, crossing_pairs=crossing)

    # g
    chi_W = _chi_on(G, W)
    chi_WC = _chi_on(G, sorted(set(W) | set(dec.C)))
    chi_GA = chi(delete_vertices(G, A))
    half_twice = len(dec.C) + len(dec.D) + dec.c
    trace.chi_W, trace.chi_G_minus_A = chi_W, chi_GA
    check("g_chi_G_minus_A",
          "chi(G - A) = chi(G[W + C]) + sum chi(G[D_i]) = chi(G[W]) + chi(G[C]) + sum chi(G[D_i]) "
          "= chi(G[W]) + (|C| + |D| + c)/2",
          chi_GA == chi_WC + sum(chi_D)
          and chi_WC == chi_W + chi_C
          and 2 * chi_GA == 2 * chi_W + half_twice,
          chi_G_minus_A=chi_GA, chi_W_plus_C=chi_WC, chi_W=chi_W, chi_C=chi_C,
          sum_chi_D_i=sum(chi_D), C_plus_D_plus_c=half_twice)

    # h
    chi_U = _chi_on(G, U)
    trace.chi_U = chi_U
    check("h_chi_G_split",
          "chi(G) = chi(G[W]) + chi(G[U]); chi(G[U]) = |U| - (|U| + |A| - c)/2 = (|C| + |D| + c)/2",
          k == chi_W + chi_U
          and 2 * nu == len(U) + len(A) - dec.c
          and chi_U == len(U) - nu
          and 2 * chi_U == half_twice
          and 2 * k == 2 * chi_W + half_twice,
          chi_G=k, chi_W=chi_W, chi_U=chi_U, nu=nu, size_U=len(U), size_A=len(A), c=dec.c)

    # i
    check("i_A_empty", "chi(G - A) = chi(G), so A is empty by vertex-criticality",
          chi_GA == k and not A, chi_G_minus_A=chi_GA, chi_G=k, A=sorted(A))

    # j
    trace.complement_components = weak_components(Gbar)
    check("j_complement_disconnected", "complement(G) has at least 2 weak components",
          len(trace.complement_components) >= 2,
          complement_components=trace.complement_components)

    if trace.hypotheses_met and not trace.passed:
        raise TheoremViolation(trace.failed_steps()[0], trace)
    return trace
