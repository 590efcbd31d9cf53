import json
from pathlib import Path

import pytest

from critdigraph import pipeline
from critdigraph.dichromatic import Colouring, chi, extreme_colouring, is_valid_colouring, singleton_count
from critdigraph.digraph import Digraph
from critdigraph.errors import HypothesisError, PreconditionError, TheoremViolation
from critdigraph.families import bidirected_complete, bidirected_join, directed_cycle
from critdigraph.pipeline import (
    build_auxiliary_graph,
    exchange_extremality_check,
    find_improving_exchange,
    run_proof_pipeline,
)
from critdigraph.verifier import enumerate_digraphs

GOLDEN = Path(__file__).parent / "golden"


def canonical_json(trace):
    return json.dumps(trace.as_dict(), indent=2, sort_keys=True) + "\n"


@pytest.mark.parametrize("name, G", [
    ("bidirected_k3", bidirected_complete(3)),
    ("join_c3_c3", bidirected_join(directed_cycle(3), directed_cycle(3))),
])
def test_golden_traces(name, G):
    assert canonical_json(run_proof_pipeline(G)) == (GOLDEN / f"{name}.json").read_text()


def test_auxiliary_graph_examples(K3, join_C3_C3):
    U, W, H = build_auxiliary_graph(K3, extreme_colouring(K3))
    assert (U, W, H.edges) == ([0, 1, 2], [], [])
    U, W, H = build_auxiliary_graph(join_C3_C3, extreme_colouring(join_C3_C3))
    assert U == list(range(6)) and W == []
    assert H.edges == [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]


def test_auxiliary_graph_large_class_goes_to_W():
    G = bidirected_join(directed_cycle(5), bidirected_complete(3))
    P = extreme_colouring(G)
    assert [0, 1, 2] in P.as_lists()
    U, W, H = build_auxiliary_graph(G, P)
    assert W == [0, 1, 2] and U == [3, 4, 5, 6, 7]
    assert H.labels == (3, 4, 5, 6, 7)


def test_auxiliary_graph_rejects_invalid_colouring(C3):
    with pytest.raises(PreconditionError):
        build_auxiliary_graph(C3, Colouring.of([[0, 1, 2]]))


def test_exchange_check_examples(C3, K3):
    assert exchange_extremality_check(K3, Colouring.of([[0], [1], [2]]))
    with pytest.raises(PreconditionError):
        exchange_extremality_check(C3, Colouring.of([[0], [1], [2]]))


def test_exchange_check_holds_for_extreme_colourings():
    for n in range(1, 6):
        for G in enumerate_digraphs(n, dedup=True):
            assert exchange_extremality_check(G, extreme_colouring(G))


def test_exchange_check_finds_improvement():
    # C5 plus a vertex 5 with only 5 -> 0: chi 2; {5} alone beside a 5-vertex acyclic class
    G = Digraph.from_arcs(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0)])
    P = Colouring.of([[0, 1, 2, 3, 5], [4]])
    assert is_valid_colouring(G, P) and len(P) == chi(G)
    assert find_improving_exchange(G, P) is not None
    assert not exchange_extremality_check(G, P)


def test_hypotheses_not_met():
    with pytest.raises(HypothesisError) as info:
        run_proof_pipeline(directed_cycle(4))
    assert any("2k - 2" in f for f in info.value.failed)
    with pytest.raises(HypothesisError) as info:
        run_proof_pipeline(Digraph.from_arcs(3, [(0, 1), (1, 0)]))
    assert any("vertex-critical" in f for f in info.value.failed)


def test_exploratory_mode_is_non_conclusive():
    trace = run_proof_pipeline(directed_cycle(4), exploratory=True)
    assert not trace.conclusive and trace.exploratory
    assert "j_complement_disconnected" in trace.failed_steps()


def test_exploratory_mode_runs_on_everything_small():
    for n in range(0, 5):
        for G in enumerate_digraphs(n, dedup=True):
            trace = run_proof_pipeline(G, exploratory=True)
            assert len(trace.steps) == 11
            if trace.hypotheses_met:
                assert trace.passed


def test_exploratory_can_have_nonempty_A():
    # a digon with a pendant arc: H is the path 0 - 2 - 1, whose middle vertex is in A
    G = Digraph.from_arcs(3, [(0, 1), (1, 0), (1, 2)])
    trace = run_proof_pipeline(G, exploratory=True)
    assert not trace.hypotheses_met
    assert trace.dec.A == (2,) and not trace.A_empty
    assert "i_A_empty" in trace.failed_steps()


@pytest.mark.parametrize("G", [
    bidirected_join(directed_cycle(5), bidirected_complete(3)),
    bidirected_join(directed_cycle(4), bidirected_complete(2)),
    bidirected_join(bidirected_join(directed_cycle(3), directed_cycle(3)), directed_cycle(3)),
    bidirected_complete(5),
])
def test_pipeline_on_larger_joins(G):
    trace = run_proof_pipeline(G)
    assert trace.conclusive and trace.A_empty and trace.conclusion
    dec = trace.dec
    assert len(dec.C) % 2 == 0 and all(len(c) % 2 == 1 for c in dec.components)
    assert 2 * trace.k == 2 * trace.chi_W + len(dec.C) + len(dec.D) + dec.c
    assert singleton_count(trace.P) >= 2


def test_nonempty_W_and_C_values():
    trace = run_proof_pipeline(bidirected_join(directed_cycle(5), bidirected_complete(3)))
    assert trace.W == [0, 1, 2] and list(trace.dec.C) == [3, 4]
    assert (trace.chi_W, trace.chi_C, trace.chi_D) == (1, 1, [1, 1, 1])


def test_per_u_colourings_contain_singleton(join_C3_C3):
    trace = run_proof_pipeline(join_C3_C3)
    per_u = next(s for s in trace.steps if s.name == "c_colourings_P_u").values["per_u"]
    assert [e["u"] for e in per_u] == list(range(6))
    for e in per_u:
        assert [e["u"]] in e["P_u"] and len(e["P_u"]) == 4


def test_violation_is_raised_with_trace(monkeypatch, K3):
    monkeypatch.setattr(pipeline, "weak_components", lambda G: [list(range(G.n))])
    with pytest.raises(TheoremViolation) as info:
        run_proof_pipeline(K3)
    assert info.value.step == "j_complement_disconnected"
    assert info.value.trace.steps[-1].passed is False
    assert len(info.value.trace.steps) == 11
