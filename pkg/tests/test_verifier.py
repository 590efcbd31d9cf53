import random

import pytest

from conftest import random_digraph
from oracles import burnside_digraph_count

from critdigraph.criticality import is_vertex_critical
from critdigraph.dichromatic import chi
from critdigraph.digraph import Digraph, complement, delete_vertices, disjoint_union, weak_components
from critdigraph.errors import PreconditionError
from critdigraph.families import bidirected_complete, bidirected_join, directed_cycle, gen_instance
from critdigraph.verifier import (
    ChiTable,
    canonical_mask,
    canonical_representatives,
    decode,
    delete_vertex_mask,
    enumerate_digraphs,
    verify_theorem_up_to,
)


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 4), (3, 64), (4, 4096)])
def test_labelled_enumeration_counts(n, count):
    graphs = list(enumerate_digraphs(n))
    assert len(graphs) == count == 2 ** (n * (n - 1))
    assert len(set(graphs)) == count


def test_two_vertex_classes():
    reps = list(enumerate_digraphs(2, dedup=True))
    assert len(reps) == 3
    assert {G.arc_count() for G in reps} == {0, 1, 2}


@pytest.mark.parametrize("n", range(0, 6))
def test_dedup_counts_match_burnside(n):
    assert len(canonical_representatives(n)) == burnside_digraph_count(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_dedup_matches_scalar_canonical_forms(n):
    labelled = {canonical_mask(n, G.to_mask()) for G in enumerate_digraphs(n)}
    assert labelled == set(canonical_representatives(n))


def test_enumeration_rejects_bad_order():
    with pytest.raises(PreconditionError):
        list(enumerate_digraphs(7))
    with pytest.raises(PreconditionError):
        list(enumerate_digraphs(-1))


def test_decode_and_deletion_masks():
    rng = random.Random(1)
    for _ in range(300):
        n = rng.randint(1, 6)
        G = random_digraph(rng, n)
        mask = G.to_mask()
        assert decode(n, mask) == G.out
        for v in range(n):
            assert delete_vertex_mask(n, mask, v) == delete_vertices(G, [v]).to_mask()


def test_chi_table_agrees_with_solver():
    rng = random.Random(4)
    table = ChiTable()
    for _ in range(200):
        n = rng.randint(0, 6)
        G = random_digraph(rng, n)
        assert table.get(n, G.to_mask()) == chi(G)


def test_verify_vacuous_at_one():
    report = verify_theorem_up_to(1)
    assert report.verdict == "PASS"
    assert sum(o.in_bound for o in report.orders) == 0


def test_verify_three_includes_bidirected_k3():
    report = verify_theorem_up_to(3)
    assert report.verdict == "PASS"
    k3 = bidirected_complete(3).to_mask()
    assert any(e["n"] == 3 and e["mask"] == k3 for e in report.instances)


def test_verify_four_census_matches_direct_count():
    report = verify_theorem_up_to(4)
    assert report.verdict == "PASS"
    for stats in report.orders:
        direct = [G for G in enumerate_digraphs(stats.n) if is_vertex_critical(G)]
        assert stats.vertex_critical == len(direct)
        in_bound = [G for G in direct if G.n <= 2 * chi(G) - 2]
        assert stats.in_bound == len(in_bound)
        assert all(chi(G) >= 3 for G in in_bound if G.n == 4)


def test_report_independent_of_sharding_and_jobs():
    base = verify_theorem_up_to(4, shard_bits=0).as_dict()
    assert verify_theorem_up_to(4, shard_bits=5).as_dict() == base
    assert verify_theorem_up_to(4, jobs=2, shard_bits=3).as_dict() == base


def test_hunt_mode_finds_the_same_instances():
    full = verify_theorem_up_to(4)
    hunt = verify_theorem_up_to(4, census=False)
    assert hunt.verdict == full.verdict == "PASS"
    # every in-bound instance has a disconnected complement, so the prefilter skips all of them
    assert sum(o.in_bound for o in hunt.orders) == 0
    assert sum(o.skipped_by_prefilter for o in hunt.orders) > 0


def test_dedup_verify_counts():
    report = verify_theorem_up_to(4, dedup=True, full_trace=True)
    assert [o.scanned for o in report.orders] == [1, 1, 3, 16, 218]
    assert report.verdict == "PASS"


def test_full_trace_summaries():
    report = verify_theorem_up_to(4, full_trace=True)
    assert report.instances and all(e["trace"]["passed"] for e in report.instances)


def test_counterexample_recorded(monkeypatch):
    from critdigraph import verifier

    monkeypatch.setattr(verifier, "_complement_components", lambda n, out: 1)
    report = verify_theorem_up_to(3)
    assert report.verdict == "FAIL"
    assert report.counterexamples[0]["reason"] == "complement is connected"


def test_gen_instance_examples():
    assert gen_instance("bidirected_complete", k=2) == Digraph.from_arcs(2, [(0, 1), (1, 0)])
    assert set(gen_instance("directed_cycle", n=3).arcs) == {(0, 1), (1, 2), (2, 0)}
    J = gen_instance("bidirected_join", parts=(directed_cycle(3), directed_cycle(3)))
    assert J.n == 6 and chi(J) == 4 and is_vertex_critical(J)
    assert len(weak_components(complement(J))) == 2
    for bad in [dict(family="nope"), dict(family="directed_cycle"), dict(family="directed_cycle", n=1),
                dict(family="bidirected_complete", k=-1), dict(family="bidirected_join")]:
        with pytest.raises(ValueError):
            gen_instance(**bad)


def test_join_structure_random():
    rng = random.Random(12)
    for _ in range(100):
        n1 = rng.randint(0, 4)
        G1, G2 = random_digraph(rng, n1), random_digraph(rng, rng.randint(0, 8 - n1))
        J = bidirected_join(G1, G2)
        assert complement(J) == disjoint_union(complement(G1), complement(G2))
        assert chi(J) == chi(G1) + chi(G2)
