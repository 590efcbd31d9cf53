"""Exit criteria for the package, one test per criterion.

Every check is exact; a one-line PASS/FAIL per criterion is printed in the
terminal summary.
"""

import itertools
import json
import random
from pathlib import Path

import pytest

from conftest import random_digraph
from oracles import brute_chi_and_min_singletons, brute_max_matching_size

from critdigraph import cli
from critdigraph.dichromatic import chi, extreme_colouring, singleton_count
from critdigraph.digraph import Digraph, complement, disjoint_union, induced_subdigraph, weak_components
from critdigraph.families import bidirected_complete, bidirected_join, directed_cycle
from critdigraph.matching import UGraph, ge_decompose, max_matching, verify_ge_structure
from critdigraph.pipeline import run_proof_pipeline
from critdigraph.verifier import decode, verify_theorem_up_to

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def report_n5():
    return verify_theorem_up_to(5, full_trace=True)


def _random_graph(rng, n):
    p = rng.random()
    return UGraph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def test_1_exhaustive_up_to_4(capsys, criterion):
    criterion("1. exhaustive theorem check, n <= 4")
    code = cli.main(["--json", "verify", "--max-n", "4"])
    report = json.loads(capsys.readouterr().out)["report"]
    assert code == 0
    assert [o["scanned"] for o in report["orders"]] == [1, 1, 4, 64, 4096]
    assert report["verdict"] == "PASS" and report["counterexamples"] == []
    assert all(o["verified"] == o["in_bound"] for o in report["orders"])
    assert sum(o["in_bound"] for o in report["orders"]) == len(report["instances"]) > 0
    assert all(e["complement_components"] >= 2 for e in report["instances"])


def test_2_exhaustive_order_5(report_n5, criterion):
    criterion("2. exhaustive theorem check, n = 5")
    order5 = report_n5.orders[5]
    assert order5.scanned == 2 ** 20 == 1_048_576
    assert report_n5.counterexamples == [] and report_n5.verdict == "PASS"
    assert order5.verified == order5.in_bound > 0


def test_3_golden_traces(criterion):
    criterion("3. proof-pipeline golden traces")
    k3 = run_proof_pipeline(bidirected_complete(3))
    d = k3.as_dict()
    assert (d["U"], d["W"], d["decomposition"]["c"], d["decomposition"]["A"]) == ([0, 1, 2], [], 3, [])
    assert len(d["complement_components"]) == 3
    join = run_proof_pipeline(bidirected_join(directed_cycle(3), directed_cycle(3)))
    d = join.as_dict()
    assert (join.k, join.n) == (4, 6)
    assert d["H_edges"] == [[0, 1], [0, 2], [1, 2], [3, 4], [3, 5], [4, 5]]
    assert d["nu"] == 2 == (6 + 0 - 2) // 2
    assert d["decomposition"]["c"] == 2 and d["decomposition"]["A"] == []
    assert d["chi"]["D_i"] == [2, 2] == [(3 + 1) // 2] * 2
    assert len(d["complement_components"]) == 2
    for name, trace in [("bidirected_k3", k3), ("join_c3_c3", join)]:
        assert json.dumps(trace.as_dict(), indent=2, sort_keys=True) + "\n" == (GOLDEN / f"{name}.json").read_text()


def test_4_matching_oracle(criterion):
    criterion("4. matching oracle equivalence")
    for n in range(6):
        pairs = list(itertools.combinations(range(n), 2))
        for chosen in range(1 << len(pairs)):
            H = UGraph.from_edges(n, [p for i, p in enumerate(pairs) if chosen >> i & 1])
            assert len(max_matching(H)) == brute_max_matching_size(H.edges)
    rng = random.Random(4)
    for _ in range(500):
        H = _random_graph(rng, rng.randint(6, 8))
        assert len(max_matching(H)) == brute_max_matching_size(H.edges)


def test_5_gallai_edmonds_certificates(criterion):
    criterion("5. Gallai-Edmonds certificates")
    rng = random.Random(5)
    for _ in range(1000):
        H = _random_graph(rng, rng.randint(1, 12))
        dec = ge_decompose(H)
        cert = verify_ge_structure(H, dec)
        assert cert.perfect_on_C and all(cert.factor_critical_components) and cert.size_formula
        assert 2 * cert.matching_number == H.n + len(dec.A) - dec.c


def test_6_dichromatic_oracle(criterion):
    criterion("6. dichromatic oracle equivalence")
    rng = random.Random(6)
    for _ in range(200):
        n = rng.randint(1, 6)
        G = random_digraph(rng, n)
        k = chi(G)
        E = extreme_colouring(G, k)
        assert (k, singleton_count(E)) == brute_chi_and_min_singletons(n, G.arcs)


def test_7_equation_suite(report_n5, criterion):
    criterion("7. equation suite on every passing pipeline run")
    graphs = [Digraph(e["n"], decode(e["n"], e["mask"])) for e in report_n5.instances]
    graphs += [bidirected_complete(3), bidirected_join(directed_cycle(3), directed_cycle(3))]
    assert len(graphs) > 30
    for G in graphs:
        t = run_proof_pipeline(G)
        dec = t.dec
        C, D, c = len(dec.C), len(dec.D), dec.c
        assert t.passed
        assert 2 * t.chi_C == C and C % 2 == 0
        assert all(2 * x == len(comp) + 1 and len(comp) % 2 == 1 for x, comp in zip(t.chi_D, dec.components))
        assert 2 * t.chi_G_minus_A == 2 * t.chi_W + C + D + c
        assert 2 * t.k == 2 * t.chi_W + C + D + c
        assert t.k == t.chi_W + t.chi_U and 2 * t.nu == len(t.U) + len(dec.A) - c
        assert t.chi_G_minus_A == t.k and not dec.A
        assert singleton_count(t.P) >= 2 and c >= 2
        assert len(t.complement_components) >= 2
    for e in report_n5.instances:
        assert e["trace"]["passed"]


def test_8_structural_identities(criterion):
    criterion("8. structural identities")
    rng = random.Random(8)
    for _ in range(500):
        G = random_digraph(rng, rng.randint(0, 8))
        assert complement(complement(G)) == G
    for _ in range(500):
        n1 = rng.randint(0, 8)
        G1, G2 = random_digraph(rng, n1), random_digraph(rng, rng.randint(0, 8 - n1))
        assert complement(bidirected_join(G1, G2)) == disjoint_union(complement(G1), complement(G2))
    checked = 0
    while checked < 500:
        if rng.random() < 0.5:
            n1 = rng.randint(1, 7)
            G = bidirected_join(random_digraph(rng, n1), random_digraph(rng, rng.randint(1, 8 - n1)))
        else:
            # dense digraphs often have a disconnected complement
            G = random_digraph(rng, rng.randint(1, 8), p=0.85)
        parts = weak_components(complement(G))
        if len(parts) < 2:
            continue
        assert chi(G) == sum(chi(induced_subdigraph(G, p)) for p in parts)
        checked += 1
