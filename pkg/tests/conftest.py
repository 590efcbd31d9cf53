import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from critdigraph.digraph import Digraph  # noqa: E402
from critdigraph.families import bidirected_complete, bidirected_join, directed_cycle  # noqa: E402


@st.composite
def digraphs(draw, min_n=0, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Digraph.from_arcs(n, [p for p, keep in zip(pairs, chosen) if keep])


def random_digraph(rng: random.Random, n: int, p: float | None = None) -> Digraph:
    p = rng.random() if p is None else p
    return Digraph.from_arcs(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])


@pytest.fixture
def C3():
    return directed_cycle(3)


@pytest.fixture
def K3():
    return bidirected_complete(3)


@pytest.fixture
def join_C3_C3():
    return bidirected_join(directed_cycle(3), directed_cycle(3))


_ACCEPTANCE: dict[str, str] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion under ``label``."""
    labels = []

    def record(label: str):
        labels.append(label)

    yield record
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    for label in labels:
        _ACCEPTANCE[label] = "FAIL" if failed else "PASS"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split(".")[0])):
        terminalreporter.write_line(f"[{_ACCEPTANCE[label]}] {label}")
