import pytest

from graph_selftest.graph import Graph


def path(n):
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)], n)


def cycle(n):
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)], n)


def grid(rows, cols):
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(edges, rows * cols)


STAR = Graph.from_edges([(0, 1), (0, 2), (0, 3)])
TRIANGLE_PENDANT = Graph.from_edges([(0, 1), (1, 2), (0, 2), (0, 3)])

CORPUS = {
    "P2": path(2),
    "P3": path(3),
    "P4": path(4),
    "C3": cycle(3),
    "C4": cycle(4),
    "C5": cycle(5),
    "K13": STAR,
    "tri+pendant": TRIANGLE_PENDANT,
    "grid2x3": grid(2, 3),
}
NON_BIPARTITE = ("C3", "C5", "tri+pendant")
SMALL = tuple(k for k, g in CORPUS.items() if g.n <= 5)


@pytest.fixture(params=list(CORPUS), ids=list(CORPUS))
def corpus_graph(request):
    return CORPUS[request.param]


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per criterion; echoed in the terminal summary."""

    def record(number, title, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
