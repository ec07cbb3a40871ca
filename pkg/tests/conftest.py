import numpy as np
import pytest

from netid import MetrizedGraph, parse_edge_list


def nodal_resistances(g: MetrizedGraph) -> np.ndarray:
    """Resistance between every vertex pair by grounded nodal solves.

    Works on multigraphs directly: parallel conductances add, loops carry no
    current.  Shares no code with the library's Laplacian or pseudoinverse.
    """
    n = g.n
    index = {v: i for i, v in enumerate(g.vertices)}
    lap = np.zeros((n, n))
    for a, b, length in g.edges:
        if a == b:
            continue
        i, j = index[a], index[b]
        lap[i, i] += 1 / length
        lap[j, j] += 1 / length
        lap[i, j] -= 1 / length
        lap[j, i] -= 1 / length
    r = np.zeros((n, n))
    for q in range(n):
        keep = [v for v in range(n) if v != q]
        if not keep:
            continue
        # column p of the grounded inverse is the potential for current e_p - e_q
        grounded_inverse = np.linalg.solve(lap[np.ix_(keep, keep)], np.eye(n - 1))
        r[keep, q] = np.diag(grounded_inverse)
    return r


@pytest.fixture
def unit_path():
    return parse_edge_list("a b 1\nb c 1\n")


@pytest.fixture
def unit_triangle():
    return parse_edge_list("a b 1\nb c 1\nc a 1\n")


@pytest.fixture
def single_edge():
    return parse_edge_list("a b 2\n")


ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} -- {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
