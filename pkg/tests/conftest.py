from __future__ import annotations

import pytest

from g2rig.graph import Graph

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def report_criterion():
    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def named(name: str) -> Graph:
    return {
        "K2": Graph.complete(2),
        "K2+pt": Graph.from_edges(3, [(1, 2)]),
        "P3": Graph.from_edges(3, [(1, 2), (1, 3)]),
        "K3": Graph.complete(3),
        "2K2": Graph.from_edges(4, [(1, 2), (3, 4)]),
        "C4": Graph.cycle(4),
        "K4": Graph.complete(4),
        "P4": Graph.path(4),
        "star4": Graph.star(4),
        "P3+pt": Graph.from_edges(4, [(1, 2), (1, 3)]),
        "K2+2pt": Graph.from_edges(4, [(1, 2)]),
        "K5-e": Graph.from_edges(5, [e for e in Graph.complete(5).edges if e != (4, 5)]),
    }[name]
