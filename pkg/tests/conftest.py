import random

import pytest

from treeramsey.tree_core import Embedding

_acceptance: dict = {}


def random_embedding(rng: random.Random, D: int, d: int) -> Embedding:
    """Uniform-ish order-isomorphic copy of 2^{<=d} inside 2^{<=D}."""
    if d > D:
        raise ValueError("d > D")
    root_len = rng.randint(0, D - d)
    images = {"": "".join(rng.choice("01") for _ in range(root_len))}

    def grow(index, node):
        level = len(index)
        if level == d:
            return
        cap = D - (d - level - 1)
        for bit in "01":
            length = rng.randint(len(node) + 1, cap)
            tail = "".join(rng.choice("01") for _ in range(length - len(node) - 1))
            child = node + bit + tail
            images[index + bit] = child
            grow(index + bit, child)

    grow("", images[""])
    return Embedding(d, images)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    name = dict(report.user_properties).get("criterion")
    if name:
        _acceptance[name] = (report.passed, dict(report.user_properties).get("detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in _acceptance.items():
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
