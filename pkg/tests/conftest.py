import random

import pytest
from hypothesis import HealthCheck, settings

from krtool.corpus import CORPUS, build
from krtool.critical import PLFunction
from krtool.mesh import build_surface

settings.register_profile(
    "krtool", derandomize=True, deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("krtool")

CORPUS_NAMES = sorted(CORPUS)
ORIENTABLE = ["annulus", "disk", "genus2", "octahedron", "torus"]


@pytest.fixture(params=CORPUS_NAMES)
def corpus_entry(request):
    s, f = build(request.param)
    return request.param, s, f


def relabel(name, seed):
    """The corpus entry with vertex ids permuted and triangle order shuffled."""
    n, tris, values = CORPUS[name]()
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    new_tris = [tuple(perm[v] for v in t) for t in tris]
    rng.shuffle(new_tris)
    new_values = [None] * n
    for v in range(n):
        new_values[perm[v]] = values[v]
    return build_surface(n, new_tris), PLFunction(tuple(new_values)), perm


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        title, ok, detail = RESULTS[n]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail and not ok else ""))
