import itertools
import random

import pytest
from hypothesis import strategies as st

from greedyflip.backend import available_backends
from greedyflip.coxeter import build_system, demazure, element_from_word
from greedyflip.subword import Instance

# The recurring A3 example: Q = t2 t3 t1 t3 t2 t1 t2 t3 t1, rho = [4,1,3,2] = t2 t3 t2 t1.
RUNNING_WORD = (1, 2, 0, 2, 1, 0, 1, 2, 0)
RUNNING_RHO = (1, 2, 1, 0)
RUNNING_FACETS = [
    (1, 2, 3, 5, 6), (1, 2, 3, 6, 7), (1, 2, 3, 7, 9), (1, 3, 4, 5, 6),
    (1, 3, 4, 6, 7), (1, 3, 4, 7, 9), (2, 3, 5, 6, 8), (2, 3, 6, 7, 8),
    (2, 3, 7, 8, 9), (3, 4, 5, 6, 8), (3, 4, 6, 7, 8), (3, 4, 7, 8, 9),
]

RANDOM_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "D4", "G2", "H3", "H4", "F4", "I2(5)"]

_SYSTEMS = {}


def system(name):
    if name not in _SYSTEMS:
        _SYSTEMS[name] = build_system(name)
    return _SYSTEMS[name]


@pytest.fixture(scope="session")
def A3():
    return system("A3")


@pytest.fixture
def running(A3):
    return Instance(A3, RUNNING_WORD, RUNNING_RHO)


@pytest.fixture(params=sorted(available_backends()))
def kernels(request):
    return available_backends()[request.param]


def brute_force_facets(inst):
    """Complements of position sets spelling a reduced expression of rho.

    Uses only element products and lengths, nothing from the enumerators.
    """
    m, ell = inst.m, inst.rho.length
    out = []
    for crossed in itertools.combinations(range(m), ell):
        letters = [inst.word[k] for k in crossed]
        if element_from_word(inst.system, letters) == inst.rho:
            out.append(tuple(k + 1 for k in range(m) if k not in crossed))
    return sorted(out)


def random_instance(rng, types=RANDOM_TYPES, max_m=12, sphere_bias=0.3):
    """A random nonempty instance: rho is the Demazure product of a random subword."""
    name = rng.choice(types)
    sys = system(name)
    m = rng.randint(0, max_m)
    word = [rng.randrange(sys.rank) for _ in range(m)]
    if rng.random() < sphere_bias:
        rho = demazure(sys, word)
    else:
        sub = [s for s in word if rng.random() < 0.5]
        rho = demazure(sys, sub)
    return Instance(sys, word, rho)


def random_corpus(seed, count, **kw):
    rng = random.Random(seed)
    return [random_instance(rng, **kw) for _ in range(count)]


@st.composite
def instances(draw, types=("A1", "A2", "A3", "B2", "B3", "G2", "H3", "D4"), max_m=10):
    name = draw(st.sampled_from(types))
    sys = system(name)
    word = draw(st.lists(st.integers(0, sys.rank - 1), max_size=max_m))
    keep = draw(st.lists(st.booleans(), min_size=len(word), max_size=len(word)))
    rho = demazure(sys, [s for s, k in zip(word, keep) if k])
    return Instance(sys, word, rho)


# ---------------------------------------------------------------- acceptance summary

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, text): an acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark:
            _ACCEPTANCE[item.nodeid] = [mark.args[0], mark.args[1], "NOT RUN"]


def pytest_runtest_logreport(report):
    entry = _ACCEPTANCE.get(report.nodeid)
    if entry is None:
        return
    if report.failed:
        entry[2] = "FAIL"
    elif report.when == "call" and report.passed and entry[2] != "FAIL":
        entry[2] = "PASS"
    elif report.skipped:
        entry[2] = "SKIP"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, status in sorted(_ACCEPTANCE.values()):
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {text}")
