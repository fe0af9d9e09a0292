import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from plusclosure.groebner import clear_cache  # noqa: E402
from plusclosure.poly import Polynomial, Ring  # noqa: E402

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


@pytest.fixture
def fresh_cache():
    clear_cache()
    yield
    clear_cache()


@pytest.fixture
def rng():
    return random.Random(20261015)


def random_poly(rng, ring, max_degree=3, max_terms=4, homogeneous_degree=None):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = homogeneous_degree if homogeneous_degree is not None else rng.randint(0, max_degree)
        exps = [0] * ring.nvars
        for _ in range(deg):
            exps[rng.randrange(ring.nvars)] += 1
        terms[tuple(exps)] = rng.randrange(1, ring.p)
    return Polynomial(ring, terms)


@st.composite
def polynomials(draw, ring, max_degree=4, max_terms=5):
    n = ring.nvars
    exps = st.tuples(*[st.integers(0, max_degree) for _ in range(n)])
    terms = draw(st.dictionaries(exps, st.integers(0, ring.p - 1), max_size=max_terms))
    return Polynomial(ring, terms)


@st.composite
def ring_and_polys(draw, count=2, nvars_max=3, primes=(2, 3, 5, 7), max_degree=4):
    p = draw(st.sampled_from(primes))
    n = draw(st.integers(1, nvars_max))
    ring = Ring([f"v{i}" for i in range(n)], p)
    polys = [draw(polynomials(ring, max_degree)) for _ in range(count)]
    return (ring, *polys)
