import random

import pytest

from hered.algebra import MonomialAlgebra
from hered.cli import example_text
from hered.preprojective import parse_qp
from hered.quiver import parse_presentation, random_presentation


def load_example(name):
    text = example_text(name)
    return parse_qp(text) if "term " in text else parse_presentation(text)


def random_corpus(seed, count, **kw):
    rng = random.Random(seed)
    return [random_presentation(rng, **kw) for _ in range(count)]


@pytest.fixture
def a3j2():
    return load_example("a3j2")


@pytest.fixture
def star44():
    return load_example("star44")


@pytest.fixture
def star96():
    return load_example("star96")


@pytest.fixture
def a3j2_alg(a3j2):
    return MonomialAlgebra(a3j2)
