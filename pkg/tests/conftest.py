import itertools
import os
import random

import numpy as np
import pytest

from dafbe.automata import Dafsa
from dafbe.factor import DafsaFactor, TabularFactor
from dafbe.model import GraphicalModel, Task

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURES, name)


def rand_dafsa(rng, domains, max_strings=12):
    """Random minimal automaton built from a random string set."""
    n = rng.randrange(0, max_strings + 1)
    words = {tuple(rng.randrange(k) for k in domains) for _ in range(n)}
    return Dafsa.from_strings(domains, sorted(words))


def rand_word(rng, domains):
    return tuple(rng.randrange(k) for k in domains)


def demo_table():
    """Three binary variables, eight rows, four distinct values.

    Values chosen so each value class is a different shape: one class
    needs a branching automaton, one is a single string, two are pairs.
    """
    values = np.array([1.0, 1.0, 2.0, 1.0, 3.0, 7.0, 3.0, 7.0])
    return TabularFactor(scope=(0, 1, 2), domains=(2, 2, 2), values=values)


def demo_factor(eps=1e-10):
    return DafsaFactor.from_table(demo_table(), eps=eps)


def table_from_feed(scope, domains, feed):
    vals = np.array([float(feed(a)) for a in itertools.product(*(range(k) for k in domains))])
    return TabularFactor(scope=tuple(scope), domains=tuple(domains), values=vals)


def micro_model(seed, task=None):
    from dafbe.generate import random_micro_model

    rng = random.Random(seed)
    if task is None:
        task = Task.MAP if seed % 2 == 0 else Task.WCSP
    return random_micro_model(rng, task)


@pytest.fixture
def rng():
    return random.Random(0xDAF5A)
