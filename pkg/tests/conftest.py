import itertools
import os
import random

import pytest

from lattrans.catalogue import enumerate_partial_catalogue, latin_catalogue
from lattrans.constructions import (
    L1,
    L10,
    L_dprime,
    L_prime,
    generate_order6_constructions,
    order4_representatives,
    order5_representatives,
)
from lattrans.core import HOLE, parse_array
from lattrans.sampling import random_latin_array, random_partial_latin, random_row_latin_array

SLOW = bool(os.environ.get("LATTRANS_SLOW"))


def plain_count(A):
    """Transversals by trying every permutation; no pruning at all."""
    n = A.order
    total = 0
    for perm in itertools.permutations(range(n)):
        syms = [A.cells[i][perm[i]] for i in range(n)]
        if HOLE not in syms and len(set(syms)) == n:
            total += 1
    return total


def plain_max_partial(A):
    """Longest partial transversal by brute force over injections."""
    n = A.order
    best = 0
    for perm in itertools.permutations(range(n)):
        for rows in itertools.chain.from_iterable(
            itertools.combinations(range(n), k) for k in range(best + 1, n + 1)
        ):
            syms = [A.cells[i][perm[i]] for i in rows]
            if HOLE not in syms and len(set(syms)) == len(syms):
                best = max(best, len(rows))
    return best


@pytest.fixture(scope="session")
def latin_catalogues():
    return {n: latin_catalogue(n) for n in range(1, 7)}


@pytest.fixture(scope="session")
def order5_low_holes():
    # the order-5 partial arrays with at most one hole in total
    return enumerate_partial_catalogue(5, 2, 1)


@pytest.fixture(scope="session")
def explicit_arrays():
    arrays = order4_representatives() + order5_representatives()
    arrays += [L1(), L_prime(), L10(), L_dprime()]
    return arrays + generate_order6_constructions()


@pytest.fixture(scope="session")
def small_corpus(explicit_arrays):
    """Arrays of order <= 5: explicit ones, random Latin, row-Latin and partial."""
    rng = random.Random(20240601)
    arrays = [A for A in explicit_arrays if A.order <= 5]
    arrays += [parse_array("a"), parse_array("a b\nb a"), parse_array("a b\na b"), parse_array("a .\n. a")]
    for _ in range(120):
        n = rng.randint(1, 5)
        kind = rng.randrange(3)
        if kind == 0:
            arrays.append(random_latin_array(n, rng.randint(n, n * n), rng))
        elif kind == 1:
            arrays.append(random_row_latin_array(n, rng.randint(n, n * n), rng))
        else:
            arrays.append(random_partial_latin(n, rng.randint(1, n + 2), rng, 0.25))
    return arrays


@pytest.fixture(scope="session")
def latin_corpus(explicit_arrays):
    rng = random.Random(77)
    arrays = list(explicit_arrays)
    for _ in range(150):
        n = rng.randint(1, 7)
        arrays.append(random_latin_array(n, rng.randint(n, n * n), rng))
    return arrays


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
