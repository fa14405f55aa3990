import json
import random
from fractions import Fraction

import pytest

from lattrans.certificates import lll_threshold
from lattrans.constructions import L_dprime, order4_representatives
from lattrans.core import GridArray, parse_array
from lattrans.lll import (
    best_x,
    build_event_model,
    line_clique_sizes,
    lll_condition,
    random_transversal_search,
)
from lattrans.sampling import random_latin_array, random_latin_square
from lattrans.transversal import has_transversal, validate_transversal


def test_two_by_two_events():
    m = build_event_model(parse_array("a b\nb a"))
    assert len(m.events) == 2
    assert m.probability == Fraction(1, 2)


def test_each_event_in_four_cliques():
    rng = random.Random(20)
    for _ in range(50):
        n = rng.randint(2, 7)
        A = random_latin_array(n, rng.randint(n, n * n), rng)
        m = build_event_model(A)
        assert all(c == 4 for c in m.membership().values())
        assert len(m.membership()) == len(m.events)
        rows, cols = line_clique_sizes(A)
        assert sorted(len(K) for K in m.row_cliques) == sorted(rows)
        assert sorted(len(K) for K in m.col_cliques) == sorted(cols)
        assert m.kappa == max(rows + cols)
        assert m.kappa <= n * n - A.num_symbols


def test_latin_square_kappa_and_no_guarantee():
    for n in range(2, 9):
        rep = lll_condition(random_latin_square(n, random.Random(n)))
        assert rep.kappa == n * (n - 1)
        assert not rep.guaranteed


def test_distinct_symbols_gives_kappa_zero():
    rep = lll_condition(GridArray(((0, 1), (2, 3))))
    assert rep.kappa == 0 and rep.x is None and rep.guaranteed
    assert rep.to_json() == {"kappa": 0, "mu": 4, "x": None, "guaranteed": True}


def test_optimized_x_is_quarter_over_kappa():
    for kappa in range(1, 40):
        x = best_x(kappa)
        assert x == Fraction(1, 4 * kappa)
        f = lambda t: t * (1 - kappa * t) ** 3
        for d in (Fraction(1, 1000 * kappa), Fraction(1, 50 * kappa)):
            assert f(x) >= f(x + d) and f(x) >= f(x - d)


def test_threshold_values():
    assert lll_threshold(16) == 231
    assert lll_threshold(6) == 33


def test_condition_implies_transversal():
    rng = random.Random(21)
    fired = 0
    for _ in range(300):
        n = rng.randint(2, 7)
        A = random_latin_array(n, rng.randint(max(n, n * n - 2 * n), n * n), rng)
        rep = lll_condition(A, optimize=rng.random() < 0.5)
        if rep.guaranteed:
            fired += 1
            assert has_transversal(A)[0]
    assert fired > 20


def test_condition_errors():
    with pytest.raises(ValueError):
        lll_condition(parse_array("a"))
    with pytest.raises(ValueError):
        lll_condition(parse_array("a a\nb c"))
    with pytest.raises(ValueError):
        lll_condition(parse_array("a .\nb a"))


def test_json_shape():
    rep = lll_condition(order4_representatives()[0])
    obj = json.loads(rep.dumps())
    assert set(obj) == {"kappa", "mu", "x", "guaranteed"}
    assert Fraction(obj["x"]) == Fraction(1, 4 * obj["kappa"])


def test_search_determinism():
    A = random_latin_array(7, 20, random.Random(3))
    a = random_transversal_search(A, seed=5)
    b = random_transversal_search(A, seed=5)
    assert a.trace == b.trace and a.transversal == b.transversal
    assert a.found and validate_transversal(A, a.transversal)


def test_search_finds_transversals_and_exhausts_on_free_arrays():
    rng = random.Random(22)
    for _ in range(100):
        A = random_latin_array(7, rng.randint(7, 49), rng)
        assert random_transversal_search(A, seed=rng.random()).found
    res = random_transversal_search(L_dprime(), seed=1, max_restarts=20)
    assert not res.found and res.restarts == 20 and len(res.trace) == 20
