import itertools
import random
from fractions import Fraction

import pytest

from lattrans.certificates import (
    DeltaCertificate,
    check_focused,
    check_good_col,
    check_upper_bound_from_larges,
    delta_premise_failures,
    guarantee_transversal,
    larges_bound,
    latin_threshold,
    ldprime_certificate,
    lll_threshold,
    meets_latin_threshold,
    meets_lll_threshold,
    meets_row_latin_threshold,
    row_latin_threshold,
    uniquemin_diagnostic,
    verify_delta_certificate,
)
from lattrans.constructions import L1, L_dprime, d_replacements, generate_order6_constructions, order4_representatives
from lattrans.core import GridArray, classify_symbols, embed_fresh, parse_array
from lattrans.sampling import random_array, random_latin_array
from lattrans.transversal import count_transversals, has_transversal


def test_delta_accepts_ldprime_variants():
    cert = ldprime_certificate()
    assert verify_delta_certificate(L_dprime(), cert)
    for rows in itertools.chain.from_iterable(itertools.combinations(range(1, 7), k) for k in range(7)):
        L = d_replacements(rows)
        assert verify_delta_certificate(L, cert), rows
        assert count_transversals(L) == 0
    for L in generate_order6_constructions()[14:]:
        assert verify_delta_certificate(L, cert)


def test_delta_rejects_arrays_with_transversals():
    rng = random.Random(1)
    cert = ldprime_certificate()
    seen = 0
    for _ in range(300):
        A = random_latin_array(6, rng.randint(6, 9), rng)
        if has_transversal(A)[0]:
            seen += 1
            assert not verify_delta_certificate(A.relabel("abcdefghijklmnop"[: A.num_symbols]), cert)
    assert seen > 100


def test_delta_rejects_other_constructions():
    cert = ldprime_certificate()
    assert delta_premise_failures(L1(), cert)


def test_delta_soundness_on_perturbations():
    # certified arrays never have transversals, including random edits of L''
    rng = random.Random(2)
    cert = ldprime_certificate()
    base = L_dprime()
    for _ in range(500):
        changes = {(rng.randrange(6), rng.randrange(6)): rng.choice("abcdefg") for _ in range(rng.randint(1, 3))}
        A = base.with_cells(changes)
        if verify_delta_certificate(A, cert):
            assert count_transversals(A) == 0


def test_delta_malformed():
    good = ldprime_certificate()
    bad = DeltaCertificate(frozenset({0, 1}), good.cols1, good.sym1, good.rho_rows, good.rho_cols, good.nu)
    with pytest.raises(ValueError):
        verify_delta_certificate(L_dprime(), bad)
    with pytest.raises(ValueError):
        verify_delta_certificate(order4_representatives()[0], good)


def test_good_col():
    with pytest.raises(ValueError):
        check_good_col(GridArray(((0, 1), (2, 3))), 0)
    L2 = parse_array("a b\nb a")
    assert check_good_col(L2, 0) and check_good_col(L2, 1)


def test_good_col_universal():
    rng = random.Random(3)
    for _ in range(400):
        n = rng.randint(1, 7)
        A = random_array(n, rng.randint(1, n * n), rng, 0.1 * rng.random())
        clones = classify_symbols(A).clones
        for i in range(n):
            if any(v in clones for v in A.cells[i]):
                assert check_good_col(A, i)


def test_good_col_on_order6_catalogue(latin_catalogues):
    for rec in latin_catalogues[6].records():
        A = rec.array()
        for i in range(6):
            assert check_good_col(A, i)


def test_larges_bound_values():
    assert larges_bound(6, 1) == 21
    assert larges_bound(4, 1) == 10


def test_upper_bound_from_larges_order4():
    for A in order4_representatives():
        v = check_upper_bound_from_larges(A, 1)
        # |R_i u C_j| >= 7 is impossible with at most 5 symbols
        assert v.verdict == "not applicable"
        assert v.bound >= A.num_symbols


def test_upper_bound_from_larges_catalogue(latin_catalogues):
    for n in (4, 5, 6):
        for rec in latin_catalogues[n].records():
            A = rec.array()
            for k in (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)):
                v = check_upper_bound_from_larges(A, k)
                assert v.verdict in ("pass", "not applicable")
            assert check_upper_bound_from_larges(A, 0).verdict == "pass"


def test_upper_bound_not_applicable_with_transversal():
    assert check_upper_bound_from_larges(parse_array("a b\nc a"), 0).verdict == "not applicable"


def test_thresholds_exact():
    assert (latin_threshold(6), row_latin_threshold(6), lll_threshold(6)) == (22, 25, 33)
    assert latin_threshold(10) == 59 and lll_threshold(16) == 231
    for n in range(1, 60):
        t = latin_threshold(n)
        assert meets_latin_threshold(n, t) and not meets_latin_threshold(n, t - 1)
        assert (t - 1) < (2 - 2 ** 0.5) * n * n + 1e-9 <= t + 1e-9
        r = row_latin_threshold(n)
        assert meets_row_latin_threshold(n, r) and not meets_row_latin_threshold(n, r - 1)
        q = lll_threshold(n)
        assert meets_lll_threshold(n, q) and not meets_lll_threshold(n, q - 1)


def test_guarantee_examples():
    assert guarantee_transversal(10, 59).fires["latin-2-sqrt2"]
    assert not guarantee_transversal(10, 58).fires["latin-2-sqrt2"]
    rep = guarantee_transversal(6, 9)
    assert not rep.guaranteed and rep.thresholds == {"latin-2-sqrt2": 22, "row-latin-5-sqrt5": 25, "lll-229-27": 33}
    row = guarantee_transversal(6, 25, "row-latin")
    assert row.fires == {"row-latin-5-sqrt5": True} and row.note
    assert guarantee_transversal(6, 30).strongest == "latin-2-sqrt2"
    with pytest.raises(ValueError):
        guarantee_transversal(6, 5)
    with pytest.raises(ValueError):
        guarantee_transversal(6, 37)
    with pytest.raises(ValueError):
        guarantee_transversal(6, 10, "other")


def test_report_rendering():
    rep = guarantee_transversal(6, 22)
    assert '"guaranteed": true' in rep.dumps()
    assert "fires" in rep.table()


def test_focused():
    D = GridArray(tuple(tuple(range(3 * i, 3 * i + 3)) for i in range(3)))
    ok, w = check_focused(D)
    assert ok and w is not None
    assert check_focused(parse_array("a b\nb a")) == (False, None)
    ok, (i, j) = check_focused(embed_fresh(parse_array("a b\nb a"), 2))
    assert ok and i >= 2 and j >= 2
    with pytest.raises(ValueError):
        check_focused(parse_array("a b\na b"))


def test_uniquemin_diagnostic():
    A = embed_fresh(parse_array("a b\nb a"), 1)
    d = uniquemin_diagnostic(A, 2, 2)
    assert d["psi"] == 5 and d["alpha"] == Fraction(7, 9)
    with pytest.raises(ValueError):
        uniquemin_diagnostic(A, 0, 0)
