"""Smoke tests for the python surface; the deep suites live in ctest."""

import pytest

import holobrace as hb


def test_info_abelian():
    rep = hb.info(hb.abelian(3, [2, 1]))
    assert rep["order"] == 27
    assert rep["order_statistics"] == {"1": 1, "3": 8, "9": 18}
    assert rep["aut_order"] == "108"


def test_info_m27():
    rep = hb.info(hb.family(1, 3, 3))
    assert rep["order"] == 27
    assert rep["abelian"] is False
    assert rep["order_statistics"] == {"1": 1, "3": 8, "9": 18}
    assert rep["aut_order"] == "54"
    assert rep["derived_order"] == 3


def test_invalid_input():
    with pytest.raises(hb.InvalidInput):
        hb.info({"kind": "abelian", "p": 4, "exponents": [1]})


def test_search_trivial_pair():
    rep = hb.search(hb.abelian(3, [1, 1]), hb.abelian(3, [1, 1]))
    assert rep["realizable"] is True
    assert rep["witness"]["regular"] is True
    assert rep["brace"]["multiplicative_type"]["label"] == "abelian [1,1]"


def test_search_exhausted():
    rep = hb.search(hb.abelian(3, [1, 1]), hb.abelian(3, [2]))
    assert rep["realizable"] is False
    assert rep["certificate"]["restricted"] is True
    assert rep["certificate"]["nodes"] > 0


def test_verify_nonab_m27():
    rep = hb.verify_nonab(hb.family(1, 3, 3))
    assert rep["theorem_holds"] is True
    assert rep["normalizer_order"] == "1458"
    assert rep["A"] == "C9xC3"


def test_census_c9():
    rep = hb.census(hb.abelian(3, [2]), restrict_sylow=False)
    assert rep["count"] >= 1
    assert rep["class_count"] >= 1
    sizes = sum(c["size"] for c in rep["classes"])
    assert sizes == rep["count"]


def test_lemma_suite():
    rep = hb.lemma_suite(corpus=20, seed=3)
    assert rep["all_pass"] is True
    assert rep["corpus_size"] >= 60
