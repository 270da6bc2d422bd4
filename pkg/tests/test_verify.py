from torlink.exactla import GF, QQ
from torlink.labels import C3, G, H
from torlink.linkage import REGIMES, regime_applies
from torlink.theorems import admissible_class
from torlink.verify import (
    SUITES,
    SuiteResult,
    all_labels,
    corpus_ideals,
    random_corpus,
    regime_instances,
    run_suite,
    suite_linkchain,
)


def test_all_labels():
    small = all_labels(3, 1)
    assert C3() in small and H(0, 0) in small and G(4) not in small
    assert G(2) in all_labels(5, 2)
    assert H(6, 5) in all_labels(7, 5)


def test_corpus():
    ideals = corpus_ideals()
    assert len(ideals) >= 30
    assert {I.field for I in ideals} == {QQ, GF(101)}


def test_random_corpus_alternates_fields():
    ideals = random_corpus(4, seed=1)
    assert [I.field for I in ideals] == [QQ, GF(101), QQ, GF(101)]


def test_regime_instances_are_admissible():
    for R in REGIMES:
        cases = regime_instances(R, 12)
        assert len(cases) == 12
        for lab, m, n, F in cases:
            assert regime_applies(lab, m, n, R) and admissible_class(lab, m, n)[0]


def test_suite_result():
    r = SuiteResult("x")
    assert not r.ok  # nothing ran
    r.record(True, 1)
    assert r.ok and r.summary() == "x: 1/1 passed"
    r.record(False, 2, "bad")
    assert not r.ok and r.to_json()["failures"] == [{"case": "2", "detail": "bad"}]


def test_quick_suites():
    assert SUITES == ("pqr", "roundtrip", "propositions", "theorems", "linkchain")
    assert run_suite("pqr").ok
    assert run_suite("roundtrip", seed=5, trials=30).ok
    assert run_suite("theorems", seed=2, trials=5).ok


def test_linkchain_on_chosen_ideals():
    ideals = [I for I in corpus_ideals() if I.name in ("t4", "b52", "h12")]
    res = suite_linkchain(ideals=ideals)
    assert res.ok and res.passed == 3
