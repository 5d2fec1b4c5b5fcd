"""Smoke tests for the python bindings."""

import pytest

import cylclasses as cc


def test_parse_and_format():
    p = cc.parse("a b c / c b a")
    assert p.kind == "abelian"
    assert p.top == ["a", "b", "c"]
    assert p.bottom == ["c", "b", "a"]
    assert str(p) == "a b c / c b a"

    q = cc.parse("a b b / c c a")
    assert q.kind == "quadratic"
    assert q.is_mixed()
    tokens, bar = q.one_line()
    assert tokens == ["a", "b", "b", "a", "c", "c"]
    assert bar == 3
    assert q.letter_type("b") == "top-top"


def test_parse_errors_raise_cyl_error():
    with pytest.raises(cc.CylError):
        cc.parse("a a b c / b c")
    with pytest.raises(cc.CylError):
        cc.parse("garbage")


def test_signatures():
    assert cc.parse("a b c / c b a").signature() == "H(2)"
    assert cc.parse("a b c / c b a").genus() == 2
    assert cc.parse("a a / b b").signature() == "Q(-1,-1,-1,-1)"
    assert cc.parse("a b b / c c a").corner_class_sizes() == [4, 1, 1]
    assert cc.parse("a b / b a").euler_check()


def test_moves_round_trip():
    p = cc.parse("a b c / c b a")
    assert cc.t_applicable(p, "c")
    assert not cc.t_applicable(p, "a")
    q = cc.t_move(p, "c")
    assert str(q) == "a c b / b c a"
    assert str(cc.t_inverse(q, "c")) == str(p)
    assert str(cc.s_move(cc.s_move(p))) == str(p)
    assert str(cc.apply_move(p, "Ut")) == "b c a / c b a"
    names = [name for name, _ in cc.neighbors(p)]
    assert names[0].startswith("T:")


def test_canonical():
    assert str(cc.parse("b c a / a c b").canonical()) == "a b c / c b a"
    assert cc.parse("a b c / a c b").is_canonical()


def test_enumeration():
    abelian = list(cc.enumerate("abelian", 3))
    assert len(abelian) == 6
    quadratic = list(cc.enumerate("quadratic", 2))
    assert [str(p) for p in quadratic] == ["a a / b b"]
    assert list(cc.enumerate("quadratic", 2, mixed=True)) == []
    h2 = list(cc.enumerate("abelian", 3, signature="H(2)"))
    assert len(h2) == 3
    assert cc.double_factorial_odd(4) == 105


def test_orbit_closure():
    r = cc.orbit_closure(cc.parse("a b c / c b a"), moves="T,Tinv,Ut,Ub")
    assert r.exhausted
    assert r.size == 3
    assert {str(p) for p in r.members} == {
        "a b c / a c b",
        "a b c / b a c",
        "a b c / c b a",
    }
    traced = cc.orbit_closure(cc.parse("a b b / c c a"), trace=True)
    target = traced.members[-1]
    path = traced.path_to(target)
    assert path is not None


def test_same_class():
    p = cc.parse("a b c / c b a")
    assert cc.same_class(p, cc.parse("a b c / b a c")) == "yes"
    assert cc.same_class(p, cc.parse("a b c / a b c")) == "no"
    assert cc.same_class(p, cc.parse("a b c / b a c"), max_states=1) == "unknown"


def test_partition():
    classes = cc.partition(list(cc.enumerate("abelian", 3)), moves="T,Tinv,Ut,Ub")
    assert [(c["signature"], c["size"]) for c in classes] == [
        ("H(0,0,0)", 3),
        ("H(2)", 3),
    ]


def test_classify():
    report = cc.classify("abelian", 4, workers=2)
    assert report["population"] == 24
    by_sig = {s["signature"]: s for s in report["signatures"]}
    assert by_sig["H(2,0)"]["class_count"] == 1
    assert by_sig["H(2,0)"]["reference"]["match"]

    exceptional = cc.classify("quadratic", 6, mixed=True, signature="Q(-1,9)")
    assert exceptional["signatures"][0]["class_count"] == 2


def test_polygon_and_svg():
    p = cc.parse("a b b / c c a")
    top, bottom = cc.polygon(p)
    assert top[0] == [0.0, 1.0]
    assert top[-1][0] == bottom[-1][0]
    svg1 = cc.polygon_svg(p)
    svg2 = cc.polygon_svg(p)
    assert svg1 == svg2
    assert "<svg" in svg1 and "</svg>" in svg1


def test_reference_lookup():
    entry = cc.reference_lookup("Q(-1,9)")
    assert entry["component_count"] == 2
    assert cc.reference_lookup("Q(2,2)") is None
