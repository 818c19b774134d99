from __future__ import annotations

from itertools import islice

import pytest

from layerlat import fixtures, ogroup as og
from layerlat.bunch import (Bunch, BunchType, bunch_from_json, bunch_type,
                            parse_bunch, serialize_bunch, transition, validate)
from layerlat.errors import LayerOrderError, ParseError, UnknownLayer


def test_s3_validates_every_clause():
    report = validate(fixtures.s3())
    assert report.ok
    clauses = {c.clause for c in report.checks}
    assert {"structure", "G1", "D1", "G3", "D2"} <= clauses


def test_trivial_group_cannot_be_class_j():
    bad = Bunch(("t", "u"), {"t": "O", "u": "J"},
                {"t": og.TRIVIAL, "u": og.TRIVIAL}, {},
                {("t", "u"): og.unit_map(og.TRIVIAL, og.TRIVIAL)})
    report = validate(bad)
    assert not report.ok
    assert any(c.clause == "G2" and not c.ok for c in report.checks)


def test_identity_step_misses_proper_subgroup():
    bad = Bunch(("t", "u"), {"t": "O", "u": "I"},
                {"t": og.INT, "u": og.INT},
                {"u": og.int_multiples(2)},
                {("t", "u"): og.identity(og.INT)})
    report = validate(bad)
    assert not report.ok
    violation = next(c for c in report.checks if c.clause == "G3" and not c.ok)
    assert violation.method == "sampled"
    assert "1" in violation.detail  # the single counterexample element


def test_g2_transition_clause():
    # a class-J layer below another layer must collapse the unit's lower cover
    good = Bunch(("t", "u"), {"t": "J", "u": "I"},
                 {"t": og.INT, "u": og.TRIVIAL},
                 {"u": og.whole(og.TRIVIAL)},
                 {("t", "u"): og.unit_map(og.INT, og.TRIVIAL)})
    assert validate(good).ok
    bad = Bunch(("t", "u"), {"t": "J", "u": "I"},
                {"t": og.INT, "u": og.INT},
                {"u": og.whole(og.INT)},
                {("t", "u"): og.identity(og.INT)})
    report = validate(bad)
    assert any(c.clause == "G2" and not c.ok and c.method == "exact"
               for c in report.checks)


def test_g1_rejects_non_least_class_o():
    bad = Bunch(("t", "u"), {"t": "O", "u": "O"},
                {"t": og.TRIVIAL, "u": og.TRIVIAL}, {},
                {("t", "u"): og.unit_map(og.TRIVIAL, og.TRIVIAL)})
    report = validate(bad)
    assert any(c.clause == "G1" and not c.ok for c in report.checks)


def test_validation_report_states_method_per_clause():
    report = validate(fixtures.lz2())
    g3 = [c for c in report.checks if c.clause == "G3"]
    assert g3 and all(c.method in ("structural", "sampled") for c in g3)
    # the doubling step into the even-multiples subgroup needs sampling
    assert any(c.method == "sampled" for c in g3)


def test_transition_identity_and_composition():
    b = fixtures.zb()
    ident = transition(b, "u", "u")
    assert og.hom_apply(ident, og.UNIT) == og.UNIT
    step = transition(b, "t", "u")
    assert og.hom_apply(step, 7) == og.UNIT

    three = Bunch(("t", "u", "v"), {"t": "O", "u": "J", "v": "J"},
                  {"t": og.INT, "u": og.INT, "v": og.INT}, {},
                  {("t", "u"): og.scale_int(2), ("u", "v"): og.scale_int(3)})
    composed = transition(three, "t", "v")
    # evaluate the two steps one after the other
    staged = og.hom_apply(og.scale_int(3), og.hom_apply(og.scale_int(2), 1))
    assert og.hom_apply(composed, 1) == staged == 6


def test_transition_errors():
    b = fixtures.zb()
    with pytest.raises(LayerOrderError):
        transition(b, "u", "t")
    with pytest.raises(UnknownLayer):
        transition(b, "t", "nope")


def test_transition_functorial_on_samples():
    for mk in (fixtures.lz2, lambda: fixtures.finite_bunch(7)):
        b = mk()
        sk = b.skeleton
        for i in range(len(sk)):
            for j in range(i, len(sk)):
                for k in range(j, len(sk)):
                    direct = og.hom_fn(transition(b, sk[i], sk[k]))
                    via = (og.hom_fn(transition(b, sk[j], sk[k])),
                           og.hom_fn(transition(b, sk[i], sk[j])))
                    for x in islice(og.g_enumerate(b.groups[sk[i]]), 50):
                        assert direct(x) == via[0](via[1](x))


def test_bunch_type_examples():
    assert bunch_type(fixtures.s3()) == BunchType.ODD
    assert bunch_type(fixtures.ze()) == BunchType.EVEN_NON_IDEM_F
    even_idem = Bunch(("t",), {"t": "I"}, {"t": og.TRIVIAL},
                      {"t": og.whole(og.TRIVIAL)}, {})
    assert bunch_type(even_idem) == BunchType.EVEN_IDEM_F


@pytest.mark.parametrize("name", sorted(fixtures.ALL))
def test_serialize_parse_round_trip(name):
    b = fixtures.ALL[name]()
    assert parse_bunch(serialize_bunch(b)) == b


def test_parse_missing_subgroup_is_an_error():
    doc = {
        "skeleton": ["t", "u"],
        "partition": {"t": "O", "u": "I"},
        "groups": {"t": "trivial", "u": "trivial"},
        "subgroups": {},
        "steps": {"t->u": "unit"},
    }
    with pytest.raises(ParseError, match="subgroups.u"):
        bunch_from_json(doc)


def test_parse_accepts_non_ascending_labels():
    # list order defines the skeleton order, not label comparison
    doc = {
        "skeleton": ["z", "a"],
        "partition": {"z": "O", "a": "I"},
        "groups": {"z": "trivial", "a": "trivial"},
        "subgroups": {"a": "whole"},
        "steps": {"z->a": "unit"},
    }
    b = bunch_from_json(doc)
    assert b.least() == "z"
    assert validate(b).ok


def test_parse_rejects_malformed_documents():
    with pytest.raises(ParseError, match="line 1"):
        parse_bunch("{nope")
    with pytest.raises(ParseError, match="steps"):
        bunch_from_json({"skeleton": ["t"], "partition": {"t": "O"},
                         "groups": {"t": "int"}})
    with pytest.raises(ParseError, match="partition"):
        bunch_from_json({"skeleton": ["t"], "partition": {"t": "X"},
                         "groups": {"t": "int"}, "steps": {}})
