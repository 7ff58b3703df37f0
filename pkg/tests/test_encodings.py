import pytest

from provlab.encodings import (
    Query, at_least_day, blocked_step_verdict, body_box_count, build_paradox, build_schema,
    exactly_one, modalized_in, paradox_goal, paradox_verdict, schema_consistency_check,
    schema_inconsistency_verdict, second_incompleteness_verdict,
)
from provlab.gl import (
    Atom, Bottom, Box, Implies, KripkeModel, Not, Top, check_verdict, decide, global_consequence,
    model_check,
)
from provlab.gl.formula import rename
from provlab.gl.kripke import truth_set


def _verified(v):
    assert check_verdict(v)
    return v


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_plain_paradox_is_self_refuting(n):
    v = _verified(paradox_verdict(build_paradox(n, "plain"), Query.SELF_REFUTING))
    assert v.is_theorem


@pytest.mark.parametrize("n", [2, 3])
def test_exclusive_paradox_is_not_self_refuting(n):
    p = build_paradox(n, "exclusive")
    v = _verified(paradox_verdict(p, Query.SELF_REFUTING))
    assert not v.is_theorem
    m = v.model
    # the countermodel satisfies the fixed-point axiom everywhere and s at the root
    assert truth_set(m, p.axiom) == frozenset(range(m.worlds))
    assert model_check(m, m.root, p.s)


def test_one_day_variants_coincide():
    assert build_paradox(1, "plain").body is build_paradox(1, "exclusive").body


@pytest.mark.parametrize("n", [2, 3])
def test_relativized_last_day_query(n):
    v = _verified(paradox_verdict(build_paradox(n, "exclusive"), Query.CON_RELATIVIZED_LAST_DAY))
    assert v.is_theorem


def test_unrelativized_last_day_query_has_countermodel():
    # T+S may prove "not on the last day" outright while staying consistent
    p = build_paradox(2, "exclusive")
    v = _verified(paradox_verdict(p, Query.CON_CONDITIONAL_LAST_DAY))
    assert not v.is_theorem
    m = v.model
    assert truth_set(m, p.axiom) == frozenset(range(m.worlds))


def test_blocked_step_is_not_derivable():
    p = build_paradox(2, "exclusive")
    assert not _verified(blocked_step_verdict(p, 1)).is_theorem


def test_self_reference_is_modalized():
    for variant in ("plain", "exclusive"):
        p = build_paradox(3, variant)
        assert modalized_in(p.body, p.s)
        assert not modalized_in(Implies(p.s, p.body), p.s)


def test_box_counts():
    assert body_box_count(build_paradox(3, "plain")) == 3
    assert body_box_count(build_paradox(3, "exclusive")) == 9


def test_goal_shapes():
    p = build_paradox(2, "plain")
    assert paradox_goal(p, "self-refuting") is Not(p.s)
    assert at_least_day(p.days, 1) is Top()
    assert at_least_day(p.days, 2) is Not(p.days[0])
    with pytest.raises(ValueError):
        paradox_goal(p, "bogus")
    with pytest.raises(ValueError):
        build_paradox(0)


def test_exactly_one():
    a, b = Atom("a"), Atom("b")
    f = exactly_one([a, b])
    for val, expect in [({"a": {0}}, True), ({"a": {0}, "b": {0}}, False), ({}, False)]:
        assert model_check(KripkeModel(1, set(), val), 0, f) is expect


@pytest.mark.parametrize("N", [1, 2, 3])
def test_second_incompleteness(N):
    assert _verified(second_incompleteness_verdict(build_schema(N))).is_theorem


@pytest.mark.parametrize("N", [2, 3])
def test_schema_is_consistent_for_several_candidates(N):
    assert not _verified(schema_consistency_check(build_schema(N))).is_theorem


def test_single_candidate_schema_is_inconsistent():
    assert _verified(schema_inconsistency_verdict(build_schema(1))).is_theorem
    with pytest.raises(ValueError):
        schema_consistency_check(build_schema(1))


def test_incompleteness_needs_the_schema():
    # without Loeb the bare statement fails; the counting schema restores it
    bare = Implies(Box(Not(Box(Bottom))), Box(Bottom))
    assert _verified(decide(bare)).is_theorem
    assert not _verified(decide(bare, mode="k4")).is_theorem
    assert _verified(second_incompleteness_verdict(build_schema(2), mode="k4")).is_theorem


def test_schema_shape():
    s = build_schema(2)
    assert [a.name for a in s.atoms] == ["k0", "k1"]
    with pytest.raises(ValueError):
        build_schema(0)


@pytest.mark.parametrize("variant", ["plain", "exclusive"])
@pytest.mark.parametrize("query", list(Query))
def test_verdicts_invariant_under_renaming(variant, query):
    p = build_paradox(3, variant)
    perm = {"s": "z", "d1": "d3", "d2": "d1", "d3": "d2"}
    direct = paradox_verdict(p, query)
    renamed = global_consequence([rename(p.axiom, perm)], rename(paradox_goal(p, query), perm))
    assert direct.kind == renamed.kind
    assert check_verdict(renamed)
