import itertools
import json
import pickle

import pytest
from hypothesis import given

from conftest import modal_formulas
from modal_corpus import formulas_up_to, formulas_with
from provlab.gl import (
    And, Atom, Bottom, Box, DerivationError, Diamond, Iff, Implies, KripkeModel, ModalParseError,
    NonTheorem, Not, Or, ResourceLimit, Theorem, Top, UnknownWorld, boxplus, check_derivation,
    check_verdict, decide, enumerate_refutation, global_consequence, model_check, parse_modal,
    to_text,
)
from provlab.gl.formula import atoms, subformulas
from provlab.gl.kripke import strict_orders, transitive_closure, truth_set
from provlab.gl.prover import Derivation, Sequent, minimize

p, q = Atom("p"), Atom("q")


# ---------------------------------------------------------------- formulas


def test_hash_consing():
    assert Implies(p, Box(q)) is Implies(Atom("p"), Box(Atom("q")))
    assert Not(p) is Implies(p, Bottom)
    assert pickle.loads(pickle.dumps(Box(p))) is Box(p)


def test_derived_connectives_normalize():
    assert Diamond(p) is Not(Box(Not(p)))
    assert Top() is Implies(Bottom, Bottom)
    assert And(p) is p
    assert And() is Top()
    assert Or(p, q) is Implies(Not(p), q)


@pytest.mark.parametrize(
    "text,canonical",
    [
        ("[](([]p)->p)->[]p", "[]([]p -> p) -> []p"),
        ("p -> q -> p", "p -> q -> p"),
        ("(p -> q) -> p", "(p -> q) -> p"),
        ("~[]ff", "~[]ff"),
        ("<>p", "<>p"),
        ("p & q | ~p", "p & q | ~p"),
        ("tt", "tt"),
    ],
)
def test_modal_printer(text, canonical):
    f = parse_modal(text)
    assert to_text(f) == canonical
    assert parse_modal(canonical) is f


@given(modal_formulas)
def test_modal_roundtrip(f):
    assert parse_modal(to_text(f)) is f


@pytest.mark.parametrize("bad", ["p ->", "[]", "(p", "p q", "p # q", "p <-> "])
def test_modal_parse_errors(bad):
    with pytest.raises(ModalParseError):
        parse_modal(bad)


def test_subformulas_and_atoms():
    f = parse_modal("[](p -> q) -> []p")
    assert set(atoms(f)) == {"p", "q"}
    assert Box(Implies(p, q)) in set(subformulas(f))


# ------------------------------------------------------------- semantics


def test_strict_order_counts():
    # labeled posets: 1, 3, 19, 219
    assert [len(strict_orders(n)) for n in range(1, 5)] == [1, 3, 19, 219]


def test_model_check_basics():
    m = KripkeModel(2, {(0, 1)}, {"p": {1}})
    assert model_check(m, 0, Box(p))
    assert not model_check(m, 0, p)
    assert model_check(m, 1, Box(Bottom))
    assert not model_check(m, 0, Box(Bottom))
    assert truth_set(m, Diamond(p)) == {0}
    with pytest.raises(UnknownWorld):
        model_check(m, 5, p)
    with pytest.raises(UnknownWorld):
        KripkeModel(1, {(0, 3)}, {})


def test_model_json_roundtrip():
    m = KripkeModel(3, transitive_closure(3, [(0, 1), (1, 2)]), {"p": {2}}, 0)
    assert m.is_gl_frame()
    assert KripkeModel.from_dict(json.loads(m.to_json())) == m


def test_refutation_oracle_finds_first_model():
    m = enumerate_refutation(Implies(Box(p), p), 4)
    assert m.worlds == 1 and not model_check(m, m.root, Implies(Box(p), p))
    assert enumerate_refutation(Implies(Box(Implies(Box(p), p)), Box(p)), 4) is None


# ----------------------------------------------------------------- prover


K_AXIOM = parse_modal("[](p -> q) -> []p -> []q")
FOUR = parse_modal("[]p -> [][]p")
LOEB = parse_modal("[]([]p -> p) -> []p")


@pytest.mark.parametrize("f", [K_AXIOM, FOUR, LOEB, parse_modal("[]ff -> []p"), parse_modal("~[]ff -> ~[]~[]ff")])
def test_gl_theorems(f):
    v = decide(f)
    assert isinstance(v, Theorem)
    assert check_verdict(v)


@pytest.mark.parametrize("text", ["[]p -> p", "p -> []p", "~[]ff", "<>tt", "[]([]p -> q) -> []q"])
def test_gl_non_theorems(text):
    f = parse_modal(text)
    v = decide(f)
    assert isinstance(v, NonTheorem)
    assert v.model.is_gl_frame()
    assert not model_check(v.model, v.model.root, f)
    assert check_verdict(v)


def test_k4_rejects_loeb_with_a_transitive_countermodel():
    for f in [LOEB, parse_modal("~[]ff -> ~[]~[]ff")]:
        v = decide(f, mode="k4")
        assert isinstance(v, NonTheorem)
        assert v.model.is_transitive()
        assert not v.model.is_irreflexive()
        assert check_verdict(v)


def test_k4_keeps_k_and_four():
    assert decide(K_AXIOM, "k4").is_theorem
    assert decide(FOUR, "k4").is_theorem


def test_minimal_countermodel_is_one_world():
    v = decide(Implies(Box(p), p))
    assert v.model.worlds == 1


def test_minimize_keeps_refutation():
    f = parse_modal("[]p -> p")
    big = KripkeModel(3, transitive_closure(3, [(0, 1), (1, 2)]), {"p": {1, 2}}, 0)
    small = minimize(big, f)
    assert small.worlds == 1
    assert not model_check(small, small.root, f)


def test_resource_limit():
    with pytest.raises(ResourceLimit) as info:
        decide(LOEB, budget=1)
    d = info.value.diagnostics()
    assert d["budget"] == 1 and d["nodes"] >= 1


def test_bad_mode():
    with pytest.raises(ValueError):
        decide(p, mode="s4")


def test_derivation_checker_rejects_tampering():
    v = decide(LOEB)
    check_derivation(v.derivation)
    with pytest.raises(DerivationError):
        check_derivation(v.derivation, mode="k4")
    fake = Derivation(Sequent(frozenset(), frozenset((p,))), "axiom", p, ())
    with pytest.raises(DerivationError):
        check_derivation(fake)
    with pytest.raises(DerivationError):
        check_verdict(Theorem(Box(p), v.derivation, 1))


def test_derivation_serializes():
    d = decide(LOEB).to_dict()
    json.dumps(d)
    assert d["verdict"] == "theorem"
    assert d["trace"]["nodes"][0]["rule"] == "imp_right"


def test_global_consequence():
    # from p as a global axiom, []p follows, but not from p as a local hypothesis
    assert global_consequence([p], Box(p)).is_theorem
    assert not decide(Implies(p, Box(p))).is_theorem
    assert global_consequence([], LOEB).is_theorem
    assert boxplus([p]) is And(And(p, Box(p)))


def test_iff_symmetry():
    assert decide(Iff(Iff(p, q), Iff(q, p))).is_theorem


# ------------------------------------------------------- oracle agreement


def _check_against_oracle(f, max_worlds=4):
    v = decide(f)
    if v.is_theorem:
        assert enumerate_refutation(f, max_worlds) is None, to_text(f)
        check_derivation(v.derivation)
    else:
        assert v.model.is_gl_frame()
        assert not model_check(v.model, v.model.root, f), to_text(f)


def test_corpus_counts():
    # c(0) = 2 and c(k) = c(k-1) + sum c(a) c(k-1-a)
    assert [len(formulas_with(k)) for k in range(6)] == [2, 6, 30, 186, 1290, 9582]


def test_oracle_agreement_small_corpus():
    for f in formulas_up_to(4):
        _check_against_oracle(f)


@given(modal_formulas)
def test_oracle_agreement_two_atoms(f):
    _check_against_oracle(f, max_worlds=3)


def _k4_frames(n):
    pairs = [(i, j) for i in range(n) for j in range(n)]
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        edges = frozenset(e for e, b in zip(pairs, bits) if b)
        if transitive_closure(n, edges) == edges:
            yield edges


def _k4_refutable(f, max_worlds=3):
    names = atoms(f)
    for n in range(1, max_worlds + 1):
        for edges in _k4_frames(n):
            for combo in itertools.product(range(1 << n), repeat=len(names)):
                val = {a: {w for w in range(n) if c >> w & 1} for a, c in zip(names, combo)}
                m = KripkeModel(n, edges, val)
                if truth_set(m, f) != frozenset(range(n)):
                    return True
    return False


def test_k4_agreement_with_transitive_frames():
    for f in formulas_up_to(3):
        v = decide(f, mode="k4")
        if v.is_theorem:
            assert not _k4_refutable(f), to_text(f)
        else:
            assert v.model.is_transitive()
            assert not model_check(v.model, v.model.root, f), to_text(f)


def test_oracle_box_p_needs_two_worlds():
    m = enumerate_refutation(Box(p), 2)
    assert m.worlds == 2
    (succ,) = m.successors(m.root)
    assert not model_check(m, succ, p)


def test_modal_second_incompleteness():
    con = Not(Box(Bottom))
    assert decide(Implies(con, Not(Box(con)))).is_theorem


def test_one_world_model():
    m = KripkeModel(1, set(), {})
    assert model_check(m, 0, Box(Bottom))
    assert not model_check(m, 0, Bottom)


def test_decide_is_deterministic():
    for f in formulas_up_to(3):
        a, b = decide(f), decide(f)
        assert a.kind == b.kind
        if not a.is_theorem:
            assert a.model == b.model


def test_global_consequence_is_monotone():
    extra = [Box(p), Implies(p, Box(Bottom)), Not(Box(Bottom))]
    for goal in formulas_up_to(2):
        if global_consequence([], goal).is_theorem:
            for ax in extra:
                assert global_consequence([ax], goal).is_theorem
        for ax in extra:
            if global_consequence([ax], goal).is_theorem:
                assert global_consequence([ax, Implies(p, p)], goal).is_theorem
