import itertools
import json

import pytest

from provlab.hilbert import (
    Given, HilbertProof, Line, ModusPonens, PropAxiom, Sigma1Witness, TheoryConfig, _line_menu,
    chaitin_extract, check, enumerate_proofs, inconsistency_scan, load_axioms, schema_instance,
)
from provlab.syntax import Eq, Implies, KLe, Lit, Not, Zero, parse

ZZ = Eq(Zero(), Zero())
RIGGED = TheoryConfig((parse("~KLe(lit 3, lit 2)"),))
LIAR = TheoryConfig((parse("~KLe(lit 1, lit 2)"),), sigma1_rule_enabled=True)


def test_schema_instances():
    a, b = ZZ, parse("KLe(lit 1, lit 2)")
    assert schema_instance(1, a, b) == Implies(a, Implies(b, a))
    assert schema_instance(3, a, b) == Implies(Implies(Not(b), Not(a)), Implies(a, b))
    with pytest.raises(ValueError):
        schema_instance(2, a, b)
    with pytest.raises(ValueError):
        schema_instance(4, a, b)


def test_checker_accepts_modus_ponens_chain():
    t = TheoryConfig((ZZ,))
    ax = schema_instance(1, ZZ, ZZ)
    proof = HilbertProof((
        Line(ZZ, Given(0)),
        Line(ax, PropAxiom(1, ZZ, ZZ)),
        Line(Implies(ZZ, ZZ), ModusPonens(1, 0)),
    ))
    assert check(t, proof)


@pytest.mark.parametrize(
    "lines,bad_line",
    [
        ((), None),
        ((Line(ZZ, Given(0)),), 0),
        ((Line(ZZ, PropAxiom(1, ZZ, ZZ)),), 0),
        ((Line(KLe(Lit(1), Lit(2)), Sigma1Witness(1, 2, "00")),), 0),
        ((Line(ZZ, ModusPonens(0, 0)),), 0),
    ],
)
def test_checker_rejects(lines, bad_line):
    r = check(TheoryConfig(), HilbertProof(lines))
    assert not r
    assert r.line == bad_line


def test_sigma1_witness_is_rerun():
    t = TheoryConfig(sigma1_rule_enabled=True)
    good = HilbertProof((Line(KLe(Lit(2), Lit(4)), Sigma1Witness(2, 4, "0001")),))
    assert check(t, good)
    wrong_output = HilbertProof((Line(KLe(Lit(3), Lit(4)), Sigma1Witness(3, 4, "0001")),))
    assert check(t, wrong_output).reason.startswith("program does not output")
    too_long = HilbertProof((Line(KLe(Lit(2), Lit(2)), Sigma1Witness(2, 2, "0001")),))
    assert not check(t, too_long)


def test_proof_serialization():
    p = HilbertProof((Line(ZZ, Given(0)),))
    assert p.serialize().hex() == "01" "100101" "0100"
    assert json.loads(p.to_json()) == [{"formula": "0 = 0", "just": {"rule": "given", "index": 0}}]


def _reference_order(t):
    """All checked proofs of <= max_lines lines, sorted by (size, bytes)."""
    menu = _line_menu(t)
    found = []

    def grow(prefix):
        if prefix:
            proof = HilbertProof(tuple(prefix))
            if check(t, proof):
                found.append(proof)
        if len(prefix) == t.max_lines:
            return
        options = list(menu)
        for i, j in itertools.product(range(len(prefix)), repeat=2):
            major = prefix[i].formula
            if isinstance(major, Implies):
                options.append(Line(major.r, ModusPonens(i, j)))
        for line in options:
            grow(prefix + [line])

    grow([])
    return sorted(found, key=lambda p: (len(p.serialize()), p.serialize()))


def test_enumeration_matches_sorted_reference():
    t = TheoryConfig((parse("~KLe(lit 3, lit 2)"),), max_lines=2, max_formula_bytes=12,
                     instance_pool=(ZZ,))
    expected = _reference_order(t)
    got = list(enumerate_proofs(t, 10**6))
    assert [p.serialize() for p in got] == [p.serialize() for p in expected]
    assert len(got) > 3


def test_enumeration_is_sorted_and_checked():
    got = list(itertools.islice(enumerate_proofs(LIAR, 5000), 200))
    keys = [(len(p.serialize()), p.serialize()) for p in got]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert all(check(LIAR, p) for p in got)


def test_budget_limits_inspection():
    assert list(enumerate_proofs(RIGGED, 0)) == []
    with pytest.raises(ValueError):
        list(enumerate_proofs(RIGGED, -1))


def test_chaitin_extract_rigged():
    x, proof = chaitin_extract(RIGGED, 2, 10_000)
    assert x == 3
    assert check(RIGGED, proof)
    assert proof.lines == (Line(parse("~KLe(lit 3, lit 2)"), Given(0)),)


def test_chaitin_extract_respects_the_bound():
    assert chaitin_extract(RIGGED, 3, 2000) is None


def test_empty_theory_proves_no_incompressibility():
    t = TheoryConfig(sigma1_rule_enabled=True)
    assert chaitin_extract(t, 2, 5000) is None
    assert inconsistency_scan(t, 5000) is None


def test_inconsistency_scan_finds_the_pair():
    pos, neg = inconsistency_scan(LIAR, 10_000)
    assert check(LIAR, pos) and check(LIAR, neg)
    assert neg.conclusion == Not(pos.conclusion)
    assert pos.conclusion == KLe(Lit(1), Lit(2))


def test_load_axioms(tmp_path):
    f = tmp_path / "ax.txt"
    f.write_text("# comment\n\n~KLe(lit 3, lit 2)\n0 = 0\n", encoding="utf-8")
    assert load_axioms(f) == (parse("~KLe(lit 3, lit 2)"), ZZ)


def test_config_validation():
    with pytest.raises(ValueError):
        TheoryConfig(max_lines=0)


def test_enumeration_deterministic():
    a = [p.serialize() for p in enumerate_proofs(LIAR, 3000)]
    b = [p.serialize() for p in enumerate_proofs(LIAR, 3000)]
    assert a == b and a


def test_empty_theory_only_uses_axioms_and_mp():
    for proof in itertools.islice(enumerate_proofs(TheoryConfig(), 3000), 100):
        assert all(isinstance(l.just, (PropAxiom, ModusPonens)) for l in proof.lines)


def test_extraction_is_first_claim_in_stream():
    t = TheoryConfig((parse("(0 = 0) -> ~KLe(lit 5, lit 4)"), parse("0 = 0"), parse("~KLe(lit 3, lit 2)")))
    x, proof = chaitin_extract(t, 2, 50_000)
    for earlier in enumerate_proofs(t, 50_000):
        if earlier.serialize() == proof.serialize():
            break
        c = earlier.conclusion
        assert not (isinstance(c, Not) and isinstance(c.f, KLe))
    assert x == 3
