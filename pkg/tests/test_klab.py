import itertools
import json

import pytest
from hypothesis import given, strategies as st

from provlab.klab import (
    CeilingExceeded, Program, census, kolmogorov, program_count, programs, run, sweep, witness,
)


def _brute_outputs(L):
    """Independent reference: every bit string of length <= L, own interpreter."""
    outs = {}
    for n in range(L + 1):
        for bits in itertools.product("01", repeat=n):
            if n % 2:
                continue
            acc = 0
            for k in range(0, n, 2):
                op = bits[k] + bits[k + 1]
                if op == "11":
                    break
                acc = {"00": acc + 1, "01": 2 * acc, "10": acc * acc}[op]
            outs.setdefault(acc, n)
    return outs


def test_run_oracles():
    assert run("") == 0
    assert run("00") == 1
    assert run("0001") == 2
    assert run("000110") == 4
    assert run("001100") == 1  # halts before the second INC
    assert run("0") is None


def test_program_rejects_non_bits():
    with pytest.raises(ValueError):
        Program("012")


def test_program_order_is_length_lex():
    assert [p.bits for p in programs(2)] == ["", "00", "01", "10", "11"]
    assert program_count(2) == 5
    assert program_count(3) == 5
    assert program_count(4) == 21


def test_kolmogorov_oracles():
    assert kolmogorov(0, 4) == 0
    assert kolmogorov(1, 4) == 2
    assert kolmogorov(2, 4) == 4
    assert kolmogorov(3, 4) is None
    assert kolmogorov(3, 6) == 6
    assert witness(1, 2) == Program("00")
    assert witness(3, 2) is None
    with pytest.raises(ValueError):
        witness(-1, 2)


def test_census_spot_values():
    r = census(2)
    assert r.m == 7
    assert r.program_count == 5
    assert r.range_max == 8
    assert r.k_values[0] == 0 and r.k_values[1] == 2 and r.k_values[2] is None


# m(L) for L = 0..12 from the independent interpreter above
M_TABLE = [2, 4, 7, 15, 30, 62, 124, 252, 503, 1015, 2028, 4076, 8144]


def test_m_table_matches_independent_enumeration():
    for L in range(9):
        outs = _brute_outputs(L)
        top = 2 ** (L + 1)
        assert M_TABLE[L] == sum(1 for x in range(top + 1) if x not in outs)


def test_census_matches_table_and_bounds():
    for r in sweep(12):
        assert r.m == M_TABLE[r.L]
        assert 1 <= r.m <= 2 ** (r.L + 1) + 1
        assert r.program_count < 2 ** (r.L + 1)


@given(st.integers(0, 8))
def test_census_agrees_with_kolmogorov(L):
    r = census(L)
    outs = _brute_outputs(L)
    for x, k in r.k_values.items():
        assert k == outs.get(x)
        if k is not None:
            assert run(r.witnesses[x]) == x and len(r.witnesses[x]) == k


def test_ceiling():
    with pytest.raises(CeilingExceeded):
        census(17)
    assert census(3, ceiling=3).L == 3
    with pytest.raises(ValueError):
        census(-1)


def test_report_serialization():
    r = census(3)
    d = json.loads(r.to_json())
    assert d["m"] == 15 and len(d["k_values"]) == 17
    assert "m = 15 of 17" in r.table()


@given(st.integers(0, 300), st.integers(0, 10), st.integers(0, 4))
def test_kolmogorov_is_stable_once_found(x, a, extra):
    k = kolmogorov(x, a)
    if k is not None:
        assert kolmogorov(x, a + 2 * extra) == k


def test_witness_is_tight():
    r = census(8)
    for x, k in r.k_values.items():
        if k is not None:
            assert run(witness(x, k)) == x
            if k >= 2:
                assert witness(x, k - 1) is None


def test_census_deterministic():
    assert census(6).to_json() == census(6).to_json()
