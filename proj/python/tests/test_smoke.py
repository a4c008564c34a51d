import json
import os
import subprocess
from fractions import Fraction

import pytest

import korselt
from korselt import Rational


def fr(values):
    return [korselt.to_fraction(v) for v in values]


def test_rational_is_canonical():
    assert Rational(6, 4) == Rational(3, 2)
    assert (Rational(5, -2).num, Rational(5, -2).den) == (-5, 2)
    assert str(Rational(0, 7)) == "0"
    assert Rational.parse("10/4") == Rational(5, 2)
    with pytest.raises(ValueError):
        Rational(1, 0)


def test_factorization_errors():
    assert korselt.factor_squarefree(30).primes == [2, 3, 5]
    with pytest.raises(korselt.NotSquarefree):
        korselt.factor_squarefree(12)
    with pytest.raises(korselt.NotComposite):
        korselt.factor_squarefree(13)


def test_sets_match_table_rows():
    assert fr(korselt.q_korselt_set(14)) == [Fraction(7, 2), 6, 8]
    assert fr(korselt.q_korselt_set(66)) == [Fraction(11, 6), Fraction(22, 7), 6, 10]
    assert fr(korselt.z_korselt_set(15)) == [4, 6, 7]
    assert korselt.q_korselt_set(10) == korselt.oracle_q_korselt_set(10)


def test_weights_and_bounds():
    assert korselt.korselt_weight(22) == 1
    assert korselt.korselt_weight(71 * 73, "q") == 285
    assert korselt.korselt_weight(71 * 73, "z") == 9
    lower, upper, which = korselt.korselt_bounds(15)
    assert (korselt.to_fraction(lower), korselt.to_fraction(upper)) == (-1, Fraction(25, 3))
    assert which == "M(m,p_m)"
    assert korselt.upper_attainment(10) == 1
    assert korselt.upper_attainment(15) is None


def test_predicate_accepts_ints_and_rationals():
    assert korselt.is_korselt_base(10, Rational(5, 2))
    assert korselt.is_korselt_base(14, 8)
    assert not korselt.is_korselt_base(10, 7)
    with pytest.raises(ValueError):
        korselt.is_korselt_base(10, 10)


def test_base_set_and_carmichael():
    assert 22 in korselt.base_set(12, 30)
    assert korselt.carmichael_scan(2000) == [561, 1105, 1729]
    assert korselt.is_carmichael(561)


def test_run_suite_passes():
    reports = korselt.run_suite(6, 2000, ["thm25_bounds", "thm27_attain"], jobs=2)
    assert [r["check_id"] for r in reports] == ["thm25_bounds", "thm27_attain"]
    assert all(not r["failures"] for r in reports)


def test_scan_record_matches_cli():
    line = korselt.scan_record_json(10)
    rec = json.loads(line)
    assert rec["weight_q"] == 5 and rec["attained_j"] == 1
    cli = os.environ.get("KORSELT_CLI")
    if not cli:
        pytest.skip("CLI path not provided")
    out = subprocess.run([cli, "scan", "--range", "10", "10"], capture_output=True, text=True, check=True)
    assert out.stdout == line + "\n"
