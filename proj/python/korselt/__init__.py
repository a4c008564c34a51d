"""Exact rational Korselt sets, weights, bounds and Carmichael scans."""

from fractions import Fraction

from ._korselt import (
    NotComposite,
    NotSquarefree,
    Rational,
    SquarefreeFactorization,
    base_set,
    carmichael_scan,
    factor_squarefree,
    is_carmichael,
    is_korselt_base,
    is_prime,
    korselt_bounds,
    korselt_weight,
    m_value,
    oracle_q_korselt_set,
    q_korselt_set,
    reduce,
    run_suite,
    scan_record_json,
    signed_divisors,
    upper_attainment,
    z_korselt_set,
)


def to_fraction(r: Rational) -> Fraction:
    return Fraction(r.num, r.den)


__all__ = [
    "NotComposite",
    "NotSquarefree",
    "Rational",
    "SquarefreeFactorization",
    "base_set",
    "carmichael_scan",
    "factor_squarefree",
    "is_carmichael",
    "is_korselt_base",
    "is_prime",
    "korselt_bounds",
    "korselt_weight",
    "m_value",
    "oracle_q_korselt_set",
    "q_korselt_set",
    "reduce",
    "run_suite",
    "scan_record_json",
    "signed_divisors",
    "to_fraction",
    "upper_attainment",
    "z_korselt_set",
]
