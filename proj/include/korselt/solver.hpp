#pragma once

#include <vector>

#include "korselt/arith.hpp"
#include "korselt/core.hpp"

namespace korselt {

enum class Domain { kQ, kZ };

/// All squarefree composite N <= limit (N != alpha) for which alpha is a Korselt base.
struct BaseSetRecord {
    Rational alpha;
    Int limit = 0;
    std::vector<Int> members;

    [[nodiscard]] std::size_t weight() const { return members.size(); }
};

/// Q-Korselt set of N by divisor-pair search.
///
/// For a reduced base a1/a2 and any prime p | N, (a2 p - a1) | (a2 N - a1) is
/// equivalent to (a2 p - a1) | (N - p), because the two differ by a2 (N - p)
/// and gcd(a2 p - a1, a2) = 1. So with d = a2 p1 - a1 and e = a2 p2 - a1 we
/// need d | N - p1, e | N - p2 and e - d = a2 (p2 - p1). Enumerating the
/// signed divisor pairs (d, e) yields every candidate exactly once in reduced
/// form; the remaining primes are then checked directly.
KorseltSet q_korselt_set(const SquarefreeFactorization& f);

/// Independent reference: scans M(k, p_1) for |k| <= 2 N^2 and tests each
/// candidate against the definition. Quadratic in N; meant for N up to ~1000.
///
/// The window is complete: a base a1/a2 has a2 <= (2N - p1 - p2)/(p2 - p1) < 2N,
/// and k + 1 = -(N - p1) a2 / d with d = a2 p1 - a1 a nonzero integer, so
/// |k + 1| <= (N - p1) a2 < 2 N^2 - 1.
KorseltSet oracle_q_korselt_set(const SquarefreeFactorization& f);

/// Half-width of the oracle's k-window for N.
Int oracle_window(Int n);

KorseltSet z_korselt_set(const SquarefreeFactorization& f);

std::size_t korselt_weight(const SquarefreeFactorization& f, Domain domain);

/// Throws std::domain_error for alpha == 0 or limit < 6.
BaseSetRecord base_set(const Rational& alpha, Int limit);

/// Korselt's criterion: n squarefree composite and (p - 1) | (n - 1) for all p | n.
bool is_carmichael(Int n);

std::vector<Int> carmichael_scan(Int limit);

}  // namespace korselt
