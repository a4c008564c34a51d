#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "korselt/rational.hpp"

namespace korselt {

class NotSquarefree : public std::domain_error {
public:
    NotSquarefree(Int n, Int p);
    Int n;
    Int repeated_prime;
};

class NotComposite : public std::domain_error {
public:
    explicit NotComposite(Int n);
    Int n;
};

/// N = p_1 * ... * p_m with p_1 < ... < p_m, m >= 2.
struct SquarefreeFactorization {
    Int n = 0;
    std::vector<Int> primes;

    [[nodiscard]] std::size_t m() const { return primes.size(); }
    /// 1-based access matching the usual p_1..p_m labeling.
    [[nodiscard]] Int p(std::size_t i) const { return primes.at(i - 1); }

    friend bool operator==(const SquarefreeFactorization&, const SquarefreeFactorization&) = default;
};

Int gcd(Int a, Int b);

/// Deterministic Miller-Rabin for all 64-bit inputs (bases 2..37).
bool is_prime(Int n);

/// Prime factors with multiplicity, ascending. n >= 1.
std::vector<Int> factor(Int n);

/// Throws NotComposite for primes (and n < 2), NotSquarefree on a repeated factor.
SquarefreeFactorization factor_squarefree(Int n);

/// Non-throwing variant for range scans: empty optional when n is not squarefree composite.
std::optional<SquarefreeFactorization> try_factor_squarefree(Int n);

/// Positive divisors of n >= 1, ascending.
std::vector<Int> divisors(Int n);

/// Every d with d | n, both signs, ascending. Length 2*tau(n).
std::vector<Int> signed_divisors(Int n);

}  // namespace korselt
