#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "korselt/arith.hpp"
#include "korselt/rational.hpp"

namespace korselt {

/// Which candidate attains min(M(m-1, p_{m-1}), M(m, p_m)).
enum class UpperArgmin { kPenultimate, kLast, kTie };

std::string_view to_string(UpperArgmin a);

struct BoundsReport {
    Int n = 0;
    Rational lower;  // M(-m-2, p_1)
    Rational upper;  // min(M(m-1, p_{m-1}), M(m, p_m))
    UpperArgmin upper_argmin = UpperArgmin::kTie;
};

/// The Korselt set of N over Q (or a subset of it), sorted ascending.
/// Never contains 0 or N itself.
class KorseltSet {
public:
    KorseltSet() = default;
    /// Sorts and deduplicates. Throws std::domain_error if 0 or n is present.
    KorseltSet(Int n, std::vector<Rational> bases);

    [[nodiscard]] Int n() const { return n_; }
    [[nodiscard]] const std::vector<Rational>& bases() const { return bases_; }
    [[nodiscard]] std::size_t weight() const { return bases_.size(); }
    [[nodiscard]] bool contains(const Rational& alpha) const;

    /// beta_1 < ... < beta_t < 0
    [[nodiscard]] std::span<const Rational> negatives() const;
    /// 0 < gamma_1 < ... < gamma_r
    [[nodiscard]] std::span<const Rational> positives() const;

    /// Integer members only (the Z-Korselt set).
    [[nodiscard]] KorseltSet integers() const;

    friend bool operator==(const KorseltSet&, const KorseltSet&) = default;

private:
    Int n_ = 0;
    std::vector<Rational> bases_;
    std::size_t first_positive_ = 0;
};

/// True iff (a2*p - a1) | (a2*N - a1) for every prime p | N, alpha = a1/a2.
/// A zero divisor divides only zero. Throws std::domain_error for alpha in {0, N}.
bool is_korselt_base(const SquarefreeFactorization& f, const Rational& alpha);

/// M(k, p) = (N + k p) / (k + 1). Throws std::domain_error for k == -1 or p not dividing n.
Rational m_value(Int n, Int k, Int p);

BoundsReport korselt_bounds(const SquarefreeFactorization& f);

/// Smallest j in 1..m with M(j, p_j) in ks, if any.
std::optional<std::size_t> upper_attainment(const SquarefreeFactorization& f, const KorseltSet& ks);

}  // namespace korselt
