#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "korselt/core.hpp"

namespace korselt::verify {

enum class CheckId {
    kProp23Pos,
    kProp23Neg,
    kProp23K3,
    kLemma24Delta,
    kLemma24Gamma,
    kThm25Bounds,
    kThm25Theta,
    kThm27Attain,
    kProp21Oracle,
};

/// Every check, in report order.
const std::vector<CheckId>& all_checks();
std::string_view to_string(CheckId id);
std::optional<CheckId> parse_check(std::string_view name);

/// A concrete counterexample: the relation that should hold, its two sides
/// evaluated exactly, and the indices it was instantiated at.
struct Failure {
    Int n = 0;
    std::string relation;
    Rational lhs;
    Rational rhs;
    std::vector<std::pair<std::string, Int>> indices;

    [[nodiscard]] std::string describe() const;
};

struct TheoremReport {
    CheckId check_id = CheckId::kProp23Pos;
    Int n_lo = 0;
    Int n_hi = 0;
    std::size_t tested_count = 0;
    std::size_t vacuous_count = 0;  // N where the claim had nothing to check
    std::vector<Failure> failures;

    [[nodiscard]] bool passed() const { return failures.empty(); }
};

// Individual checks. ks must be the Q-Korselt set of f (or a deliberately
// altered one, when testing the checks themselves). An empty result is a pass.

/// gamma_i <= M(j + r - i, p_j) for all (i, j), and gamma_r <= N - 1.
std::optional<Failure> check_prop23_pos(const SquarefreeFactorization& f, const KorseltSet& ks);
/// M(j - m - s - 2, p_j) <= beta_s for all (s, j).
std::optional<Failure> check_prop23_neg_bounds(const SquarefreeFactorization& f, const KorseltSet& ks);
/// (N - beta_1) / (p_m - beta_1) is an integer >= 3.
std::optional<Failure> check_prop23_k3(const SquarefreeFactorization& f, const KorseltSet& ks);
/// Both negative-side claims.
std::optional<Failure> check_prop23_neg(const SquarefreeFactorization& f, const KorseltSet& ks);

/// M(j, p_j) - M(j + 2, p_{j+2}) > 0 for j = 1..m-2.
std::optional<Failure> check_lemma24_delta(const SquarefreeFactorization& f);
/// M(j - m - 3, p_j) - M(j - m - 1, p_{j+2}) > 0 for j = 1..m-2.
std::optional<Failure> check_lemma24_gamma(const SquarefreeFactorization& f);
std::optional<Failure> check_lemma24(const SquarefreeFactorization& f);

/// Every base lies in [lower, upper] of korselt_bounds.
std::optional<Failure> check_thm25_bounds(const SquarefreeFactorization& f, const KorseltSet& ks);
/// M(-m-2, p_1) > M(-m-1, p_2); only asserted for m >= 3.
std::optional<Failure> check_thm25_theta(const SquarefreeFactorization& f);
std::optional<Failure> check_thm25(const SquarefreeFactorization& f, const KorseltSet& ks);

/// upper_attainment(f, ks) is some j  <=>  m == 2 and p_1 == 2.
std::optional<Failure> check_thm27(const SquarefreeFactorization& f, const KorseltSet& ks);

/// q_korselt_set(f) equals oracle_q_korselt_set(f).
std::optional<Failure> check_prop21_oracle(const SquarefreeFactorization& f, const KorseltSet& ks);

/// True when the check has nothing to assert for this N (e.g. t = 0, m = 2).
bool is_vacuous(CheckId id, const SquarefreeFactorization& f, const KorseltSet& ks);

std::optional<Failure> run_check(CheckId id, const SquarefreeFactorization& f, const KorseltSet& ks);

/// Runs each selected check over every squarefree composite in [n_lo, n_hi].
/// Reports come back in all_checks() order, failures ascending by N.
std::vector<TheoremReport> run_suite(Int n_lo, Int n_hi, const std::vector<CheckId>& checks);

/// Merges reports of adjacent or disjoint ranges for the same checks.
std::vector<TheoremReport> merge_reports(std::vector<std::vector<TheoremReport>> parts);

}  // namespace korselt::verify
