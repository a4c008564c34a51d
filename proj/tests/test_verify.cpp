#include <doctest.h>

#include "korselt/batch.hpp"
#include "korselt/solver.hpp"
#include "korselt/verify.hpp"
#include "oracles.hpp"

using namespace korselt;
using namespace korselt::verify;

namespace {

Rational q(Int a, Int b = 1) { return reduce(a, b); }

struct Instance {
    SquarefreeFactorization f;
    KorseltSet ks;
};

Instance at(Int n) {
    auto f = factor_squarefree(n);
    auto ks = q_korselt_set(f);
    return {std::move(f), std::move(ks)};
}

KorseltSet replace(const KorseltSet& ks, const Rational& from, const Rational& to) {
    auto bases = ks.bases();
    std::replace(bases.begin(), bases.end(), from, to);
    return {ks.n(), bases};
}

}  // namespace

TEST_SUITE("verify") {
    TEST_CASE("check names round-trip") {
        for (CheckId id : all_checks()) CHECK(parse_check(to_string(id)) == id);
        CHECK(all_checks().size() == 9);
        CHECK_FALSE(parse_check("nope"));
    }

    TEST_CASE("prop23_pos examples") {
        const auto [f, ks] = at(6);
        REQUIRE(ks.positives().size() == 9);
        CHECK(ks.positives()[8] == q(4));
        CHECK(m_value(6, 1, 2) == q(4));
        CHECK(ks.positives()[0] == q(3, 2));
        CHECK(m_value(6, 9, 2) == q(12, 5));
        CHECK_FALSE(check_prop23_pos(f, ks));
        // r = 0
        CHECK_FALSE(check_prop23_pos(f, KorseltSet(6, {})));
        CHECK(is_vacuous(CheckId::kProp23Pos, f, KorseltSet(6, {})));
    }

    TEST_CASE("prop23_neg: vacuous without negatives, holds where they exist") {
        const auto [f, ks] = at(30);
        CHECK(ks.negatives().empty());
        CHECK_FALSE(check_prop23_neg(f, ks));
        CHECK(is_vacuous(CheckId::kProp23K3, f, ks));

        int with_negatives = 0;
        for (Int n = 6; n <= 10000; ++n) {
            auto g = try_factor_squarefree(n);
            if (!g) continue;
            const auto s = q_korselt_set(*g);
            if (s.negatives().empty()) continue;
            ++with_negatives;
            REQUIRE_FALSE(check_prop23_neg_bounds(*g, s));
            REQUIRE_FALSE(check_prop23_k3(*g, s));
        }
        CHECK(with_negatives > 0);
    }

    TEST_CASE("lemma24 examples") {
        const auto f = factor_squarefree(30);
        CHECK(m_value(30, 1, 2) - m_value(30, 3, 5) == q(19, 4));
        CHECK(m_value(30, -5, 2) - m_value(30, -3, 5) == q(5, 2));
        CHECK_FALSE(check_lemma24(f));
        const auto f10 = factor_squarefree(10);
        CHECK_FALSE(check_lemma24(f10));
        CHECK(is_vacuous(CheckId::kLemma24Delta, f10, KorseltSet(10, {})));
    }

    TEST_CASE("thm25 examples") {
        const auto [f10, ks10] = at(10);
        CHECK(ks10.bases() == std::vector<Rational>{q(5, 2), q(10, 3), q(4), q(14, 3), q(6)});
        CHECK_FALSE(check_thm25(f10, ks10));
        // m = 2: Theta would be negative for N = 10, so the comparison is not asserted
        CHECK(m_value(10, -4, 2) - m_value(10, -3, 5) == q(-19, 6));
        CHECK_FALSE(check_thm25_theta(f10));
        CHECK(is_vacuous(CheckId::kThm25Theta, f10, ks10));

        const auto f105 = factor_squarefree(105);
        CHECK(m_value(105, -5, 3) - m_value(105, -4, 5) == q(70, 12));
        CHECK_FALSE(check_thm25_theta(f105));
    }

    TEST_CASE("thm27 examples") {
        for (Int n : {10, 15, 30, 6, 22, 105}) {
            const auto [f, ks] = at(n);
            CHECK_FALSE(check_thm27(f, ks));
        }
        const auto [f10, ks10] = at(10);
        CHECK(upper_attainment(f10, ks10) == 1);
        const auto [f30, ks30] = at(30);
        CHECK_FALSE(upper_attainment(f30, ks30));
    }

    TEST_CASE("fault injection: a corrupted set is caught") {
        const auto [f, ks] = at(10);
        // 6 -> 7 pushes the top base above the upper bound M(1,2) = 6
        const auto bad = replace(ks, q(6), q(7));
        const auto hit = check_thm25_bounds(f, bad);
        REQUIRE(hit);
        CHECK(hit->n == 10);
        CHECK(hit->lhs == q(7));
        CHECK(hit->rhs == q(6));
        CHECK(check_prop21_oracle(f, bad));
        CHECK(check_thm27(f, bad));  // M(1,2) = 6 no longer attained though N = 2*5

        // An invented negative base violates the k_(1,m) >= 3 claim.
        const auto [f15, ks15] = at(15);
        auto with_neg = ks15.bases();
        with_neg.push_back(q(-1, 2));
        const KorseltSet injected(15, with_neg);
        CHECK(check_prop23_k3(f15, injected));

        // Deleting a base is caught by the oracle comparison.
        auto fewer = ks15.bases();
        fewer.pop_back();
        const auto miss = check_prop21_oracle(f15, KorseltSet(15, fewer));
        REQUIRE(miss);
        CHECK(miss->rhs == q(7));
    }

    TEST_CASE("failure description carries the witness") {
        const auto [f, ks] = at(10);
        const auto hit = check_thm25_bounds(f, replace(ks, q(6), q(7)));
        REQUIRE(hit);
        const auto s = hit->describe();
        CHECK(s.find("N=10") != std::string::npos);
        CHECK(s.find("lhs=7") != std::string::npos);
        CHECK(s.find("rhs=6") != std::string::npos);
    }

    TEST_CASE("run_suite examples") {
        const auto r = run_suite(6, 100, {CheckId::kThm27Attain});
        REQUIRE(r.size() == 1);
        CHECK(r[0].passed());
        std::size_t expect = 0;
        for (Int n = 6; n <= 100; ++n) expect += oracle::squarefree_composite(n);
        CHECK(r[0].tested_count == expect);

        const auto one = run_suite(6, 6, all_checks());
        CHECK(one.size() == all_checks().size());
        for (const auto& rep : one) {
            CHECK(rep.passed());
            CHECK(rep.tested_count == 1);
        }

        const auto empty = run_suite(10, 9, all_checks());
        CHECK(empty.size() == all_checks().size());
        for (const auto& rep : empty) CHECK(rep.tested_count == 0);

        CHECK_THROWS_AS(run_suite(5, 10, all_checks()), std::domain_error);
    }

    TEST_CASE("report order follows all_checks regardless of request order") {
        const auto r = run_suite(6, 30, {CheckId::kThm27Attain, CheckId::kProp23Pos});
        REQUIRE(r.size() == 2);
        CHECK(r[0].check_id == CheckId::kProp23Pos);
        CHECK(r[1].check_id == CheckId::kThm27Attain);
    }

    TEST_CASE("disjoint ranges merge to the union") {
        std::vector<CheckId> cheap;
        for (CheckId id : all_checks()) {
            if (id != CheckId::kProp21Oracle) cheap.push_back(id);
        }
        const auto whole = run_suite(6, 3000, cheap);
        const auto merged = merge_reports({run_suite(6, 1000, cheap), run_suite(1001, 3000, cheap)});
        const auto pooled = batch::parallel_suite(6, 3000, cheap, 4, 97);
        REQUIRE(whole.size() == merged.size());
        REQUIRE(whole.size() == pooled.size());
        for (std::size_t i = 0; i < whole.size(); ++i) {
            for (const auto* other : {&merged[i], &pooled[i]}) {
                CHECK(other->check_id == whole[i].check_id);
                CHECK(other->n_lo == 6);
                CHECK(other->n_hi == 3000);
                CHECK(other->tested_count == whole[i].tested_count);
                CHECK(other->vacuous_count == whole[i].vacuous_count);
                CHECK(other->failures.size() == whole[i].failures.size());
            }
        }
    }
}
