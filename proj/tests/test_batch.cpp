#include <doctest.h>

#include <random>

#include "korselt/batch.hpp"
#include "korselt/solver.hpp"
#include "tmpdir.hpp"

using namespace korselt;
using namespace korselt::batch;

namespace {

std::vector<ScanRecord> collect(const ScanOptions& opts, const Cache& cache = {}) {
    std::vector<ScanRecord> out;
    scan_range(opts, cache, [&](const ScanRecord& r) { out.push_back(r); });
    return out;
}

}  // namespace

TEST_SUITE("batch") {
    TEST_CASE("make_record for N = 10") {
        const auto rec = make_record(factor_squarefree(10));
        CHECK(rec.n == 10);
        CHECK(rec.primes == std::vector<Int>{2, 5});
        CHECK(rec.weight_q == 5);
        CHECK(rec.weight_z == 2);
        CHECK(rec.lower == reduce(-2, 3));
        CHECK(rec.upper == Rational{6});
        CHECK(rec.attained_j == 1);
        CHECK(rec.elapsed_us == 0);
        CHECK(to_json_line(rec) ==
              R"({"n":10,"primes":[2,5],"weight_q":5,"weight_z":2,"bases":[{"num":5,"den":2},{"num":10,"den":3},)"
              R"({"num":4,"den":1},{"num":14,"den":3},{"num":6,"den":1}],"lower":{"num":-2,"den":3},)"
              R"("upper":{"num":6,"den":1},"attained_j":1,"elapsed_us":0})");
        CHECK(to_csv_row(rec) == "10,2*5,5,2,5/2;10/3;4/1;14/3;6/1,-2/3,6/1,1,0");
    }

    TEST_CASE("JSON round-trip for every record up to 3000") {
        std::mt19937_64 rng(5);
        for (Int n = 6; n <= 3000; ++n) {
            auto f = try_factor_squarefree(n);
            if (!f) continue;
            auto rec = make_record(*f);
            rec.elapsed_us = static_cast<std::int64_t>(rng() % 100000);
            REQUIRE(from_json_line(to_json_line(rec)) == rec);
        }
    }

    TEST_CASE("malformed lines are rejected") {
        const auto good = to_json_line(make_record(factor_squarefree(15)));
        CHECK_NOTHROW(from_json_line(good));
        CHECK_THROWS_AS(from_json_line("{"), std::invalid_argument);
        CHECK_THROWS_AS(from_json_line("{}"), std::invalid_argument);
        CHECK_THROWS_AS(from_json_line(R"({"n":15})"), std::invalid_argument);
        auto unreduced = good;
        const auto pos = unreduced.find(R"({"num":4,"den":1})");
        REQUIRE(pos != std::string::npos);
        unreduced.replace(pos, 17, R"({"num":8,"den":2})");
        CHECK_THROWS_AS(from_json_line(unreduced), std::invalid_argument);
        auto zero_den = good;
        zero_den.replace(zero_den.find(R"({"num":4,"den":1})"), 17, R"({"num":4,"den":0})");
        CHECK_THROWS_AS(from_json_line(zero_den), std::invalid_argument);
    }

    TEST_CASE("scan order and content do not depend on jobs or chunking") {
        ScanOptions one{6, 1500, 1, false, 256};
        const auto base = collect(one);
        REQUIRE_FALSE(base.empty());
        for (std::size_t i = 1; i < base.size(); ++i) REQUIRE(base[i - 1].n < base[i].n);
        for (unsigned jobs : {2u, 8u}) {
            for (Int chunk : {1, 7, 1000}) {
                ScanOptions o{6, 1500, jobs, false, chunk};
                CHECK(collect(o) == base);
            }
        }
        ScanOptions empty{20, 19, 4, false, 8};
        CHECK(collect(empty).empty());
    }

    TEST_CASE("cached records are reused verbatim") {
        Cache cache;
        auto planted = make_record(factor_squarefree(30));
        planted.elapsed_us = 4242;
        cache.emplace(30, planted);
        const auto recs = collect(ScanOptions{6, 40, 3, false, 5}, cache);
        auto it = std::find_if(recs.begin(), recs.end(), [](const ScanRecord& r) { return r.n == 30; });
        REQUIRE(it != recs.end());
        CHECK(it->elapsed_us == 4242);
    }

    TEST_CASE("load_cache reports the corrupt line number") {
        const auto dir = testutil::scratch_dir("cache");
        const auto path = dir / "cache.jsonl";
        CHECK(load_cache(path).empty());  // missing file is an empty cache
        const auto l1 = to_json_line(make_record(factor_squarefree(6)));
        const auto l2 = to_json_line(make_record(factor_squarefree(10)));
        testutil::spit(path, l1 + "\n" + l2 + "\n");
        const auto ok = load_cache(path);
        CHECK(ok.size() == 2);
        CHECK(ok.at(10).weight_q == 5);
        testutil::spit(path, l1 + "\n" + l2 + "\n{\"n\": oops\n");
        try {
            load_cache(path);
            FAIL("expected CacheError");
        } catch (const CacheError& e) {
            CHECK(e.line == 3);
            CHECK(std::string(e.what()).find(":3:") != std::string::npos);
        }
    }

    TEST_CASE("write_atomically replaces the file and leaves no temp") {
        const auto dir = testutil::scratch_dir("atomic");
        const auto path = dir / "out.txt";
        write_atomically(path, "first\n");
        write_atomically(path, "second\n");
        CHECK(testutil::slurp(path) == "second\n");
        CHECK_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
        CHECK_THROWS(write_atomically(dir / "missing" / "out.txt", "x"));
    }

    TEST_CASE("ordered_parallel delivers in order and propagates errors") {
        std::vector<int> seen;
        ordered_parallel<int>(
            50, 6, [](std::size_t c) { return static_cast<int>(c * c); }, [&](int&& v) { seen.push_back(v); });
        REQUIRE(seen.size() == 50);
        for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == static_cast<int>(i * i));

        auto boom = [] {
            ordered_parallel<int>(
                10, 3,
                [](std::size_t c) -> int {
                    if (c == 4) throw std::runtime_error("chunk 4");
                    return 0;
                },
                [](int&&) {});
        };
        CHECK_THROWS_WITH_AS(boom(), "chunk 4", std::runtime_error);
    }
}
