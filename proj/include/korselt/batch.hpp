#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "korselt/core.hpp"
#include "korselt/verify.hpp"

namespace korselt::batch {

/// One N's full result, as stored in scan output and caches.
struct ScanRecord {
    Int n = 0;
    std::vector<Int> primes;
    std::size_t weight_q = 0;
    std::size_t weight_z = 0;
    std::vector<Rational> bases;
    Rational lower;
    Rational upper;
    std::optional<std::size_t> attained_j;
    std::int64_t elapsed_us = 0;

    friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

/// elapsed_us is filled only when with_timing is set; otherwise it stays 0 so
/// that output is reproducible byte for byte.
ScanRecord make_record(const SquarefreeFactorization& f, bool with_timing = false);

/// Single-line JSON, fixed key order, no trailing newline.
std::string to_json_line(const ScanRecord& rec);
/// Throws std::invalid_argument on malformed input.
ScanRecord from_json_line(const std::string& line);

std::string csv_header();
std::string to_csv_row(const ScanRecord& rec);

class CacheError : public std::runtime_error {
public:
    CacheError(const std::filesystem::path& path, std::size_t line, const std::string& what);
    std::size_t line;
};

using Cache = std::map<Int, ScanRecord>;

/// Missing file yields an empty cache. A bad line throws CacheError naming it.
Cache load_cache(const std::filesystem::path& path);

/// Writes `content` next to `path` and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& content);

/// Runs work(chunk) for chunk = 0..chunks-1 on `jobs` threads and hands each
/// result to sink in chunk order from the calling thread.
template <typename Result>
void ordered_parallel(std::size_t chunks, unsigned jobs, const std::function<Result(std::size_t)>& work,
                      const std::function<void(Result&&)>& sink) {
    if (jobs <= 1 || chunks <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) sink(work(c));
        return;
    }
    std::vector<std::promise<Result>> slots(chunks);
    std::vector<std::future<Result>> ready;
    ready.reserve(chunks);
    for (auto& s : slots) ready.push_back(s.get_future());
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, chunks));
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < chunks; c = next++) {
                try {
                    slots[c].set_value(work(c));
                } catch (...) {
                    slots[c].set_exception(std::current_exception());
                }
            }
        });
    }
    for (auto& fut : ready) sink(fut.get());
}

struct ScanOptions {
    Int lo = 6;
    Int hi = 6;
    unsigned jobs = 1;
    bool with_timing = false;
    Int chunk_size = 256;
};

/// Every squarefree composite N in [lo, hi], ascending, reusing cached records
/// verbatim. sink is called from the calling thread only.
void scan_range(const ScanOptions& opts, const Cache& cache, const std::function<void(const ScanRecord&)>& sink);

/// run_suite split into sub-ranges over `jobs` threads; same result as a
/// single run_suite call.
std::vector<verify::TheoremReport> parallel_suite(Int lo, Int hi, const std::vector<verify::CheckId>& checks,
                                                  unsigned jobs, Int chunk_size = 512);

}  // namespace korselt::batch
