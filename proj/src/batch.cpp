#include "korselt/batch.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "korselt/solver.hpp"

namespace korselt::batch {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json rational_json(const Rational& r) { return ordered_json{{"num", r.num()}, {"den", r.den()}}; }

Rational rational_from(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw std::invalid_argument("rational must be {\"num\": int, \"den\": int}");
    const Int num = j.at("num").get<Int>();
    const Int den = j.at("den").get<Int>();
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    const Rational r = reduce(num, den);
    if (r.num() != num || r.den() != den) throw std::invalid_argument("rational is not in reduced form");
    return r;
}

Int chunk_count(Int lo, Int hi, Int size) { return hi < lo ? 0 : (hi - lo) / size + 1; }

}  // namespace

ScanRecord make_record(const SquarefreeFactorization& f, bool with_timing) {
    const auto start = std::chrono::steady_clock::now();
    const KorseltSet ks = q_korselt_set(f);
    const BoundsReport b = korselt_bounds(f);
    ScanRecord rec;
    rec.n = f.n;
    rec.primes = f.primes;
    rec.weight_q = ks.weight();
    rec.weight_z = ks.integers().weight();
    rec.bases = ks.bases();
    rec.lower = b.lower;
    rec.upper = b.upper;
    rec.attained_j = upper_attainment(f, ks);
    if (with_timing) {
        rec.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start)
                             .count();
    }
    return rec;
}

std::string to_json_line(const ScanRecord& rec) {
    ordered_json j;
    j["n"] = rec.n;
    j["primes"] = rec.primes;
    j["weight_q"] = rec.weight_q;
    j["weight_z"] = rec.weight_z;
    auto bases = ordered_json::array();
    for (const auto& b : rec.bases) bases.push_back(rational_json(b));
    j["bases"] = std::move(bases);
    j["lower"] = rational_json(rec.lower);
    j["upper"] = rational_json(rec.upper);
    j["attained_j"] = rec.attained_j ? ordered_json(*rec.attained_j) : ordered_json(nullptr);
    j["elapsed_us"] = rec.elapsed_us;
    return j.dump();
}

ScanRecord from_json_line(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(e.what());
    }
    try {
        ScanRecord rec;
        rec.n = j.at("n").get<Int>();
        rec.primes = j.at("primes").get<std::vector<Int>>();
        rec.weight_q = j.at("weight_q").get<std::size_t>();
        rec.weight_z = j.at("weight_z").get<std::size_t>();
        for (const auto& b : j.at("bases")) rec.bases.push_back(rational_from(b));
        rec.lower = rational_from(j.at("lower"));
        rec.upper = rational_from(j.at("upper"));
        if (const auto& a = j.at("attained_j"); !a.is_null()) rec.attained_j = a.get<std::size_t>();
        rec.elapsed_us = j.at("elapsed_us").get<std::int64_t>();
        if (rec.weight_q != rec.bases.size()) throw std::invalid_argument("weight_q does not match bases");
        return rec;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(e.what());
    }
}

std::string csv_header() { return "n,primes,weight_q,weight_z,bases,lower,upper,attained_j,elapsed_us"; }

std::string to_csv_row(const ScanRecord& rec) {
    std::ostringstream os;
    os << rec.n << ',';
    for (std::size_t i = 0; i < rec.primes.size(); ++i) os << (i ? "*" : "") << rec.primes[i];
    os << ',' << rec.weight_q << ',' << rec.weight_z << ',';
    for (std::size_t i = 0; i < rec.bases.size(); ++i) os << (i ? ";" : "") << rec.bases[i].num() << '/' << rec.bases[i].den();
    os << ',' << rec.lower.num() << '/' << rec.lower.den() << ',' << rec.upper.num() << '/' << rec.upper.den() << ',';
    if (rec.attained_j) os << *rec.attained_j;
    os << ',' << rec.elapsed_us;
    return os.str();
}

CacheError::CacheError(const std::filesystem::path& path, std::size_t line_, const std::string& what)
    : std::runtime_error(path.string() + ":" + std::to_string(line_) + ": corrupt cache line: " + what), line(line_) {}

Cache load_cache(const std::filesystem::path& path) {
    Cache cache;
    std::ifstream in(path);
    if (!in) return cache;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            ScanRecord rec = from_json_line(line);
            const Int n = rec.n;
            cache.insert_or_assign(n, std::move(rec));
        } catch (const std::exception& e) {
            throw CacheError(path, lineno, e.what());
        }
    }
    return cache;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename into " + path.string() + ": " + ec.message());
    }
}

void scan_range(const ScanOptions& opts, const Cache& cache, const std::function<void(const ScanRecord&)>& sink) {
    const Int size = std::max<Int>(1, opts.chunk_size);
    const auto chunks = static_cast<std::size_t>(chunk_count(opts.lo, opts.hi, size));
    ordered_parallel<std::vector<ScanRecord>>(
        chunks, opts.jobs,
        [&](std::size_t c) {
            std::vector<ScanRecord> out;
            const Int a = opts.lo + static_cast<Int>(c) * size;
            const Int b = std::min(opts.hi, a + size - 1);
            for (Int n = a; n <= b; ++n) {
                if (auto hit = cache.find(n); hit != cache.end()) {
                    out.push_back(hit->second);
                } else if (auto f = try_factor_squarefree(n)) {
                    out.push_back(make_record(*f, opts.with_timing));
                }
            }
            return out;
        },
        [&](std::vector<ScanRecord>&& recs) {
            for (const auto& r : recs) sink(r);
        });
}

std::vector<verify::TheoremReport> parallel_suite(Int lo, Int hi, const std::vector<verify::CheckId>& checks,
                                                  unsigned jobs, Int chunk_size) {
    const Int size = std::max<Int>(1, chunk_size);
    const auto chunks = static_cast<std::size_t>(chunk_count(lo, hi, size));
    if (chunks == 0) return verify::run_suite(lo, hi, checks);
    std::vector<std::vector<verify::TheoremReport>> parts;
    ordered_parallel<std::vector<verify::TheoremReport>>(
        chunks, jobs,
        [&](std::size_t c) {
            const Int a = lo + static_cast<Int>(c) * size;
            return verify::run_suite(a, std::min(hi, a + size - 1), checks);
        },
        [&](std::vector<verify::TheoremReport>&& r) { parts.push_back(std::move(r)); });
    return verify::merge_reports(std::move(parts));
}

}  // namespace korselt::batch
