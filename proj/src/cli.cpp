#include "korselt/cli.hpp"

#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "korselt/batch.hpp"
#include "korselt/solver.hpp"
#include "korselt/verify.hpp"

namespace korselt::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

enum class Format { kText, kJson, kCsv };

struct Globals {
    std::string format = "text";
    unsigned jobs = 1;
    std::string cache;

    [[nodiscard]] Format fmt() const {
        if (format == "json") return Format::kJson;
        if (format == "csv") return Format::kCsv;
        return Format::kText;
    }
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

ordered_json rational_json(const Rational& r) { return ordered_json{{"num", r.num()}, {"den", r.den()}}; }

std::string csv_rational(const Rational& r) { return std::to_string(r.num()) + "/" + std::to_string(r.den()); }

std::string join(const std::vector<Rational>& v, std::string_view sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += v[i].str();
    }
    return s;
}

std::string join(const std::vector<Int>& v, std::string_view sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::string with_decimal(const Rational& r) {
    if (r.is_integer()) return r.str();
    std::ostringstream os;
    os << r.str() << " (" << std::setprecision(6) << r.approx() << ")";
    return os.str();
}

Rational parse_rational(const std::string& text) {
    auto r = Rational::parse(text);
    if (!r) throw UsageError("not a rational number: '" + text + "'");
    return *r;
}

// --- set -----------------------------------------------------------------

struct SetArgs {
    Int n = 0;
    std::string domain = "q";
    bool include_trivial = false;
};

void cmd_set(const SetArgs& a, const Globals& g, std::ostream& out) {
    const auto f = factor_squarefree(a.n);
    const KorseltSet ks = a.domain == "z" ? z_korselt_set(f) : q_korselt_set(f);
    std::vector<Rational> shown = ks.bases();
    if (a.include_trivial) shown.emplace_back(a.n);  // N is the largest element
    switch (g.fmt()) {
        case Format::kText: out << join(shown, ", ") << '\n'; break;
        case Format::kJson: {
            ordered_json j;
            j["n"] = a.n;
            j["domain"] = a.domain;
            j["weight"] = ks.weight();
            j["include_trivial"] = a.include_trivial;
            auto arr = ordered_json::array();
            for (const auto& r : shown) arr.push_back(rational_json(r));
            j["bases"] = std::move(arr);
            out << j.dump() << '\n';
            break;
        }
        case Format::kCsv:
            out << "n,domain,base\n";
            for (const auto& r : shown) out << a.n << ',' << a.domain << ',' << csv_rational(r) << '\n';
            break;
    }
}

// --- weight --------------------------------------------------------------

struct WeightArgs {
    std::optional<Int> n;
    std::vector<Int> range;
    std::string domain = "q";
    bool include_trivial = false;
};

void cmd_weight(const WeightArgs& a, const Globals& g, std::ostream& out) {
    const Domain dom = a.domain == "z" ? Domain::kZ : Domain::kQ;
    const std::size_t extra = a.include_trivial ? 1 : 0;
    if (a.range.empty()) {
        if (!a.n) throw UsageError("weight needs N or --range LO HI");
        const auto f = factor_squarefree(*a.n);
        const std::size_t w = korselt_weight(f, dom);
        switch (g.fmt()) {
            case Format::kText:
                out << w + extra << '\n';
                if (a.include_trivial)
                    out << "note: strict weight " << w << " plus the trivial base N\n";
                else
                    out << "note: +1 with --include-trivial (trivial base N)\n";
                break;
            case Format::kJson:
                out << ordered_json{{"n", *a.n}, {"domain", a.domain}, {"weight", w}, {"trivial_delta", 1}}.dump()
                    << '\n';
                break;
            case Format::kCsv: out << "n,domain,weight\n" << *a.n << ',' << a.domain << ',' << w << '\n'; break;
        }
        return;
    }
    const Int lo = a.range.at(0);
    const Int hi = a.range.at(1);
    auto rows = ordered_json::array();
    if (g.fmt() == Format::kCsv) out << "n,domain,weight\n";
    if (g.fmt() == Format::kText) out << "N\tweight\n";
    for (Int n = lo; n <= hi; ++n) {
        auto f = try_factor_squarefree(n);
        if (!f) continue;
        const std::size_t w = korselt_weight(*f, dom);
        switch (g.fmt()) {
            case Format::kText: out << n << '\t' << w + extra << '\n'; break;
            case Format::kJson: rows.push_back(ordered_json{{"n", n}, {"domain", a.domain}, {"weight", w}}); break;
            case Format::kCsv: out << n << ',' << a.domain << ',' << w << '\n'; break;
        }
    }
    if (g.fmt() == Format::kJson) out << rows.dump() << '\n';
}

// --- base ----------------------------------------------------------------

struct BaseArgs {
    std::string alpha;
    Int max = 1000;
};

void cmd_base(const BaseArgs& a, const Globals& g, std::ostream& out) {
    const Rational alpha = parse_rational(a.alpha);
    const BaseSetRecord rec = base_set(alpha, a.max);
    switch (g.fmt()) {
        case Format::kText: out << join(rec.members, ", ") << '\n'; break;
        case Format::kJson:
            out << ordered_json{{"alpha", rational_json(alpha)},
                                {"limit", rec.limit},
                                {"weight", rec.weight()},
                                {"members", rec.members}}
                       .dump()
                << '\n';
            break;
        case Format::kCsv:
            out << "alpha,n\n";
            for (Int n : rec.members) out << csv_rational(alpha) << ',' << n << '\n';
            break;
    }
}

// --- carmichael ----------------------------------------------------------

void cmd_carmichael(Int max, const Globals& g, std::ostream& out) {
    const auto list = carmichael_scan(max);
    switch (g.fmt()) {
        case Format::kText: out << join(list, ", ") << '\n'; break;
        case Format::kJson: out << ordered_json{{"limit", max}, {"carmichael", list}}.dump() << '\n'; break;
        case Format::kCsv:
            out << "n\n";
            for (Int n : list) out << n << '\n';
            break;
    }
}

// --- bounds --------------------------------------------------------------

void cmd_bounds(Int n, const Globals& g, std::ostream& out) {
    const auto f = factor_squarefree(n);
    const BoundsReport b = korselt_bounds(f);
    const auto m = static_cast<Int>(f.m());
    const Rational pen = m_value(n, m - 1, f.p(f.m() - 1));
    const Rational last = m_value(n, m, f.p(f.m()));
    const std::string pen_name = "M(" + std::to_string(m - 1) + ",p_" + std::to_string(m - 1) + ")";
    const std::string last_name = "M(" + std::to_string(m) + ",p_" + std::to_string(m) + ")";
    const std::string argmin = b.upper_argmin == UpperArgmin::kPenultimate ? pen_name
                               : b.upper_argmin == UpperArgmin::kLast      ? last_name
                                                                           : "tie";
    switch (g.fmt()) {
        case Format::kText:
            out << "N = " << n << " = " << join(f.primes, "*") << " (m = " << m << ")\n";
            out << "lower: M(" << -m - 2 << ",p_1) = " << with_decimal(b.lower) << '\n';
            out << "upper: min(" << pen_name << ", " << last_name << ") = min(" << pen << ", " << last
                << ") = " << with_decimal(b.upper) << '\n';
            out << "upper attained by: " << argmin << '\n';
            break;
        case Format::kJson:
            out << ordered_json{{"n", n},
                                {"primes", f.primes},
                                {"lower", rational_json(b.lower)},
                                {"upper", rational_json(b.upper)},
                                {"upper_argmin", argmin},
                                {"upper_candidates", {rational_json(pen), rational_json(last)}}}
                       .dump()
                << '\n';
            break;
        case Format::kCsv:
            out << "n,lower,upper,upper_argmin\n"
                << n << ',' << csv_rational(b.lower) << ',' << csv_rational(b.upper) << ',' << argmin << '\n';
            break;
    }
}

// --- verify --------------------------------------------------------------

struct VerifyArgs {
    std::vector<Int> range;
    std::vector<std::string> checks{"all"};
    std::size_t max_failures_shown = 10;
};

std::vector<verify::CheckId> parse_checks(const std::vector<std::string>& names) {
    std::vector<verify::CheckId> ids;
    for (const auto& name : names) {
        if (name == "all") return verify::all_checks();
        // short aliases for the combined checks
        if (name == "prop23") {
            ids.insert(ids.end(), {verify::CheckId::kProp23Pos, verify::CheckId::kProp23Neg, verify::CheckId::kProp23K3});
        } else if (name == "lemma24") {
            ids.insert(ids.end(), {verify::CheckId::kLemma24Delta, verify::CheckId::kLemma24Gamma});
        } else if (name == "thm25") {
            ids.insert(ids.end(), {verify::CheckId::kThm25Bounds, verify::CheckId::kThm25Theta});
        } else if (name == "thm27") {
            ids.push_back(verify::CheckId::kThm27Attain);
        } else if (auto id = verify::parse_check(name)) {
            ids.push_back(*id);
        } else {
            throw UsageError("unknown check '" + name + "'");
        }
    }
    return ids;
}

int cmd_verify(const VerifyArgs& a, const Globals& g, std::ostream& out) {
    const auto ids = parse_checks(a.checks);
    const auto reports = batch::parallel_suite(a.range.at(0), a.range.at(1), ids, g.jobs);
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.passed();
    if (g.fmt() == Format::kJson) {
        auto arr = ordered_json::array();
        for (const auto& r : reports) {
            auto fails = ordered_json::array();
            for (const auto& f : r.failures) {
                ordered_json idx = ordered_json::object();
                for (const auto& [k, v] : f.indices) idx[k] = v;
                fails.push_back(ordered_json{{"n", f.n},
                                             {"relation", f.relation},
                                             {"lhs", rational_json(f.lhs)},
                                             {"rhs", rational_json(f.rhs)},
                                             {"indices", idx}});
            }
            arr.push_back(ordered_json{{"check_id", verify::to_string(r.check_id)},
                                       {"range", {r.n_lo, r.n_hi}},
                                       {"tested_count", r.tested_count},
                                       {"vacuous_count", r.vacuous_count},
                                       {"passed", r.passed()},
                                       {"failures", fails}});
        }
        out << arr.dump() << '\n';
    } else {
        for (const auto& r : reports) {
            out << std::left << std::setw(14) << verify::to_string(r.check_id) << " [" << r.n_lo << ", " << r.n_hi
                << "]  tested " << r.tested_count << "  vacuous " << r.vacuous_count << "  failures "
                << r.failures.size() << "  " << (r.passed() ? "PASS" : "FAIL") << '\n';
            for (std::size_t i = 0; i < r.failures.size() && i < a.max_failures_shown; ++i)
                out << "    " << r.failures[i].describe() << '\n';
        }
    }
    return ok ? kOk : kVerifyFailed;
}

// --- scan ----------------------------------------------------------------

struct ScanArgs {
    std::vector<Int> range;
    std::string out_path;
    bool timing = false;
};

void cmd_scan(const ScanArgs& a, const Globals& g, std::ostream& out) {
    batch::ScanOptions opts;
    opts.lo = a.range.at(0);
    opts.hi = a.range.at(1);
    opts.jobs = g.jobs;
    opts.with_timing = a.timing;
    batch::Cache cache = g.cache.empty() ? batch::Cache{} : batch::load_cache(g.cache);

    const bool csv = g.fmt() == Format::kCsv;
    std::string body;
    if (csv) body = batch::csv_header() + "\n";
    batch::Cache fresh;
    batch::scan_range(opts, cache, [&](const batch::ScanRecord& r) {
        body += csv ? batch::to_csv_row(r) : batch::to_json_line(r);
        body += '\n';
        if (!g.cache.empty() && !cache.contains(r.n)) fresh.emplace(r.n, r);
    });

    if (a.out_path.empty())
        out << body;
    else
        batch::write_atomically(a.out_path, body);

    if (!g.cache.empty() && !fresh.empty()) {
        cache.merge(fresh);
        std::string cached;
        for (const auto& [n, r] : cache) cached += batch::to_json_line(r) + "\n";
        batch::write_atomically(g.cache, cached);
    }
}

void check_range(const std::vector<Int>& range) {
    if (range.size() != 2) throw UsageError("--range needs LO HI");
    if (range[0] < 6) throw UsageError("--range must start at 6 or above");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rational Korselt sets, bounds and Carmichael scans", "korselt"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--jobs,-j", g.jobs, "Worker threads for range commands")->check(CLI::Range(1u, 1024u));
    app.add_option("--cache", g.cache, "JSONL cache of scan records");
    app.fallthrough();

    SetArgs set_args;
    auto* set_cmd = app.add_subcommand("set", "Korselt set of N");
    set_cmd->add_option("n", set_args.n, "Squarefree composite N")->required();
    set_cmd->add_option("--domain", set_args.domain)->check(CLI::IsMember({"q", "z"}));
    set_cmd->add_flag("--include-trivial", set_args.include_trivial, "Also list the trivial base N");

    WeightArgs w_args;
    auto* weight_cmd = app.add_subcommand("weight", "Korselt weight of N or of each N in a range");
    weight_cmd->add_option("n", w_args.n);
    weight_cmd->add_option("--range", w_args.range)->expected(2);
    weight_cmd->add_option("--domain", w_args.domain)->check(CLI::IsMember({"q", "z"}));
    weight_cmd->add_flag("--include-trivial", w_args.include_trivial);

    BaseArgs b_args;
    auto* base_cmd = app.add_subcommand("base", "All N <= max for which alpha is a Korselt base");
    base_cmd->add_option("alpha", b_args.alpha, "Base, e.g. 12 or 5/2")->required();
    base_cmd->add_option("--max", b_args.max);

    Int carm_max = 100000;
    auto* carm_cmd = app.add_subcommand("carmichael", "Carmichael numbers up to max");
    carm_cmd->add_option("--max", carm_max);

    Int bounds_n = 0;
    auto* bounds_cmd = app.add_subcommand("bounds", "Lower and upper bounds for the bases of N");
    bounds_cmd->add_option("n", bounds_n)->required();

    VerifyArgs v_args;
    auto* verify_cmd = app.add_subcommand("verify", "Check the bound and attainment theorems over a range");
    verify_cmd->add_option("--range", v_args.range)->expected(2)->required();
    verify_cmd->add_option("--checks", v_args.checks)->delimiter(',');
    verify_cmd->add_option("--show", v_args.max_failures_shown, "Failures listed per check");

    ScanArgs s_args;
    auto* scan_cmd = app.add_subcommand("scan", "Full per-N records as JSONL");
    scan_cmd->add_option("--range", s_args.range)->expected(2)->required();
    scan_cmd->add_option("--out,-o", s_args.out_path);
    scan_cmd->add_flag("--timing", s_args.timing, "Record elapsed_us (output is then not reproducible)");

    std::vector<std::string> argv_store{"korselt"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*set_cmd) {
            cmd_set(set_args, g, out);
        } else if (*weight_cmd) {
            if (!w_args.range.empty()) check_range(w_args.range);
            cmd_weight(w_args, g, out);
        } else if (*base_cmd) {
            cmd_base(b_args, g, out);
        } else if (*carm_cmd) {
            if (carm_max < 2) throw UsageError("--max must be >= 2");
            cmd_carmichael(carm_max, g, out);
        } else if (*bounds_cmd) {
            cmd_bounds(bounds_n, g, out);
        } else if (*verify_cmd) {
            check_range(v_args.range);
            return cmd_verify(v_args, g, out);
        } else if (*scan_cmd) {
            check_range(s_args.range);
            cmd_scan(s_args, g, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const NotSquarefree& e) {
        err << "error: NotSquarefree: " << e.what() << '\n';
        return kDomain;
    } catch (const NotComposite& e) {
        err << "error: NotComposite: " << e.what() << '\n';
        return kDomain;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kOk;
}

}  // namespace korselt::cli
