#include "korselt/verify.hpp"

#include <algorithm>
#include <sstream>

#include "korselt/solver.hpp"

namespace korselt::verify {

namespace {

constexpr std::pair<CheckId, std::string_view> kNames[] = {
    {CheckId::kProp23Pos, "prop23_pos"},       {CheckId::kProp23Neg, "prop23_neg"},
    {CheckId::kProp23K3, "prop23_k3"},         {CheckId::kLemma24Delta, "lemma24_delta"},
    {CheckId::kLemma24Gamma, "lemma24_gamma"}, {CheckId::kThm25Bounds, "thm25_bounds"},
    {CheckId::kThm25Theta, "thm25_theta"},     {CheckId::kThm27Attain, "thm27_attain"},
    {CheckId::kProp21Oracle, "prop21_oracle"},
};

Int as_int(std::size_t v) { return static_cast<Int>(v); }

Failure fail(const SquarefreeFactorization& f, std::string relation, Rational lhs, Rational rhs,
             std::vector<std::pair<std::string, Int>> indices = {}) {
    return Failure{f.n, std::move(relation), lhs, rhs, std::move(indices)};
}

}  // namespace

const std::vector<CheckId>& all_checks() {
    static const std::vector<CheckId> ids = [] {
        std::vector<CheckId> v;
        for (const auto& [id, name] : kNames) v.push_back(id);
        return v;
    }();
    return ids;
}

std::string_view to_string(CheckId id) {
    for (const auto& [cid, name] : kNames) {
        if (cid == id) return name;
    }
    return "?";
}

std::optional<CheckId> parse_check(std::string_view name) {
    for (const auto& [cid, cname] : kNames) {
        if (cname == name) return cid;
    }
    return std::nullopt;
}

std::string Failure::describe() const {
    std::ostringstream os;
    os << "N=" << n << ": " << relation << " violated (lhs=" << lhs << ", rhs=" << rhs << ")";
    for (const auto& [name, v] : indices) os << " " << name << "=" << v;
    return os.str();
}

std::optional<Failure> check_prop23_pos(const SquarefreeFactorization& f, const KorseltSet& ks) {
    const auto gammas = ks.positives();
    const std::size_t r = gammas.size();
    if (r == 0) return std::nullopt;
    if (gammas.back() > Rational{f.n - 1})
        return fail(f, "gamma_r <= N-1", gammas.back(), Rational{f.n - 1}, {{"r", as_int(r)}});
    for (std::size_t i = 1; i <= r; ++i) {
        for (std::size_t j = 1; j <= f.m(); ++j) {
            const Rational bound = m_value(f.n, as_int(j + r - i), f.p(j));
            if (gammas[i - 1] > bound)
                return fail(f, "gamma_i <= M(j+r-i,p_j)", gammas[i - 1], bound,
                            {{"i", as_int(i)}, {"j", as_int(j)}, {"r", as_int(r)}});
        }
    }
    return std::nullopt;
}

std::optional<Failure> check_prop23_neg_bounds(const SquarefreeFactorization& f, const KorseltSet& ks) {
    const auto betas = ks.negatives();
    const auto m = as_int(f.m());
    for (std::size_t s = 1; s <= betas.size(); ++s) {
        for (std::size_t j = 1; j <= f.m(); ++j) {
            const Rational bound = m_value(f.n, as_int(j) - m - as_int(s) - 2, f.p(j));
            if (bound > betas[s - 1])
                return fail(f, "M(j-m-s-2,p_j) <= beta_s", bound, betas[s - 1],
                            {{"s", as_int(s)}, {"j", as_int(j)}, {"t", as_int(betas.size())}});
        }
    }
    return std::nullopt;
}

std::optional<Failure> check_prop23_k3(const SquarefreeFactorization& f, const KorseltSet& ks) {
    const auto betas = ks.negatives();
    if (betas.empty()) return std::nullopt;
    const Rational beta1 = betas.front();
    const Rational pm{f.p(f.m())};
    const Rational top = Rational{f.n} - beta1;
    const Rational bottom = pm - beta1;
    const Rational k = reduce(Wide{top.num()} * bottom.den(), Wide{top.den()} * bottom.num());
    if (!k.is_integer() || k < Rational{3})
        return fail(f, "k_(1,m) = (N-beta_1)/(p_m-beta_1) is an integer >= 3", k, Rational{3},
                    {{"m", as_int(f.m())}});
    return std::nullopt;
}

std::optional<Failure> check_prop23_neg(const SquarefreeFactorization& f, const KorseltSet& ks) {
    if (auto bad = check_prop23_neg_bounds(f, ks)) return bad;
    return check_prop23_k3(f, ks);
}

std::optional<Failure> check_lemma24_delta(const SquarefreeFactorization& f) {
    if (f.m() < 3) return std::nullopt;
    for (std::size_t j = 1; j + 2 <= f.m(); ++j) {
        const Rational a = m_value(f.n, as_int(j), f.p(j));
        const Rational b = m_value(f.n, as_int(j + 2), f.p(j + 2));
        if (!(a - b > Rational{0})) return fail(f, "Delta_j > 0", a - b, Rational{0}, {{"j", as_int(j)}});
    }
    return std::nullopt;
}

std::optional<Failure> check_lemma24_gamma(const SquarefreeFactorization& f) {
    if (f.m() < 3) return std::nullopt;
    const auto m = as_int(f.m());
    for (std::size_t j = 1; j + 2 <= f.m(); ++j) {
        const Rational a = m_value(f.n, as_int(j) - m - 3, f.p(j));
        const Rational b = m_value(f.n, as_int(j) - m - 1, f.p(j + 2));
        if (!(a - b > Rational{0})) return fail(f, "Gamma_j > 0", a - b, Rational{0}, {{"j", as_int(j)}});
    }
    return std::nullopt;
}

std::optional<Failure> check_lemma24(const SquarefreeFactorization& f) {
    if (auto bad = check_lemma24_delta(f)) return bad;
    return check_lemma24_gamma(f);
}

std::optional<Failure> check_thm25_bounds(const SquarefreeFactorization& f, const KorseltSet& ks) {
    const BoundsReport b = korselt_bounds(f);
    const auto& bases = ks.bases();
    for (std::size_t i = 0; i < bases.size(); ++i) {
        if (bases[i] < b.lower)
            return fail(f, "M(-m-2,p_1) <= alpha", b.lower, bases[i], {{"index", as_int(i + 1)}});
        if (bases[i] > b.upper)
            return fail(f, "alpha <= min(M(m-1,p_{m-1}),M(m,p_m))", bases[i], b.upper,
                        {{"index", as_int(i + 1)}});
    }
    return std::nullopt;
}

std::optional<Failure> check_thm25_theta(const SquarefreeFactorization& f) {
    if (f.m() < 3) return std::nullopt;
    const auto m = as_int(f.m());
    const Rational a = m_value(f.n, -m - 2, f.p(1));
    const Rational b = m_value(f.n, -m - 1, f.p(2));
    if (!(a > b)) return fail(f, "M(-m-2,p_1) > M(-m-1,p_2)", a, b, {{"m", m}});
    return std::nullopt;
}

std::optional<Failure> check_thm25(const SquarefreeFactorization& f, const KorseltSet& ks) {
    if (auto bad = check_thm25_bounds(f, ks)) return bad;
    return check_thm25_theta(f);
}

std::optional<Failure> check_thm27(const SquarefreeFactorization& f, const KorseltSet& ks) {
    const auto j = upper_attainment(f, ks);
    const bool is_2p = f.m() == 2 && f.p(1) == 2;
    if (j.has_value() != is_2p) {
        const Int jj = j ? as_int(*j) : 0;
        const Rational witness = j ? m_value(f.n, jj, f.p(*j)) : Rational{0};
        return fail(f, "M(j,p_j) in Q-KS(N) for some j <=> N = 2 p_2", witness, Rational{is_2p ? 1 : 0},
                    {{"attained_j", jj}, {"m", as_int(f.m())}, {"p_1", f.p(1)}});
    }
    return std::nullopt;
}

std::optional<Failure> check_prop21_oracle(const SquarefreeFactorization& f, const KorseltSet& ks) {
    const KorseltSet oracle = oracle_q_korselt_set(f);
    if (ks == oracle) return std::nullopt;
    const auto& a = ks.bases();
    const auto& b = oracle.bases();
    std::vector<Rational> only_a;
    std::vector<Rational> only_b;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
    // lhs: first base missing from the oracle; rhs: first base missing from the solver.
    return fail(f, "q_korselt_set == oracle_q_korselt_set", only_a.empty() ? Rational{0} : only_a.front(),
                only_b.empty() ? Rational{0} : only_b.front(),
                {{"solver_weight", as_int(a.size())}, {"oracle_weight", as_int(b.size())}});
}

bool is_vacuous(CheckId id, const SquarefreeFactorization& f, const KorseltSet& ks) {
    switch (id) {
        case CheckId::kProp23Pos: return ks.positives().empty();
        case CheckId::kProp23Neg:
        case CheckId::kProp23K3: return ks.negatives().empty();
        case CheckId::kLemma24Delta:
        case CheckId::kLemma24Gamma:
        case CheckId::kThm25Theta: return f.m() < 3;
        case CheckId::kThm25Bounds: return ks.weight() == 0;
        case CheckId::kThm27Attain:
        case CheckId::kProp21Oracle: return false;
    }
    return false;
}

std::optional<Failure> run_check(CheckId id, const SquarefreeFactorization& f, const KorseltSet& ks) {
    switch (id) {
        case CheckId::kProp23Pos: return check_prop23_pos(f, ks);
        case CheckId::kProp23Neg: return check_prop23_neg_bounds(f, ks);
        case CheckId::kProp23K3: return check_prop23_k3(f, ks);
        case CheckId::kLemma24Delta: return check_lemma24_delta(f);
        case CheckId::kLemma24Gamma: return check_lemma24_gamma(f);
        case CheckId::kThm25Bounds: return check_thm25_bounds(f, ks);
        case CheckId::kThm25Theta: return check_thm25_theta(f);
        case CheckId::kThm27Attain: return check_thm27(f, ks);
        case CheckId::kProp21Oracle: return check_prop21_oracle(f, ks);
    }
    return std::nullopt;
}

std::vector<TheoremReport> run_suite(Int n_lo, Int n_hi, const std::vector<CheckId>& checks) {
    if (n_lo < 6) throw std::domain_error("korselt: verification range must start at N >= 6");
    std::vector<TheoremReport> reports;
    for (CheckId id : all_checks()) {
        if (std::find(checks.begin(), checks.end(), id) != checks.end())
            reports.push_back(TheoremReport{id, n_lo, n_hi, 0, 0, {}});
    }
    for (Int n = n_lo; n <= n_hi; ++n) {
        const auto f = try_factor_squarefree(n);
        if (!f) continue;
        const KorseltSet ks = q_korselt_set(*f);
        for (auto& rep : reports) {
            ++rep.tested_count;
            if (is_vacuous(rep.check_id, *f, ks)) ++rep.vacuous_count;
            if (auto bad = run_check(rep.check_id, *f, ks)) rep.failures.push_back(std::move(*bad));
        }
    }
    return reports;
}

std::vector<TheoremReport> merge_reports(std::vector<std::vector<TheoremReport>> parts) {
    std::vector<TheoremReport> out;
    for (auto& part : parts) {
        if (out.empty()) {
            out = std::move(part);
            continue;
        }
        if (part.size() != out.size()) throw std::invalid_argument("korselt: merging reports of different checks");
        for (std::size_t i = 0; i < part.size(); ++i) {
            auto& dst = out[i];
            auto& src = part[i];
            if (dst.check_id != src.check_id) throw std::invalid_argument("korselt: check order mismatch");
            dst.n_lo = std::min(dst.n_lo, src.n_lo);
            dst.n_hi = std::max(dst.n_hi, src.n_hi);
            dst.tested_count += src.tested_count;
            dst.vacuous_count += src.vacuous_count;
            dst.failures.insert(dst.failures.end(), std::make_move_iterator(src.failures.begin()),
                                std::make_move_iterator(src.failures.end()));
        }
    }
    for (auto& rep : out) {
        std::stable_sort(rep.failures.begin(), rep.failures.end(),
                         [](const Failure& a, const Failure& b) { return a.n < b.n; });
    }
    return out;
}

}  // namespace korselt::verify
