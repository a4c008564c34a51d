#include "korselt/solver.hpp"

#include <unordered_map>

namespace korselt {

namespace {

Int mod_nonneg(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

KorseltSet q_korselt_set(const SquarefreeFactorization& f) {
    const Int n = f.n;
    const Int p = f.p(1);
    const Int q = f.p(2);
    const Int gap = q - p;

    // Bucket the divisors of N - q by residue mod (q - p) so each d only meets
    // the e with e = d (mod q - p).
    std::unordered_map<Int, std::vector<Int>> by_residue;
    for (Int e : signed_divisors(n - q)) by_residue[mod_nonneg(e, gap)].push_back(e);

    std::vector<Rational> found;
    for (Int d : signed_divisors(n - p)) {
        auto it = by_residue.find(mod_nonneg(d, gap));
        if (it == by_residue.end()) continue;
        for (Int e : it->second) {
            const Int a2 = (e - d) / gap;
            if (a2 < 1) continue;
            const Wide a1 = Wide{a2} * p - d;
            if (gcd(narrow(a1), a2) != 1) continue;  // the reduced pair (d/g, e/g) covers it
            if (a1 == 0 || a1 == Wide{a2} * n) continue;
            bool ok = true;
            for (std::size_t i = 3; i <= f.m() && ok; ++i) {
                const Int pi = f.p(i);
                const Wide di = Wide{a2} * pi - a1;
                ok = di != 0 && Wide{n - pi} % di == 0;
            }
            if (ok) found.push_back(reduce(a1, a2));
        }
    }
    return {n, std::move(found)};
}

Int oracle_window(Int n) { return narrow(Wide{2} * n * n); }

KorseltSet oracle_q_korselt_set(const SquarefreeFactorization& f) {
    const Int w = oracle_window(f.n);
    const Int p1 = f.p(1);
    std::vector<Rational> found;
    for (Int k = -w; k <= w; ++k) {
        if (k == -1) continue;
        const Rational alpha = m_value(f.n, k, p1);
        if (alpha == Rational{0} || alpha == Rational{f.n}) continue;
        if (is_korselt_base(f, alpha)) found.push_back(alpha);
    }
    return {f.n, std::move(found)};
}

KorseltSet z_korselt_set(const SquarefreeFactorization& f) { return q_korselt_set(f).integers(); }

std::size_t korselt_weight(const SquarefreeFactorization& f, Domain domain) {
    return domain == Domain::kQ ? q_korselt_set(f).weight() : z_korselt_set(f).weight();
}

BaseSetRecord base_set(const Rational& alpha, Int limit) {
    if (alpha == Rational{0}) throw std::domain_error("korselt: 0 is never a Korselt base");
    if (limit < 6) throw std::domain_error("korselt: base_set limit must be >= 6");
    BaseSetRecord rec{alpha, limit, {}};
    for (Int n = 6; n <= limit; ++n) {
        if (alpha == Rational{n}) continue;
        auto f = try_factor_squarefree(n);
        if (f && is_korselt_base(*f, alpha)) rec.members.push_back(n);
    }
    return rec;
}

bool is_carmichael(Int n) {
    auto f = try_factor_squarefree(n);
    if (!f) return false;
    for (Int p : f->primes) {
        if ((n - 1) % (p - 1) != 0) return false;
    }
    return true;
}

std::vector<Int> carmichael_scan(Int limit) {
    std::vector<Int> out;
    for (Int n = 2; n <= limit; ++n) {
        if (is_carmichael(n)) out.push_back(n);
    }
    return out;
}

}  // namespace korselt
