#include "korselt/core.hpp"

#include <algorithm>

namespace korselt {

std::string_view to_string(UpperArgmin a) {
    switch (a) {
        case UpperArgmin::kPenultimate: return "M(m-1,p_{m-1})";
        case UpperArgmin::kLast: return "M(m,p_m)";
        case UpperArgmin::kTie: return "tie";
    }
    return "?";
}

KorseltSet::KorseltSet(Int n, std::vector<Rational> bases) : n_(n), bases_(std::move(bases)) {
    std::sort(bases_.begin(), bases_.end());
    bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
    if (contains(Rational{0}) || contains(Rational{n_}))
        throw std::domain_error("korselt: a Korselt set cannot contain 0 or N");
    first_positive_ = static_cast<std::size_t>(
        std::partition_point(bases_.begin(), bases_.end(), [](const Rational& r) { return r.sign() < 0; }) -
        bases_.begin());
}

bool KorseltSet::contains(const Rational& alpha) const {
    return std::binary_search(bases_.begin(), bases_.end(), alpha);
}

std::span<const Rational> KorseltSet::negatives() const { return {bases_.data(), first_positive_}; }

std::span<const Rational> KorseltSet::positives() const {
    return std::span<const Rational>{bases_}.subspan(first_positive_);
}

KorseltSet KorseltSet::integers() const {
    std::vector<Rational> out;
    std::copy_if(bases_.begin(), bases_.end(), std::back_inserter(out),
                 [](const Rational& r) { return r.is_integer(); });
    return {n_, std::move(out)};
}

bool is_korselt_base(const SquarefreeFactorization& f, const Rational& alpha) {
    if (alpha == Rational{0} || alpha == Rational{f.n})
        throw std::domain_error("korselt: base must not be 0 or N");
    const Wide a1 = alpha.num();
    const Wide a2 = alpha.den();
    const Wide target = a2 * f.n - a1;
    for (Int p : f.primes) {
        const Wide d = a2 * p - a1;
        if (d == 0) return false;  // target != 0 since alpha != N
        if (target % d != 0) return false;
    }
    return true;
}

Rational m_value(Int n, Int k, Int p) {
    if (k == -1) throw std::domain_error("korselt: M(k, p) undefined for k = -1");
    if (p <= 0 || n % p != 0) throw std::domain_error("korselt: p must divide N");
    return reduce(Wide{n} + Wide{k} * p, Wide{k} + 1);
}

BoundsReport korselt_bounds(const SquarefreeFactorization& f) {
    const auto m = static_cast<Int>(f.m());
    BoundsReport rep;
    rep.n = f.n;
    rep.lower = m_value(f.n, -m - 2, f.p(1));
    const Rational penultimate = m_value(f.n, m - 1, f.p(f.m() - 1));
    const Rational last = m_value(f.n, m, f.p(f.m()));
    if (penultimate < last) {
        rep.upper = penultimate;
        rep.upper_argmin = UpperArgmin::kPenultimate;
    } else if (last < penultimate) {
        rep.upper = last;
        rep.upper_argmin = UpperArgmin::kLast;
    } else {
        rep.upper = last;
        rep.upper_argmin = UpperArgmin::kTie;
    }
    return rep;
}

std::optional<std::size_t> upper_attainment(const SquarefreeFactorization& f, const KorseltSet& ks) {
    for (std::size_t j = 1; j <= f.m(); ++j) {
        if (ks.contains(m_value(f.n, static_cast<Int>(j), f.p(j)))) return j;
    }
    return std::nullopt;
}

}  // namespace korselt
