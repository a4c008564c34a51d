#include "korselt/arith.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

namespace korselt {

namespace {

using U64 = std::uint64_t;
using U128 = unsigned __int128;

constexpr Int kTrialBound = 1000;

U64 mul_mod(U64 a, U64 b, U64 m) { return static_cast<U64>(U128{a} * b % m); }

U64 pow_mod(U64 base, U64 exp, U64 m) {
    U64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool miller_rabin_witness(U64 n, U64 a, U64 d, int s) {
    U64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

// Brent's variant of Pollard rho. n must be odd composite.
U64 rho_split(U64 n) {
    std::mt19937_64 rng(n);
    for (;;) {
        U64 c = rng() % (n - 1) + 1;
        U64 y = rng() % n;
        U64 m = 128;
        U64 g = 1, r = 1, q = 1, x = 0, ys = 0;
        auto f = [&](U64 v) { return (mul_mod(v, v, n) + c) % n; };
        do {
            x = y;
            for (U64 i = 0; i < r; ++i) y = f(y);
            U64 k = 0;
            do {
                ys = y;
                for (U64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(U64 n, std::vector<Int>& out) {
    if (n == 1) return;
    if (is_prime(static_cast<Int>(n))) {
        out.push_back(static_cast<Int>(n));
        return;
    }
    U64 d = rho_split(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

NotSquarefree::NotSquarefree(Int n_, Int p)
    : std::domain_error(std::to_string(n_) + " is not squarefree (" + std::to_string(p) + "^2 divides it)"),
      n(n_),
      repeated_prime(p) {}

NotComposite::NotComposite(Int n_)
    : std::domain_error(std::to_string(n_) + " is not composite"), n(n_) {}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

bool is_prime(Int n) {
    if (n < 2) return false;
    static constexpr std::array<U64, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    const auto u = static_cast<U64>(n);
    for (U64 p : kBases) {
        if (u % p == 0) return u == p;
    }
    U64 d = u - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (U64 a : kBases) {
        if (miller_rabin_witness(u, a, d, s)) return false;
    }
    return true;
}

std::vector<Int> factor(Int n) {
    if (n < 1) throw std::domain_error("korselt: factor() needs n >= 1");
    std::vector<Int> out;
    for (Int p = 2; p <= kTrialBound && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    if (n > 1) {
        const auto before = out.size();
        factor_into(static_cast<U64>(n), out);
        std::sort(out.begin() + static_cast<std::ptrdiff_t>(before), out.end());
    }
    return out;
}

std::optional<SquarefreeFactorization> try_factor_squarefree(Int n) {
    if (n < 2) return std::nullopt;
    auto primes = factor(n);
    if (primes.size() < 2) return std::nullopt;
    if (std::adjacent_find(primes.begin(), primes.end()) != primes.end()) return std::nullopt;
    return SquarefreeFactorization{n, std::move(primes)};
}

SquarefreeFactorization factor_squarefree(Int n) {
    if (n < 2) throw NotComposite(n);
    auto primes = factor(n);
    if (auto it = std::adjacent_find(primes.begin(), primes.end()); it != primes.end())
        throw NotSquarefree(n, *it);
    if (primes.size() < 2) throw NotComposite(n);
    return SquarefreeFactorization{n, std::move(primes)};
}

std::vector<Int> divisors(Int n) {
    if (n < 1) throw std::domain_error("korselt: divisors() needs n >= 1");
    std::vector<Int> out{1};
    auto primes = factor(n);
    for (std::size_t i = 0; i < primes.size();) {
        const Int p = primes[i];
        std::size_t e = 0;
        while (i < primes.size() && primes[i] == p) {
            ++e;
            ++i;
        }
        const std::size_t base = out.size();
        Int pk = 1;
        for (std::size_t k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Int> signed_divisors(Int n) {
    auto pos = divisors(n);
    std::vector<Int> out;
    out.reserve(pos.size() * 2);
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back(-*it);
    out.insert(out.end(), pos.begin(), pos.end());
    return out;
}

}  // namespace korselt
