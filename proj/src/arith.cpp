#include "dp1/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

namespace dp1 {

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 m = neg ? u128(0) - u128(v) : u128(v);
    std::string s;
    while (m > 0) {
        s += char('0' + int(m % 10));
        m /= 10;
    }
    if (neg) s += '-';
    std::reverse(s.begin(), s.end());
    return s;
}

i64 gcd_nonneg(i64 a, i64 b) {
    u128 x = a < 0 ? u128(0) - u128(a) : u128(a);
    u128 y = b < 0 ? u128(0) - u128(b) : u128(b);
    while (y != 0) {
        u128 t = x % y;
        x = y;
        y = t;
    }
    return static_cast<i64>(x);
}

i128 gcd_nonneg(i128 a, i128 b) {
    u128 x = a < 0 ? u128(0) - u128(a) : u128(a);
    u128 y = b < 0 ? u128(0) - u128(b) : u128(b);
    while (y != 0) {
        u128 t = x % y;
        x = y;
        y = t;
    }
    return static_cast<i128>(x);
}

u128 isqrt(u128 v) {
    if (v == 0) return 0;
    // long double seed is good to a few ulps; fix up exactly.
    u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

bool perfect_square(i128 v, i128& root) {
    if (v < 0) return false;
    u128 r = isqrt(static_cast<u128>(v));
    if (static_cast<i128>(r * r) == v) {
        root = static_cast<i128>(r);
        return true;
    }
    return false;
}

bool triple_product_leq(i128 x1, i128 x2, i128 x3, i128 cap, i128& out) {
    if (cap < 0) return false;
    if (x1 == 0 || x2 == 0 || x3 == 0) {
        out = 0;
        return true;
    }
    // a <= cap/b (floor) is exactly a*b <= cap for positive integers, so no
    // intermediate product is ever formed past the cap
    const i128 a1 = iabs(x1), a2 = iabs(x2), a3 = iabs(x3);
    if (a2 > cap || a1 > cap / a2) return false;
    const i128 m12 = x1 * x2;
    if (iabs(m12) > cap / a3) return false;
    out = m12 * x3;
    return true;
}

// ---------------------------------------------------------------------------

TwistFamily::TwistFamily(i64 e1, i64 e2, i64 e3) : e1(e1), e2(e2), e3(e3) {
    if (e1 == e2 || e2 == e3 || e1 == e3)
        throw std::invalid_argument("twist family requires three distinct integers");
    constexpr i64 cap = 1'000'000;
    if (std::abs(e1) > cap || std::abs(e2) > cap || std::abs(e3) > cap)
        throw std::invalid_argument("twist family entries must satisfy |e_i| <= 10^6");
}

std::string TwistFamily::str() const {
    return std::to_string(e1) + "," + std::to_string(e2) + "," + std::to_string(e3);
}

QuadForm::QuadForm(i64 q11, i64 q12, i64 q22) : q11(q11), q12(q12), q22(q22) {
    if (q12 * q12 - 4 * q11 * q22 == 0)
        throw std::invalid_argument("quadratic form must be non-degenerate (q12^2 - 4 q11 q22 != 0)");
    constexpr i64 cap = 1'000'000;
    if (std::abs(q11) > cap || std::abs(q12) > cap || std::abs(q22) > cap)
        throw std::invalid_argument("quadratic form coefficients must satisfy |q| <= 10^6");
}

std::string QuadForm::str() const {
    return std::to_string(q11) + "," + std::to_string(q12) + "," + std::to_string(q22);
}

// ---------------------------------------------------------------------------

std::pair<i64, i64> squarefree_decompose(i64 m) {
    if (m <= 0) throw std::invalid_argument("squarefree_decompose requires m >= 1");
    i64 a = 1, b = 1;
    for (i64 p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e & 1) a *= p;
        for (int k = 0; k < e / 2; ++k) b *= p;
    }
    a *= m;  // leftover is prime (or 1)
    return {a, b};
}

int two_adic_valuation(i64 m) {
    if (m == 0) throw std::invalid_argument("two_adic_valuation requires m != 0");
    return std::countr_zero(static_cast<std::uint64_t>(std::abs(m)));
}

i64 divisor_count(i64 n) {
    if (n <= 0) throw std::invalid_argument("divisor_count requires n >= 1");
    i64 tau = 1;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        tau *= e + 1;
    }
    if (n > 1) tau *= 2;
    return tau;
}

std::vector<i64> divisors_of(i64 n) {
    n = std::abs(n);
    if (n == 0) throw std::invalid_argument("divisors_of requires n != 0");
    std::vector<i64> small, large;
    for (i64 d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

namespace {

// Signed divisors of |g| in ascending numeric order: -dk,...,-1,1,...,dk.
std::vector<i64> signed_divisors(i64 g) {
    std::vector<i64> pos = divisors_of(g);
    std::vector<i64> out;
    out.reserve(2 * pos.size());
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back(-*it);
    out.insert(out.end(), pos.begin(), pos.end());
    return out;
}

}  // namespace

std::vector<std::array<i64, 3>> signed_divisor_triples(const TwistFamily& family) {
    const auto d1s = signed_divisors(family.e2 - family.e3);
    const auto d2s = signed_divisors(family.e3 - family.e1);
    const auto d3s = signed_divisors(family.e1 - family.e2);
    std::vector<std::array<i64, 3>> out;
    out.reserve(d1s.size() * d2s.size() * d3s.size() / 2);
    for (i64 d1 : d1s)
        for (i64 d2 : d2s)
            for (i64 d3 : d3s) {
                // product sign check without forming the product
                int neg = (d1 < 0) + (d2 < 0) + (d3 < 0);
                if (neg % 2 == 0) out.push_back({d1, d2, d3});
            }
    return out;
}

// ---------------------------------------------------------------------------

SpfSieve::SpfSieve(i64 limit) {
    if (limit < 1) limit = 1;
    if (limit > 200'000'000)
        throw BudgetExceeded(200'000'000);  // sieve memory guard
    spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
    for (i64 i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        for (i64 j = i; j <= limit; j += i)
            if (spf_[j] == 0) spf_[j] = static_cast<std::int32_t>(i);
    }
}

std::pair<i64, i64> SpfSieve::squarefree_decompose(i64 m) const {
    i64 a = 1, b = 1;
    while (m > 1) {
        i64 p = spf_[m];
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e & 1) a *= p;
        for (int k = 0; k < e / 2; ++k) b *= p;
    }
    return {a, b};
}

void SpfSieve::distinct_primes(i64 m, std::vector<i64>& out) const {
    out.clear();
    while (m > 1) {
        i64 p = spf_[m];
        out.push_back(p);
        while (m % p == 0) m /= p;
    }
}

// ---------------------------------------------------------------------------

void run_workers(const ExecCtx& ctx, const std::function<void(int, int)>& body) {
    int nw = std::max(1, ctx.threads);
    if (nw == 1) {
        body(0, 1);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(nw);
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            try {
                body(w, nw);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

}  // namespace dp1
