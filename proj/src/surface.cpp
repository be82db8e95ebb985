#include "dp1/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dp1 {

namespace {

constexpr i64 UV_CAP = 1'000'000'000;
constexpr i64 XY_CAP = 1'000'000'000'000'000'000;  // 10^18 = (10^6)^3

void check_coords(i64 y, i64 x, i64 u, i64 v) {
    if (std::abs(u) > UV_CAP || std::abs(v) > UV_CAP)
        throw std::invalid_argument("weighted point requires |u|, |v| <= 10^9");
    if (std::abs(x) > XY_CAP || std::abs(y) > XY_CAP)
        throw std::invalid_argument("weighted point requires |x|, |y| <= 10^18");
}

int valuation(i64 m, i64 p) {  // m != 0
    int k = 0;
    while (m % p == 0) {
        m /= p;
        ++k;
    }
    return k;
}

// Distinct primes of g by trial division; g <= 10^9 so the leftover after
// p <= sqrt(g) is prime.
void primes_of(i64 g, std::vector<i64>& out) {
    out.clear();
    for (i64 p = 2; p * p <= g; ++p) {
        if (g % p != 0) continue;
        out.push_back(p);
        while (g % p == 0) g /= p;
    }
    if (g > 1) out.push_back(g);
}

constexpr int INF_VAL = 1 << 28;

// largest lambda with lambda | u, lambda | v, lambda^2 | x, lambda^3 | y
i64 scaling_lambda(i64 y, i64 x, i64 u, i64 v) {
    std::vector<i64> ps;
    if (u != 0 || v != 0) {
        i64 g = gcd_nonneg(u, v);
        if (g == 1) return 1;
        primes_of(g, ps);
    } else if (y != 0) {
        // lambda^3 | y pins every scaling prime below |y|^(1/3) <= 10^6
        i64 m = std::abs(y);
        for (i64 p = 2; p * p * p <= m; ++p) {
            if (m % p != 0) continue;
            ps.push_back(p);
            while (m % p == 0) m /= p;
        }
    } else {
        // only lambda^2 | x constrains; x != 0 here (not all zero)
        i64 m = std::abs(x), lam = 1;
        for (i64 p = 2; p * p <= m && p <= 1'000'000; ++p) {
            if (m % p != 0) continue;
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            for (int k = 0; k < e / 2; ++k) lam *= p;
        }
        i128 root;
        if (m > 1 && perfect_square(i128(m), root)) lam *= static_cast<i64>(root);
        return lam;
    }
    i64 lam = 1;
    for (i64 p : ps) {
        int a = std::min(u != 0 ? valuation(u, p) : INF_VAL, v != 0 ? valuation(v, p) : INF_VAL);
        a = std::min(a, x != 0 ? valuation(x, p) / 2 : INF_VAL);
        a = std::min(a, y != 0 ? valuation(y, p) / 3 : INF_VAL);
        for (int k = 0; k < a; ++k) lam *= p;
    }
    return lam;
}

bool canonical_sign(i64 y, i64 u, i64 v) {
    if (u != 0) return u > 0;
    if (v != 0) return v > 0;
    if (y != 0) return y > 0;
    return true;  // u = v = y = 0: the -1 scaling acts trivially
}

// true when no prime p | gcd(u,v) has p^2 | x and p^3 | y; y != 0 assumed
bool normalized_at_uv(i64 y, i64 x, i64 u, i64 v, const SpfSieve& sieve, std::vector<i64>& scratch) {
    i64 g = gcd_nonneg(u, v);
    if (g <= 1) return true;
    sieve.distinct_primes(g, scratch);
    for (i64 p : scratch) {
        const i64 p2 = p * p;
        if (x % p2 != 0) continue;
        if (y % (p2 * p) == 0) return false;
    }
    return true;
}

struct FiberPoints {
    const TwistCensus* pos = nullptr;
    const TwistCensus* neg = nullptr;
    static const std::vector<std::pair<i64, i64>>& empty() {
        static const std::vector<std::pair<i64, i64>> e;
        return e;
    }
    const std::vector<std::pair<i64, i64>>& at(i64 n) const {
        const TwistCensus* c = n > 0 ? pos : neg;
        if (!c) return empty();
        auto it = c->per_n.find(n > 0 ? n : -n);
        return it == c->per_n.end() ? empty() : it->second;
    }
};

}  // namespace

WeightedPoint WeightedPoint::checked(i64 y, i64 x, i64 u, i64 v) {
    if (y == 0 && x == 0 && u == 0 && v == 0)
        throw std::invalid_argument("weighted point requires a nonzero coordinate");
    check_coords(y, x, u, v);
    if (scaling_lambda(y, x, u, v) != 1)
        throw std::invalid_argument("weighted point coordinates are not normalized");
    if (!canonical_sign(y, u, v))
        throw std::invalid_argument("weighted point coordinates violate the canonical sign");
    return WeightedPoint{y, x, u, v};
}

WeightedPoint normalize(i64 y, i64 x, i64 u, i64 v) {
    if (y == 0 && x == 0 && u == 0 && v == 0)
        throw std::invalid_argument("normalize requires a nonzero coordinate");
    check_coords(y, x, u, v);
    const i64 lam = scaling_lambda(y, x, u, v);
    u /= lam;
    v /= lam;
    x /= lam * lam;
    y /= lam * lam * lam;
    if (!canonical_sign(y, u, v)) {
        y = -y;
        u = -u;
        v = -v;
    }
    return WeightedPoint{y, x, u, v};
}

bool height_leq(const WeightedPoint& p, i64 B) {
    if (B < 1 || B > 1'000'000) throw std::invalid_argument("height bound B must be in [1, 10^6]");
    const i128 B2 = i128(B) * B;
    return iabs(p.y) <= B2 * B && iabs(p.x) <= B2 && std::abs(p.u) <= B && std::abs(p.v) <= B;
}

const char* name(SurfaceMethod m) { return m == SurfaceMethod::brute ? "brute" : "fibration"; }

SurfaceCensus count_bruteforce(const SurfaceSpec& spec, i64 B, const ExecCtx& ctx) {
    if (B < 1 || B > 1'000'000) throw std::invalid_argument("height bound B must be in [1, 10^6]");
    const i128 B2 = i128(B) * B;
    const i128 cap = B2 * B2 * B2;
    ctx.budget.require((2 * i128(B) * B + 2 * B) * (2 * B2 + 1));

    const SpfSieve sieve(B);
    const auto& e = spec.family;
    const int nw = std::max(1, ctx.threads);
    std::vector<std::vector<SurfaceRow>> parts(nw);

    run_workers(ctx, [&](int wid, int nworkers) {
        std::vector<i64> scratch;
        auto& rows = parts[wid];
        // canonical (u, v): u > 0 with any v, or u = 0 with v > 0
        for (i64 u = wid; u <= B; u += nworkers) {
            const i64 vlo = (u == 0) ? 1 : -B;
            for (i64 v = vlo; v <= B; ++v) {
                const i64 n = spec.q.eval(u, v);
                if (n == 0) continue;
                const i128 t1 = i128(e.e1) * n, t2 = i128(e.e2) * n, t3 = i128(e.e3) * n;
                for (i64 x = -static_cast<i64>(B2); x <= static_cast<i64>(B2); ++x) {
                    i128 rhs;
                    if (!triple_product_leq(x - t1, x - t2, x - t3, cap, rhs)) continue;
                    if (rhs <= 0) continue;
                    i128 yroot;
                    if (!perfect_square(rhs, yroot)) continue;
                    const i64 y = static_cast<i64>(yroot);
                    if (!normalized_at_uv(y, x, u, v, sieve, scratch)) continue;
                    rows.push_back(SurfaceRow{WeightedPoint{-y, x, u, v}, n});
                    rows.push_back(SurfaceRow{WeightedPoint{y, x, u, v}, n});
                }
            }
        }
    });

    SurfaceCensus census{spec, B, SurfaceMethod::brute, 0, {}};
    for (auto& part : parts)
        census.rows.insert(census.rows.end(), part.begin(), part.end());
    std::sort(census.rows.begin(), census.rows.end());
    census.N = static_cast<i64>(census.rows.size());
    return census;
}

SurfaceCensus count_fibration(const SurfaceSpec& spec, i64 B, const ExecCtx& ctx) {
    if (B < 1 || B > 1'000'000) throw std::invalid_argument("height bound B must be in [1, 10^6]");
    const auto& e = spec.family;

    // fibers n = Q(u,v) over the canonical (u, v) box
    std::map<i64, std::vector<std::pair<i64, i64>>> fibers;
    ctx.budget.charge(2 * B * B + 2 * B);
    i64 max_pos = 0, max_neg = 0;
    for (i64 u = 0; u <= B; ++u) {
        const i64 vlo = (u == 0) ? 1 : -B;
        for (i64 v = vlo; v <= B; ++v) {
            const i64 n = spec.q.eval(u, v);
            if (n == 0) continue;
            fibers[n].emplace_back(u, v);
            if (n > 0) max_pos = std::max(max_pos, n);
            if (n < 0) max_neg = std::max(max_neg, -n);
        }
    }

    // integral points per fiber from the descent parametrization; positive
    // fibers use e, negative fibers use -e with twist |n|
    std::optional<TwistCensus> pos, neg;
    if (max_pos > 0)
        pos = aggregate_census(e, B, TwistMethod::descent, ctx,
                               std::min(max_pos, n_cutoff(e, B)));
    if (max_neg > 0)
        neg = aggregate_census(e.negated(), B, TwistMethod::descent, ctx,
                               std::min(max_neg, n_cutoff(e.negated(), B)));
    FiberPoints fp{pos ? &*pos : nullptr, neg ? &*neg : nullptr};

    const SpfSieve sieve(B);
    SurfaceCensus census{spec, B, SurfaceMethod::fibration, 0, {}};
    std::vector<i64> scratch;
    for (const auto& [n, uvs] : fibers) {
        const auto& pts = fp.at(n);
        if (pts.empty()) continue;
        ctx.budget.charge(static_cast<i64>(uvs.size() * pts.size()));
        for (const auto& [u, v] : uvs)
            for (const auto& [x, y] : pts) {
                if (!normalized_at_uv(y, x, u, v, sieve, scratch)) continue;
                census.rows.push_back(SurfaceRow{WeightedPoint{y, x, u, v}, n});
            }
    }
    std::sort(census.rows.begin(), census.rows.end());
    census.N = static_cast<i64>(census.rows.size());
    return census;
}

i64 representation_count(const QuadForm& q, i64 n, i64 B, const ExecCtx& ctx) {
    if (n == 0) throw std::invalid_argument("representation count requires n != 0");
    if (B < 1) throw std::invalid_argument("box bound B must be >= 1");
    ctx.budget.require((2 * i128(B) + 1) * (2 * i128(B) + 1));
    const int nw = std::max(1, ctx.threads);
    std::vector<i64> parts(nw, 0);
    run_workers(ctx, [&](int wid, int nworkers) {
        i64 c = 0;
        for (i64 u = -B + wid; u <= B; u += nworkers)
            for (i64 v = -B; v <= B; ++v)
                if (q.eval(u, v) == n) ++c;
        parts[wid] = c;
    });
    i64 total = 0;
    for (i64 c : parts) total += c;
    return total;
}

double beta_value(i64 N, i64 B) {
    if (N < 1) throw std::invalid_argument("beta requires N >= 1");
    if (B < 2) throw std::invalid_argument("beta requires B >= 2");
    return std::log(double(N)) / std::log(double(B));
}

double beta(const SurfaceSpec& spec, i64 B, SurfaceMethod method, const ExecCtx& ctx) {
    const SurfaceCensus census = method == SurfaceMethod::brute ? count_bruteforce(spec, B, ctx)
                                                                : count_fibration(spec, B, ctx);
    return beta_value(census.N, B);
}

std::vector<WeightedPoint> family_R(const TwistFamily& family, i64 B) {
    if (B < 1 || B > 1'000'000) throw std::invalid_argument("height bound B must be in [1, 10^6]");
    const auto [e1, e2, e3] = arrange_max_last(family);
    const i64 m = 2 * e3 - e1 - e2;  // > 0 once e3 is the maximum
    const int t = two_adic_valuation(m);
    const i64 upow = i64(2) << t;    // 2^(1+v2(m))
    const i64 vodd = m >> t;
    const i128 ycoef = 4 * i128(e1 - e2) * (e2 - e3) * (e3 - e1);
    const i128 xcoef = 2 * (i128(-2) * e1 * e2 + i128(e1) * e3 + i128(e2) * e3);
    const i128 B2 = i128(B) * B, B3 = B2 * B;

    std::vector<WeightedPoint> out;
    for (i64 w1 = 1; upow * w1 * w1 <= B; ++w1) {
        for (i64 w2 = 1; vodd * w2 * w2 <= B; w2 += 2) {
            if (gcd_nonneg(w1, m * w2) != 1) continue;
            const i128 ww = i128(w1) * w2;
            const i128 y = ycoef * ww * ww * ww;
            const i128 x = xcoef * ww * ww;
            if (iabs(y) > B3 || iabs(x) > B2) continue;
            out.push_back(WeightedPoint::checked(static_cast<i64>(y), static_cast<i64>(x),
                                                 upow * w1 * w1, vodd * w2 * w2));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dp1
