#include "dp1/twists.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dp1 {

namespace {

constexpr i64 B_CAP = 1'000'000;  // keeps B^6 inside 128 bits

void check_B(i64 B) {
    if (B < 1) throw std::invalid_argument("height bound B must be >= 1");
    if (B > B_CAP) throw std::invalid_argument("height bound B must be <= 10^6");
}

// largest t >= 0 with mult * t^2 <= cap (mult > 0)
i64 bound_sq(i128 cap, i128 mult) {
    if (cap < mult) return 0;
    return static_cast<i64>(isqrt(static_cast<u128>(cap / mult)));
}

i128 fdiv(i128 a, i128 b) {  // floor division, b > 0
    i128 q = a / b, r = a % b;
    return (r != 0 && a < 0) ? q - 1 : q;
}

i128 cdiv(i128 a, i128 b) {  // ceiling division, b > 0
    i128 q = a / b, r = a % b;
    return (r != 0 && a > 0) ? q + 1 : q;
}

// Buffered budget accounting for tight loops.
struct Charger {
    const OpBudget& budget;
    i64 local = 0;
    void tick(i64 k = 1) {
        local += k;
        if (local >= 8192) flush();
    }
    void flush() {
        if (local > 0) {
            budget.charge(local);
            local = 0;
        }
    }
};

// y > 0 representative of a mirror pair of points.
struct RawPoint {
    i64 n, x, y;
    auto operator<=>(const RawPoint&) const = default;
};

// All (x, y > 0) on y^2 = (x - e1 n)(x - e2 n)(x - e3 n) with |x| <= B^2,
// |y| <= B^3; no budget handling here.
void scan_curve_points(const TwistFamily& family, i64 n, i64 B, std::vector<std::pair<i64, i64>>& out) {
    const i128 B2 = i128(B) * B;
    const i128 cap = B2 * B2 * B2;
    const i128 t1 = i128(family.e1) * n, t2 = i128(family.e2) * n, t3 = i128(family.e3) * n;
    for (i64 x = -static_cast<i64>(B2); x <= static_cast<i64>(B2); ++x) {
        i128 rhs;
        if (!triple_product_leq(x - t1, x - t2, x - t3, cap, rhs)) continue;
        if (rhs <= 0) continue;
        i128 y;
        if (!perfect_square(rhs, y)) continue;
        out.emplace_back(x, static_cast<i64>(y));
    }
}

// ---------------------------------------------------------------------------
// Descent-side census.
//
// For each admissible divisor triple d the tuples (w, a, b) satisfy
//   g1 a1 b1^2 + g2 a2 b2^2 + g3 a3 b3^2 = 0,  g_i = (e_j - e_k) d_j d_k
// (indices cyclic), so with X_i = a_i b_i^2 the scan walks (X_p, X_q) and
// solves for X_r, whose squarefree split recovers (a_r, b_r) uniquely.
// Every loop bound below is a necessary condition for the final point to
// satisfy |x| <= B^2, |y| <= B^3 and n <= n_ceiling, so no tuple is lost.
// ---------------------------------------------------------------------------

struct DescentScanner {
    const TwistFamily& family;
    i64 B;
    i64 n_ceiling;
    const SpfSieve& sieve;
    const OpBudget& budget;

    i128 B3;
    i128 M[3];  // |x - e_i n| <= M_i for every admissible point
    int p, q, r;

    DescentScanner(const TwistFamily& fam, i64 B, i64 n_ceiling, const SpfSieve& sieve,
                   const OpBudget& budget)
        : family(fam), B(B), n_ceiling(n_ceiling), sieve(sieve), budget(budget) {
        const i128 B2 = i128(B) * B;
        B3 = B2 * B;
        const i64 e[3] = {fam.e1, fam.e2, fam.e3};
        for (int i = 0; i < 3; ++i) M[i] = B2 + i128(std::abs(e[i])) * n_ceiling;
        // solve for the coordinate with the weakest box, loop over the others
        r = 0;
        for (int i = 1; i < 3; ++i)
            if (M[i] > M[r]) r = i;
        p = (r == 0) ? 1 : 0;
        q = (r == 2) ? 1 : 2;
    }

    std::pair<i64, i64> decompose_sf(i64 m) const {
        if (m <= sieve.limit()) return sieve.squarefree_decompose(m);
        return squarefree_decompose(m);
    }

    bool squarefree(i64 m) const { return decompose_sf(m).second == 1; }

    // One (d, w) slice of the scan.
    void scan(const std::array<i64, 3>& d, i64 w, std::vector<RawPoint>& out) const {
        if (gcd_nonneg(d[0], d[1]) != 1 || gcd_nonneg(d[1], d[2]) != 1 || gcd_nonneg(d[0], d[2]) != 1)
            return;  // tuples require pairwise coprime d
        const i64 e[3] = {family.e1, family.e2, family.e3};
        const i64 gaps[3] = {e[1] - e[2], e[2] - e[0], e[0] - e[1]};
        i128 g[3];
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3, k = (i + 2) % 3;
            g[i] = i128(gaps[i]) * d[j] * d[k];
        }
        const i128 w2 = i128(w) * w;
        const i128 w3 = w2 * w;
        if (w3 > B3) return;
        const i128 dqr = iabs(i128(d[q]) * d[r]);
        const i128 dpr = iabs(i128(d[p]) * d[r]);
        const i128 dpq = iabs(i128(d[p]) * d[q]);
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3, k = (i + 2) % 3;
            if (w2 * iabs(i128(d[j]) * d[k]) > M[i]) return;
        }

        Charger ops{budget};
        const i64 apMax = std::min(bound_sq(M[p], w2 * dqr), bound_sq(B3, w3));
        for (i64 ap = 1; ap <= apMax; ++ap) {
            if (!squarefree(ap) || gcd_nonneg(d[p], ap) != 1) continue;
            const i128 ap2 = i128(ap) * ap;
            const i64 bpMax = std::min<i64>(bound_sq(M[p], w2 * dqr * ap2),
                                            static_cast<i64>(B3 / (w3 * ap2)));
            for (i64 bp = 1; bp <= bpMax; ++bp) {
                const i64 Xp = ap * bp * bp;
                if (gcd_nonneg(d[p], Xp) != 1) continue;
                const i128 C = -g[p] * Xp;
                const i64 aqMax =
                    std::min(bound_sq(M[q], w2 * dpr * ap), bound_sq(B3 / w3, i128(ap) * ap));
                for (i64 aq = 1; aq <= aqMax; ++aq) {
                    ops.tick(4);
                    if (!squarefree(aq) || gcd_nonneg(ap, aq) != 1 || gcd_nonneg(d[q], aq) != 1)
                        continue;
                    const i128 XrMax = M[r] / (w2 * dpq * ap * aq);
                    if (XrMax < 1) break;  // shrinks as aq grows
                    const i128 apaq = i128(ap) * aq;
                    // b_q bounds: the X_q box, the |y| budget, and the window
                    // of b_q^2 values that keep X_r = (C - g_q a_q b_q^2)/g_r
                    // within [1, XrMax].
                    i64 hi = bound_sq(M[q], w2 * dpr * ap * aq * aq);
                    hi = std::min<i64>(hi, static_cast<i64>(B3 / (w3 * apaq * apaq * bp)));
                    i64 lo = 1;
                    {
                        i128 Tlo = g[r] > 0 ? g[r] : g[r] * XrMax;
                        i128 Thi = g[r] > 0 ? g[r] * XrMax : g[r];
                        i128 h = -g[q] * aq;
                        i128 sLo, sHi;  // window for s = b_q^2
                        if (h > 0) {
                            sLo = cdiv(Tlo - C, h);
                            sHi = fdiv(Thi - C, h);
                        } else {
                            sLo = cdiv(-(Thi - C), -h);
                            sHi = fdiv(-(Tlo - C), -h);
                        }
                        if (sHi < 1 || sLo > sHi) continue;
                        if (sLo > 1) {
                            u128 t = isqrt(static_cast<u128>(sLo));
                            lo = static_cast<i64>(t);
                            if (i128(lo) * lo < sLo) ++lo;
                        }
                        hi = std::min<i64>(hi, static_cast<i64>(isqrt(static_cast<u128>(sHi))));
                    }
                    for (i64 bq = lo; bq <= hi; ++bq) {
                        ops.tick();
                        const i64 Xq = aq * bq * bq;
                        const i128 T = C - g[q] * Xq;
                        if (T % g[r] != 0) continue;
                        const i128 Xr128 = T / g[r];
                        if (Xr128 < 1 || Xr128 > XrMax) continue;
                        const i64 Xr = static_cast<i64>(Xr128);
                        if (gcd_nonneg(Xp, Xq) != 1 || gcd_nonneg(Xp, Xr) != 1 ||
                            gcd_nonneg(Xq, Xr) != 1)
                            continue;
                        if (gcd_nonneg(d[q], Xq) != 1 || gcd_nonneg(d[r], Xr) != 1) continue;
                        auto [ar, br] = decompose_sf(Xr);
                        ops.tick(8);
                        const i128 A = apaq * ar;
                        if (w3 * A * A * bp * bq * br > B3) continue;

                        i64 av[3], bv[3];
                        av[p] = ap, av[q] = aq, av[r] = ar;
                        bv[p] = bp, bv[q] = bq, bv[r] = br;
                        DescentTuple t{d[0], d[1], d[2], w,    av[0], av[1],
                                       av[2], bv[0], bv[1], bv[2]};
                        auto tv = tuple_to_twist_values(t, family);
                        if (!tv) continue;
                        if (tv->n > n_ceiling) continue;
                        if (iabs(tv->x) > i128(B) * B || iabs(tv->y) > B3) continue;
                        out.push_back(RawPoint{static_cast<i64>(tv->n), static_cast<i64>(tv->x),
                                               static_cast<i64>(tv->y)});
                    }
                }
            }
        }
        ops.flush();
    }
};

TwistCensus census_brute(const TwistFamily& family, i64 B, i64 n_ceiling, const ExecCtx& ctx) {
    const i128 B2 = i128(B) * B;
    ctx.budget.require(i128(n_ceiling) * (2 * B2 + 1));

    const int nw = std::max(1, ctx.threads);
    std::vector<std::map<i64, std::vector<std::pair<i64, i64>>>> parts(nw);
    run_workers(ctx, [&](int wid, int nworkers) {
        std::vector<std::pair<i64, i64>> pts;
        for (i64 n = 1 + wid; n <= n_ceiling; n += nworkers) {
            pts.clear();
            scan_curve_points(family, n, B, pts);
            if (!pts.empty()) {
                auto& dst = parts[wid][n];
                for (auto [x, y] : pts) {
                    dst.emplace_back(x, -y);
                    dst.emplace_back(x, y);
                }
                std::sort(dst.begin(), dst.end());
            }
        }
    });

    TwistCensus census{family, B, TwistMethod::brute, 0, {}};
    for (auto& part : parts)
        for (auto& [n, pts] : part) census.per_n.emplace(n, std::move(pts));
    for (auto& [n, pts] : census.per_n) census.total += static_cast<i64>(pts.size());
    return census;
}

TwistCensus census_descent(const TwistFamily& family, i64 B, i64 n_ceiling, const ExecCtx& ctx) {
    const auto triples = signed_divisor_triples(family);
    // only the solved-for coordinate is ever factored
    i128 maxM = i128(B) * B;
    for (i64 e : family.elems()) maxM = std::max(maxM, i128(B) * B + i128(std::abs(e)) * n_ceiling);
    SpfSieve sieve(std::min<i128>(maxM, 200'000'000));

    const i64 jobs = static_cast<i64>(triples.size()) * B;
    const int nw = std::max(1, ctx.threads);
    std::vector<std::vector<RawPoint>> parts(nw);
    run_workers(ctx, [&](int wid, int nworkers) {
        DescentScanner scanner(family, B, n_ceiling, sieve, ctx.budget);
        for (i64 job = wid; job < jobs; job += nworkers) {
            const auto& d = triples[static_cast<std::size_t>(job / B)];
            const i64 w = job % B + 1;
            scanner.scan(d, w, parts[wid]);
        }
    });

    std::vector<RawPoint> raw;
    for (auto& part : parts) raw.insert(raw.end(), part.begin(), part.end());
    std::sort(raw.begin(), raw.end());
    if (std::adjacent_find(raw.begin(), raw.end()) != raw.end())
        throw std::logic_error("descent census produced a duplicate point; bijection violated");

    TwistCensus census{family, B, TwistMethod::descent, 0, {}};
    for (const auto& pt : raw) {
        auto& dst = census.per_n[pt.n];
        dst.emplace_back(pt.x, -pt.y);
        dst.emplace_back(pt.x, pt.y);
    }
    for (auto& [n, pts] : census.per_n) {
        std::sort(pts.begin(), pts.end());
        census.total += static_cast<i64>(pts.size());
    }
    return census;
}

}  // namespace

const char* name(TwistMethod m) { return m == TwistMethod::brute ? "brute" : "descent"; }

bool naive_height_leq(i64 x, i64 y, i64 B) {
    check_B(B);
    const i128 B2 = i128(B) * B;
    return iabs(x) <= B2 && iabs(y) <= B2 * B;
}

i64 n_cutoff(const TwistFamily& family, i64 B) {
    check_B(B);
    if (i128(family.e1) * family.e2 * family.e3 != 0) return 2 * B * B;
    i64 g = std::min({std::abs(family.e1 - family.e2), std::abs(family.e2 - family.e3),
                      std::abs(family.e1 - family.e3)});
    i128 num = 2 * i128(B) * B * B;
    return static_cast<i64>((num + g - 1) / g);
}

std::vector<std::pair<i64, i64>> enumerate_points_bruteforce(const TwistFamily& family, i64 n, i64 B,
                                                             const ExecCtx& ctx) {
    check_B(B);
    if (n < 1) throw std::invalid_argument("twist index n must be >= 1");
    ctx.budget.require(2 * i128(B) * B + 1);
    std::vector<std::pair<i64, i64>> pos;
    scan_curve_points(family, n, B, pos);
    std::vector<std::pair<i64, i64>> out;
    out.reserve(2 * pos.size());
    for (auto [x, y] : pos) {
        out.emplace_back(x, -y);
        out.emplace_back(x, y);
    }
    std::sort(out.begin(), out.end());
    return out;
}

TwistCensus aggregate_census(const TwistFamily& family, i64 B, TwistMethod method, const ExecCtx& ctx,
                             std::optional<i64> n_ceiling) {
    check_B(B);
    const i64 ceiling = n_ceiling.value_or(n_cutoff(family, B));
    if (ceiling < 1) throw std::invalid_argument("n ceiling must be >= 1");
    return method == TwistMethod::brute ? census_brute(family, B, ceiling, ctx)
                                        : census_descent(family, B, ceiling, ctx);
}

int delta_exponent(const TwistFamily& family) {
    return i128(family.e1) * family.e2 * family.e3 != 0 ? 4 : 6;
}

std::array<i64, 3> arrange_max_last(const TwistFamily& family) {
    std::array<i64, 3> e = family.elems();
    int hi = 0;
    for (int i = 1; i < 3; ++i)
        if (e[i] > e[hi]) hi = i;
    std::array<i64, 3> out{};
    int at = 0;
    for (int i = 0; i < 3; ++i)
        if (i != hi) out[at++] = e[i];
    out[2] = e[hi];
    return out;
}

std::vector<FamilyPPoint> family_P(const TwistFamily& family, i64 B) {
    check_B(B);
    const auto [e1, e2, e3] = arrange_max_last(family);
    const i128 K1 = 4 * iabs(i128(e1 - e2) * (e2 - e3) * (e3 - e1));
    const i128 K2 = 2 * iabs(i128(-2) * e1 * e2 + i128(e1) * e3 + i128(e2) * e3);
    const i128 B2 = i128(B) * B, B3 = B2 * B;
    std::vector<FamilyPPoint> out;
    for (i64 w = 1;; ++w) {
        const i128 w2 = i128(w) * w, w3 = w2 * w;
        if (K1 * w3 > B3 || K2 * w2 > B2) break;
        const i128 n = 2 * i128(2 * e3 - e1 - e2) * w2;
        const i128 x = (i128(-2) * e1 * e2 + i128(e1) * e3 + i128(e2) * e3) * 2 * w2;
        const i128 y = 4 * i128(e1 - e2) * (e2 - e3) * (e3 - e1) * w3;
        out.push_back(FamilyPPoint{static_cast<i64>(n), static_cast<i64>(x), static_cast<i64>(y)});
    }
    return out;
}

DensityResult density_experiment(const TwistFamily& family, i64 N, double A, i64 cap,
                                 const ExecCtx& ctx) {
    if (N < 16) throw std::invalid_argument("density experiment requires N >= 16");
    if (!(A > 6)) throw std::invalid_argument("density experiment requires A > 6");
    if (cap < 1 || cap > B_CAP) throw std::invalid_argument("cap must be in [1, 10^6]");

    const auto [e1, e2, e3] = arrange_max_last(family);
    const i64 twice_m = 2 * (2 * e3 - e1 - e2);  // family twists are n = (2m) w^2

    const int nw = std::max(1, ctx.threads);
    std::vector<DensityResult> parts(nw);
    run_workers(ctx, [&](int wid, int nworkers) {
        DensityResult& acc = parts[wid];
        std::vector<std::pair<i64, i64>> pts;
        for (i64 n = 1 + wid; n <= N; n += nworkers) {
            bool family_member = false;
            if (n % twice_m == 0) {
                i128 root;
                family_member = perfect_square(i128(n / twice_m), root);
            }

            // moving threshold; n = 1 has log n = 0 and a formally infinite
            // threshold, resolved by the cap-bounded search below
            i64 flo = 0, fhi = 0;
            if (n >= 2) {
                const double thr = std::sqrt(double(n)) * std::pow(std::log(double(n)), -A);
                if (thr >= 1.0) {
                    flo = static_cast<i64>(std::floor(thr - 1e-6));
                    fhi = static_cast<i64>(std::floor(thr + 1e-6));
                }
            }

            const i64 H = std::max(cap, fhi);
            ctx.budget.charge(2 * H * H + 1);
            pts.clear();
            scan_curve_points(family, n, H, pts);
            i64 minH = std::numeric_limits<i64>::max();
            for (auto [x, y] : pts) {
                i64 hx = static_cast<i64>(isqrt(static_cast<u128>(std::abs(x))));
                if (i128(hx) * hx < std::abs(x)) ++hx;
                i64 hy = static_cast<i64>(std::cbrt(double(y)));
                while (i128(hy) * hy * hy < y) ++hy;
                while (hy > 1 && i128(hy - 1) * (hy - 1) * (hy - 1) >= y) --hy;
                minH = std::min(minH, std::max(hx, hy));
            }

            bool in_numerator;
            if (n == 1) {
                in_numerator = minH <= cap;
            } else {
                const bool lo_ok = minH <= flo, hi_ok = minH <= fhi;
                if (lo_ok != hi_ok) ++acc.guard_discrepancies;
                in_numerator = lo_ok;  // conservative near-integer resolution
            }
            if (in_numerator) ++acc.numerator;
            if (minH <= cap || family_member) ++acc.denominator_lower;
        }
    });

    DensityResult total;
    for (const auto& part : parts) {
        total.numerator += part.numerator;
        total.denominator_lower += part.denominator_lower;
        total.guard_discrepancies += part.guard_discrepancies;
    }
    return total;
}

}  // namespace dp1
