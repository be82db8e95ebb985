// Rational points of bounded height on the surfaces
//   y^2 = (x - e1 Q(u,v))(x - e2 Q(u,v))(x - e3 Q(u,v))  in P(3,2,1,1),
// counted on the open subset U (y != 0, Q(u,v) != 0) with
// H = max{|y|^(1/3), |x|^(1/2), |u|, |v|} <= B, either by a direct scan or
// by fibering over n = Q(u,v) and reusing the twist machinery.
#pragma once

#include <optional>
#include <vector>

#include "dp1/arith.hpp"
#include "dp1/twists.hpp"

namespace dp1 {

// Normalized representative: coordinates admit no scaling prime
// (p | u, p | v, p^2 | x, p^3 | y) and carry the canonical sign (first
// nonzero of u, v, y positive; x is invariant under the residual -1 scaling).
struct WeightedPoint {
    i64 y, x, u, v;

    static WeightedPoint checked(i64 y, i64 x, i64 u, i64 v);
    bool operator==(const WeightedPoint&) const = default;
    auto operator<=>(const WeightedPoint&) const = default;
};

// Divides out the largest lambda with lambda | u, v, lambda^2 | x,
// lambda^3 | y, then applies the canonical sign; idempotent.
WeightedPoint normalize(i64 y, i64 x, i64 u, i64 v);

// H(p) <= B, exactly: |y| <= B^3, |x| <= B^2, |u| <= B, |v| <= B.
bool height_leq(const WeightedPoint& p, i64 B);

enum class SurfaceMethod { brute, fibration };

const char* name(SurfaceMethod m);

struct SurfaceRow {
    WeightedPoint point;
    i64 n;  // Q(u, v)
    auto operator<=>(const SurfaceRow&) const = default;
};

struct SurfaceCensus {
    SurfaceSpec spec;
    i64 B;
    SurfaceMethod method;
    i64 N = 0;
    std::vector<SurfaceRow> rows;  // sorted by (u, v, x, y)

    bool same_points(const SurfaceCensus& other) const { return rows == other.rows; }
};

// N_{U,H}(B) and the underlying point list by direct (u, v, x) scan.
SurfaceCensus count_bruteforce(const SurfaceSpec& spec, i64 B, const ExecCtx& ctx = {});

// Same census assembled fiberwise over n = Q(u,v), with positive fibers
// served by the family e and negative fibers by -e.
SurfaceCensus count_fibration(const SurfaceSpec& spec, i64 B, const ExecCtx& ctx = {});

// #{(u,v) : |u|,|v| <= B, Q(u,v) = n} by exact scan.
i64 representation_count(const QuadForm& q, i64 n, i64 B, const ExecCtx& ctx = {});

// log N / log B for N >= 1, B >= 2.
double beta_value(i64 N, i64 B);
double beta(const SurfaceSpec& spec, i64 B, SurfaceMethod method, const ExecCtx& ctx = {});

// Explicit points on the Q = uv surface: with indices arranged so the
// largest entry is e3 and m = 2 e3 - e1 - e2,
//   y = 4 (e1-e2)(e2-e3)(e3-e1) w1^3 w2^3,  x = 2 (-2 e1 e2 + e1 e3 + e2 e3) w1^2 w2^2,
//   u = 2^(1+v2(m)) w1^2,                   v = m 2^(-v2(m)) w2^2,
// over gcd(w1, m w2) = 1, w2 odd; every point is already normalized.
std::vector<WeightedPoint> family_R(const TwistFamily& family, i64 B);

}  // namespace dp1
