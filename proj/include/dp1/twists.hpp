// Counting non-trivial integral points of bounded naive height
// H(P) = max{|y|^(1/3), |x|^(1/2)} on the twists E_{n,e}, per n and summed
// over n >= 1, by exhaustive scan and by the descent parametrization.
// The two methods must produce identical per-n multisets.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dp1/arith.hpp"
#include "dp1/descent.hpp"

namespace dp1 {

enum class TwistMethod { brute, descent };

const char* name(TwistMethod m);

struct TwistCensus {
    TwistFamily family;
    i64 B;
    TwistMethod method;
    i64 total = 0;
    // n -> sorted (x, y) pairs
    std::map<i64, std::vector<std::pair<i64, i64>>> per_n;

    bool same_points(const TwistCensus& other) const { return per_n == other.per_n; }
};

// H(P) <= B decided exactly in integers: |x| <= B^2 and |y| <= B^3.
bool naive_height_leq(i64 x, i64 y, i64 B);

// Least n_max with E*_{n,e} guaranteed free of points of height <= B for
// n > n_max: 2 B^2 when e1 e2 e3 != 0, else ceil(2 B^3 / g) with
// g = min_{i != j} |e_i - e_j|.
i64 n_cutoff(const TwistFamily& family, i64 B);

// All (x, y) with y != 0, |x| <= B^2, |y| <= B^3 on E_{n,e}, found by an
// x-scan with an exact perfect-square test; both signs of y emitted.
std::vector<std::pair<i64, i64>> enumerate_points_bruteforce(const TwistFamily& family, i64 n, i64 B,
                                                             const ExecCtx& ctx = {});

// Census over 1 <= n <= n_ceiling (default n_cutoff(family, B)).
TwistCensus aggregate_census(const TwistFamily& family, i64 B, TwistMethod method,
                             const ExecCtx& ctx = {}, std::optional<i64> n_ceiling = std::nullopt);

// 4 when e1 e2 e3 != 0, else 6 (exponent of log B in the upper bound).
int delta_exponent(const TwistFamily& family);

// (e1', e2', e3') with the maximal entry moved to the last slot, the other
// two kept in their original order; used by the explicit point families.
std::array<i64, 3> arrange_max_last(const TwistFamily& family);

// One explicit point per admissible w >= 1: with indices arranged so the
// largest entry plays the role of e3,
//   n = 2 (2 e3 - e1 - e2) w^2,
//   x = 2 (-2 e1 e2 + e1 e3 + e2 e3) w^2,
//   y = 4 (e1 - e2)(e2 - e3)(e3 - e1) w^3,
// kept while 4|(e1-e2)(e2-e3)(e3-e1)| w^3 <= B^3 and
// 2|-2 e1 e2 + e1 e3 + e2 e3| w^2 <= B^2.
struct FamilyPPoint {
    i64 n, x, y;
};
std::vector<FamilyPPoint> family_P(const TwistFamily& family, i64 B);

// Density experiment: among n <= N, how many twists carry a point below the
// moving threshold n^(1/2) (log n)^(-A), against a certified lower bound for
// the number of twists carrying any point at all.
struct DensityResult {
    i64 numerator = 0;          // n with a point of height <= n^(1/2) (log n)^(-A)
    i64 denominator_lower = 0;  // n with a point found (height <= cap, or explicit family)
    i64 guard_discrepancies = 0;  // thresholds within 1e-6 of an integer that flip the count
};
DensityResult density_experiment(const TwistFamily& family, i64 N, double A, i64 cap,
                                 const ExecCtx& ctx = {});

}  // namespace dp1
