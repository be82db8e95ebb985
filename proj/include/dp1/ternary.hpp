// Exact counting of solutions to f1 u1 v1^2 + f2 u2 v2^2 + f3 u3 v3^2 = 0
// in boxes |u_i| <= U_i, |v_i| <= V_i with all coordinates nonzero and
// gcd(u_i v_i, u_j v_j) = 1 pairwise, plus the evaluated upper-bound shape
// (U1 U2 U3)^(2/3) (V1 V2 V3)^(1/3) M_eps used for empirical comparison.
#pragma once

#include <array>
#include <vector>

#include "dp1/arith.hpp"

namespace dp1 {

struct TernaryInstance {
    std::array<i64, 3> f;  // nonzero, pairwise coprime
    std::array<i64, 3> U;  // >= 1
    std::array<i64, 3> V;  // >= 1

    TernaryInstance(std::array<i64, 3> f, std::array<i64, 3> U, std::array<i64, 3> V);
};

// Exact solution count; scans two (u, v) pairs and solves for the third
// through exact divisibility and the square split t = u_r v_r^2.
i64 count_solutions(const TernaryInstance& inst, const ExecCtx& ctx = {});

// 1 + max over {i,j,k} of (U_i U_j)^(-1/2+eps) log(2 U_k); eps in (0, 1/2).
double m_eps(i64 U1, i64 U2, i64 U3, double eps);

// (U1 U2 U3)^(2/3) (V1 V2 V3)^(1/3) m_eps(U, eps): the bound without its
// unknown f-dependent constant.
double box_count_bound(const TernaryInstance& inst, double eps);

struct RatioRow {
    std::array<i64, 3> U, V;
    i64 count;
    double bound;
    double ratio;
};

// count/bound over a list of boxes; the maximal ratio stands in for the
// implied constant.
std::vector<RatioRow> ratio_scan(const std::array<i64, 3>& f,
                                 const std::vector<std::pair<std::array<i64, 3>, std::array<i64, 3>>>& grid,
                                 double eps, const ExecCtx& ctx = {});

}  // namespace dp1
