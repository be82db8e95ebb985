// Complete 2-descent machinery for the twists y^2 = (x - e1 n)(x - e2 n)(x - e3 n):
//
//   every (y, x1, x2, x3) in Z_{!=0}^4 with y^2 = x1 x2 x3 factors uniquely as
//       x_i = d_j d_k w^2 a_i^2 a_j a_k b_i^2        ({i,j,k} = {1,2,3})
//       y   = d1 d2 d3 w^3 a1^2 a2^2 a3^2 b1 b2 b3
//   with a_i squarefree, gcd(d_i a_j b_j, d_j a_i b_i) = 1 for i != j, and
//   d1 d2 d3 > 0.  Applied to x_i = x - e_i n this parametrizes the
//   non-trivial integral points of the twists bijectively.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dp1/arith.hpp"

namespace dp1 {

struct DescentTuple {
    i64 d1, d2, d3;  // nonzero, d1 d2 d3 > 0
    i64 w;           // nonzero; its sign carries the sign of y
    i64 a1, a2, a3;  // positive squarefree
    i64 b1, b2, b3;  // positive

    bool operator==(const DescentTuple&) const = default;
    auto operator<=>(const DescentTuple&) const = default;
    std::string str() const;
};

// Non-trivial integral point on E_{n,e}: y^2 = (x - e1 n)(x - e2 n)(x - e3 n),
// y != 0.  Use checked() to enforce the curve equation.
struct TwistPoint {
    i64 n;  // positive
    i64 x;
    i64 y;  // nonzero

    static TwistPoint checked(const TwistFamily& family, i64 n, i64 x, i64 y);
    bool operator==(const TwistPoint&) const = default;
    auto operator<=>(const TwistPoint&) const = default;
};

// Violated constraints of a candidate tuple, empty when valid.
std::vector<std::string> validate(const DescentTuple& t);

bool tuple_valid(const DescentTuple& t);

// The unique valid tuple for y^2 = x1 x2 x3 (all arguments nonzero).
// Follows the constructive factorization: x = gcd(x1,x2,x3), then
// d_i = sign(x_i') gcd(x_j', x_k'), then squarefree splits.  Any inexact
// division on the way signals a broken precondition.
DescentTuple decompose(i64 y, i64 x1, i64 x2, i64 x3);

// (y, x1, x2, x3) from the displayed formulas; satisfies y^2 = x1 x2 x3.
struct Recomposition {
    i128 y, x1, x2, x3;
};
Recomposition recompose(const DescentTuple& t);

// The twist point a tuple corresponds to, if the three relations
//   (e_i - e_j) n = d_k w^2 a1 a2 a3 (d_i a_j b_j^2 - d_j a_i b_i^2)
// admit a common positive integer solution n; absent otherwise.
std::optional<TwistPoint> tuple_to_twist_point(const DescentTuple& t, const TwistFamily& family);

// Wide part of the bijection used by the census loops (no i64 narrowing).
struct TwistValues {
    i128 n, x, y;
};
std::optional<TwistValues> tuple_to_twist_values(const DescentTuple& t, const TwistFamily& family);

// Inverse direction: decompose (y, x - e1 n, x - e2 n, x - e3 n).
DescentTuple twist_point_to_tuple(const TwistFamily& family, const TwistPoint& p);

// Reduction to the ternary form: c_i = (e_{j}-e_{k})/d_i cyclically,
// h = gcd(c1,c2,c3) > 0, f_i = c_i / h.  Then d1 f1 + d2 f2 + d3 f3 = 0
// and any tuple over this divisor triple satisfies
// f1 a1 b1^2 + f2 a2 b2^2 + f3 a3 b3^2 = 0.
std::array<i64, 3> reduce_to_ternary(const TwistFamily& family, const std::array<i64, 3>& d);

}  // namespace dp1
