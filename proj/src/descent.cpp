#include "dp1/descent.hpp"

#include <limits>
#include <stdexcept>

namespace dp1 {

namespace {

int sign_of(i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

i128 exact_div(i128 num, i128 den, const char* what) {
    if (den == 0 || num % den != 0)
        throw std::invalid_argument(std::string("descent factorization: inexact division in ") + what +
                                    " (precondition broken)");
    return num / den;
}

}  // namespace

std::string DescentTuple::str() const {
    auto v = [](i64 x) { return std::to_string(x); };
    return "d=(" + v(d1) + "," + v(d2) + "," + v(d3) + ") w=" + v(w) + " a=(" + v(a1) + "," + v(a2) +
           "," + v(a3) + ") b=(" + v(b1) + "," + v(b2) + "," + v(b3) + ")";
}

TwistPoint TwistPoint::checked(const TwistFamily& family, i64 n, i64 x, i64 y) {
    if (n <= 0) throw std::invalid_argument("twist point requires n >= 1");
    if (y == 0) throw std::invalid_argument("twist point requires y != 0 (non-trivial)");
    const i128 lhs = mul_strict(i128(y), i128(y));  // fits: |y| < 2^63
    const i128 x1 = i128(x) - i128(family.e1) * n;
    const i128 x2 = i128(x) - i128(family.e2) * n;
    const i128 x3 = i128(x) - i128(family.e3) * n;
    i128 rhs;
    if (!triple_product_leq(x1, x2, x3, lhs, rhs) || rhs != lhs)
        throw std::invalid_argument("twist point does not satisfy the curve equation");
    return TwistPoint{n, x, y};
}

std::vector<std::string> validate(const DescentTuple& t) {
    std::vector<std::string> bad;
    const i64 d[3] = {t.d1, t.d2, t.d3};
    const i64 a[3] = {t.a1, t.a2, t.a3};
    const i64 b[3] = {t.b1, t.b2, t.b3};
    for (int i = 0; i < 3; ++i)
        if (d[i] == 0) bad.push_back("d" + std::to_string(i + 1) + " is zero");
    if (t.w == 0) bad.push_back("w is zero");
    for (int i = 0; i < 3; ++i) {
        if (a[i] <= 0)
            bad.push_back("a" + std::to_string(i + 1) + " not positive");
        else {
            auto [sf, sq] = squarefree_decompose(a[i]);
            if (sq != 1) bad.push_back("a" + std::to_string(i + 1) + " not squarefree");
        }
        if (b[i] <= 0) bad.push_back("b" + std::to_string(i + 1) + " not positive");
    }
    // sign: count of negative d's must be even and none zero
    if (t.d1 != 0 && t.d2 != 0 && t.d3 != 0) {
        int neg = (t.d1 < 0) + (t.d2 < 0) + (t.d3 < 0);
        if (neg % 2 != 0) bad.push_back("d1*d2*d3 < 0");
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            if (a[i] <= 0 || a[j] <= 0 || b[i] <= 0 || b[j] <= 0) continue;
            i128 lhs = mul_strict(i128(d[i]), mul_strict(i128(a[j]), i128(b[j])));
            i128 rhs = mul_strict(i128(d[j]), mul_strict(i128(a[i]), i128(b[i])));
            if (gcd_nonneg(lhs, rhs) != 1)
                bad.push_back("gcd(d" + std::to_string(i + 1) + "*a" + std::to_string(j + 1) + "*b" +
                              std::to_string(j + 1) + ", d" + std::to_string(j + 1) + "*a" +
                              std::to_string(i + 1) + "*b" + std::to_string(i + 1) + ") != 1");
        }
    return bad;
}

bool tuple_valid(const DescentTuple& t) { return validate(t).empty(); }

DescentTuple decompose(i64 y, i64 x1, i64 x2, i64 x3) {
    if (y == 0 || x1 == 0 || x2 == 0 || x3 == 0)
        throw std::invalid_argument("decompose requires y and all x_i nonzero");
    {
        const i128 lhs = mul_strict(i128(y), i128(y));  // fits: |y| < 2^63
        i128 rhs;
        if (!triple_product_leq(i128(x1), i128(x2), i128(x3), lhs, rhs) || rhs != lhs)
            throw std::invalid_argument("decompose requires y^2 = x1*x2*x3");
    }

    const i64 xin[3] = {x1, x2, x3};
    i64 x = gcd_nonneg(gcd_nonneg(x1, x2), x3);
    i64 xp[3];
    for (int i = 0; i < 3; ++i) xp[i] = xin[i] / x;
    i64 yp = static_cast<i64>(exact_div(y, x, "y = x*y'"));

    i64 d[3];
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        d[i] = sign_of(xp[i]) * gcd_nonneg(xp[j], xp[k]);
    }

    i64 xi[3];
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        xi[i] = static_cast<i64>(exact_div(xp[i], i128(d[j]) * d[k], "x_i' = d_j*d_k*xi_i"));
        if (xi[i] <= 0) throw std::invalid_argument("descent factorization: xi_i not positive");
    }

    i64 z = static_cast<i64>(exact_div(yp, i128(d[0]) * d[1] * d[2], "y' = d1*d2*d3*z"));

    i64 a[3], b[3];
    for (int i = 0; i < 3; ++i) {
        auto [ai, bi] = squarefree_decompose(xi[i]);
        a[i] = ai;
        b[i] = bi;
    }

    i64 zp = static_cast<i64>(exact_div(z, i128(b[0]) * b[1] * b[2], "z = b1*b2*b3*z'"));
    i64 w = static_cast<i64>(exact_div(zp, i128(a[0]) * a[1] * a[2], "z' = w*a1*a2*a3"));
    if (w == 0 || i128(w) * w * a[0] * a[1] * a[2] != x)
        throw std::invalid_argument("descent factorization: x != w^2*a1*a2*a3 (precondition broken)");

    return DescentTuple{d[0], d[1], d[2], w, a[0], a[1], a[2], b[0], b[1], b[2]};
}

Recomposition recompose(const DescentTuple& t) {
    const i64 d[3] = {t.d1, t.d2, t.d3};
    const i64 a[3] = {t.a1, t.a2, t.a3};
    const i64 b[3] = {t.b1, t.b2, t.b3};
    i128 x[3];
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        i128 v = mul_strict(i128(d[j]), i128(d[k]));
        v = mul_strict(v, mul_strict(i128(t.w), i128(t.w)));
        v = mul_strict(v, mul_strict(i128(a[i]), i128(a[i])));
        v = mul_strict(v, mul_strict(i128(a[j]), i128(a[k])));
        v = mul_strict(v, mul_strict(i128(b[i]), i128(b[i])));
        x[i] = v;
    }
    i128 y = mul_strict(mul_strict(i128(d[0]), i128(d[1])), i128(d[2]));
    y = mul_strict(y, mul_strict(mul_strict(i128(t.w), i128(t.w)), i128(t.w)));
    for (int i = 0; i < 3; ++i) y = mul_strict(y, mul_strict(i128(a[i]), i128(a[i])));
    y = mul_strict(y, mul_strict(mul_strict(i128(b[0]), i128(b[1])), i128(b[2])));
    return Recomposition{y, x[0], x[1], x[2]};
}

std::optional<TwistValues> tuple_to_twist_values(const DescentTuple& t, const TwistFamily& family) {
    const i64 d[3] = {t.d1, t.d2, t.d3};
    const i64 a[3] = {t.a1, t.a2, t.a3};
    const i64 b[3] = {t.b1, t.b2, t.b3};
    const i64 e[3] = {family.e1, family.e2, family.e3};

    i128 A = mul_strict(mul_strict(i128(a[0]), i128(a[1])), i128(a[2]));
    i128 w2 = mul_strict(i128(t.w), i128(t.w));
    i128 X[3];
    for (int i = 0; i < 3; ++i) X[i] = mul_strict(i128(a[i]), mul_strict(i128(b[i]), i128(b[i])));

    // rhs(i,j) with k the remaining index: d_k w^2 A (d_i X_j - d_j X_i)
    auto rhs = [&](int i, int j, int k) {
        i128 diff = mul_strict(i128(d[i]), X[j]) - mul_strict(i128(d[j]), X[i]);
        return mul_strict(mul_strict(i128(d[k]), mul_strict(w2, A)), diff);
    };

    i128 r01 = rhs(0, 1, 2);
    i128 de01 = i128(e[0]) - e[1];
    if (r01 % de01 != 0) return std::nullopt;
    i128 n = r01 / de01;
    if (n <= 0) return std::nullopt;
    // all three relations must hold for the same n
    if (rhs(1, 2, 0) != mul_strict(i128(e[1]) - e[2], n)) return std::nullopt;
    if (rhs(2, 0, 1) != mul_strict(i128(e[2]) - e[0], n)) return std::nullopt;

    i128 x = add_strict(mul_strict(i128(e[0]), n),
                        mul_strict(mul_strict(i128(d[1]), i128(d[2])),
                                   mul_strict(w2, mul_strict(A, X[0]))));
    i128 y = mul_strict(mul_strict(i128(d[0]), i128(d[1])), i128(d[2]));
    y = mul_strict(y, mul_strict(w2, i128(t.w)));
    y = mul_strict(y, mul_strict(A, A));
    y = mul_strict(y, mul_strict(mul_strict(i128(b[0]), i128(b[1])), i128(b[2])));
    return TwistValues{n, x, y};
}

std::optional<TwistPoint> tuple_to_twist_point(const DescentTuple& t, const TwistFamily& family) {
    auto tv = tuple_to_twist_values(t, family);
    if (!tv) return std::nullopt;
    constexpr i128 lo = std::numeric_limits<i64>::min();
    constexpr i128 hi = std::numeric_limits<i64>::max();
    if (tv->n > hi || tv->x < lo || tv->x > hi || tv->y < lo || tv->y > hi)
        throw OverflowError("twist point exceeds the 64-bit coordinate range");
    return TwistPoint::checked(family, static_cast<i64>(tv->n), static_cast<i64>(tv->x),
                               static_cast<i64>(tv->y));
}

DescentTuple twist_point_to_tuple(const TwistFamily& family, const TwistPoint& p) {
    i128 f1 = i128(p.x) - mul_strict(i128(family.e1), i128(p.n));
    i128 f2 = i128(p.x) - mul_strict(i128(family.e2), i128(p.n));
    i128 f3 = i128(p.x) - mul_strict(i128(family.e3), i128(p.n));
    constexpr i128 lo = std::numeric_limits<i64>::min();
    constexpr i128 hi = std::numeric_limits<i64>::max();
    for (i128 v : {f1, f2, f3})
        if (v < lo || v > hi) throw OverflowError("curve factor exceeds the 64-bit range");
    return decompose(p.y, static_cast<i64>(f1), static_cast<i64>(f2), static_cast<i64>(f3));
}

std::array<i64, 3> reduce_to_ternary(const TwistFamily& family, const std::array<i64, 3>& d) {
    const i64 gaps[3] = {family.e2 - family.e3, family.e3 - family.e1, family.e1 - family.e2};
    i64 c[3];
    for (int i = 0; i < 3; ++i) {
        if (d[i] == 0 || gaps[i] % d[i] != 0)
            throw std::invalid_argument("reduce_to_ternary requires d_i | e_j - e_k");
        c[i] = gaps[i] / d[i];
    }
    if (i128(d[0]) * d[1] * d[2] <= 0)
        throw std::invalid_argument("reduce_to_ternary requires d1*d2*d3 > 0");
    i64 h = gcd_nonneg(gcd_nonneg(c[0], c[1]), c[2]);
    return {c[0] / h, c[1] / h, c[2] / h};
}

}  // namespace dp1
