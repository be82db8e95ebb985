#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dp1/ternary.hpp"
#include "oracles.hpp"

using namespace dp1;

namespace {
const ExecCtx big_ctx(1, 100'000'000'000LL);

TernaryInstance box(std::array<i64, 3> f, std::array<i64, 3> U, std::array<i64, 3> V) {
    return TernaryInstance(f, U, V);
}
}  // namespace

TEST_CASE("instance invariants") {
    CHECK_THROWS_AS(box({2, 4, -1}, {1, 1, 1}, {1, 1, 1}), std::invalid_argument);  // gcd(2,4)=2
    CHECK_THROWS_AS(box({1, 0, -1}, {1, 1, 1}, {1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(box({1, 1, -2}, {0, 1, 1}, {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("hand-enumerated unit boxes") {
    CHECK(count_solutions(box({1, 1, -1}, {1, 1, 1}, {1, 1, 1}), big_ctx) == 0);
    CHECK(count_solutions(box({1, 1, -2}, {1, 1, 1}, {1, 1, 1}), big_ctx) == 16);
    CHECK(count_solutions(box({1, 2, -3}, {1, 1, 1}, {1, 1, 1}), big_ctx) == 16);
    CHECK(count_solutions(box({2, 3, -5}, {1, 1, 1}, {1, 1, 1}), big_ctx) == 16);
}

TEST_CASE("optimized counter equals the sextuple-loop oracle") {
    const std::array<i64, 3> fs[] = {{1, 1, -2}, {1, 2, -3}, {2, 3, -5}, {1, 1, -1}, {3, -1, 5}};
    for (const auto& f : fs)
        for (i64 u1 : {1, 2, 4})
            for (i64 u3 : {1, 3})
                for (i64 v2 : {1, 2}) {
                    const TernaryInstance inst(f, {u1, 2, u3}, {1, v2, 2});
                    CAPTURE(f[0]);
                    CAPTURE(u1);
                    CHECK(count_solutions(inst, big_ctx) == oracles::ternary_count_sextuple(inst));
                }
    // one larger box per coefficient vector
    for (const auto& f : fs) {
        const TernaryInstance inst(f, {6, 5, 4}, {3, 2, 4});
        CHECK(count_solutions(inst, big_ctx) == oracles::ternary_count_sextuple(inst));
    }
}

TEST_CASE("permutation equivariance") {
    const TernaryInstance a({1, 2, -3}, {4, 2, 3}, {2, 3, 1});
    const TernaryInstance b({-3, 1, 2}, {3, 4, 2}, {1, 2, 3});  // jointly permuted
    CHECK(count_solutions(a, big_ctx) == count_solutions(b, big_ctx));
}

TEST_CASE("global sign symmetry") {
    const TernaryInstance pos({1, 2, -3}, {3, 3, 3}, {2, 2, 2});
    const TernaryInstance neg({-1, -2, 3}, {3, 3, 3}, {2, 2, 2});
    CHECK(count_solutions(pos, big_ctx) == count_solutions(neg, big_ctx));
}

TEST_CASE("monotonicity in the box") {
    const std::array<i64, 3> f{1, 2, -3};
    i64 prev = -1;
    for (i64 s = 1; s <= 5; ++s) {
        const i64 c = count_solutions(box(f, {s, s, s}, {s, s, s}), big_ctx);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("M_eps evaluation") {
    CHECK(m_eps(1, 1, 1, 0.25) == doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-12));
    CHECK(m_eps(4, 4, 4, 0.25) ==
          doctest::Approx(1.0 + std::pow(16.0, -0.25) * std::log(8.0)).epsilon(1e-12));
    CHECK(m_eps(4, 4, 4, 0.25) == doctest::Approx(2.0397207708).epsilon(1e-9));
    // dominant term for one huge box edge
    CHECK(m_eps(1, 1, 1 << 20, 0.25) == doctest::Approx(1.0 + std::log(2.0 * (1 << 20))).epsilon(1e-12));
    CHECK_THROWS_AS(m_eps(1, 1, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(m_eps(1, 1, 1, 0.5), std::invalid_argument);
}

TEST_CASE("bound evaluation") {
    CHECK(box_count_bound(box({1, 1, -2}, {1, 1, 1}, {1, 1, 1}), 0.25) ==
          doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-12));
    CHECK(box_count_bound(box({1, 1, -2}, {4, 4, 4}, {1, 1, 1}), 0.25) ==
          doctest::Approx(16.0 * 2.0397207708).epsilon(1e-6));
    // doubling every V_i multiplies the bound by exactly 2
    const auto b1 = box_count_bound(box({1, 1, -2}, {4, 4, 4}, {1, 2, 3}), 0.25);
    const auto b2 = box_count_bound(box({1, 1, -2}, {4, 4, 4}, {2, 4, 6}), 0.25);
    CHECK(b2 / b1 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("ratio scan") {
    CHECK(ratio_scan({1, 1, -2}, {}, 0.25, big_ctx).empty());

    const auto rows = ratio_scan({1, 1, -2}, {{{1, 1, 1}, {1, 1, 1}}}, 0.25, big_ctx);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].count == 16);
    CHECK(rows[0].ratio == doctest::Approx(16.0 / (1.0 + std::log(2.0))).epsilon(1e-9));
}
