// Exact integer arithmetic shared by every counting routine: 128-bit
// helpers with overflow detection, squarefree decomposition, divisor
// utilities, and the two parameter types (twist family e, quadratic form Q).
#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dp1 {

using i64 = std::int64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Thrown when an intermediate value would leave the 128-bit range.
struct OverflowError : std::range_error {
    using std::range_error::range_error;
};

// Thrown when a scan would exceed the configured operation budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(i64 limit)
        : std::runtime_error("operation budget of " + std::to_string(limit) +
                             " elementary operations exceeded"),
          limit(limit) {}
    i64 limit;
};

std::string to_string(i128 v);

inline i128 iabs(i128 v) { return v < 0 ? -v : v; }

// Overflow-checked product; throws instead of wrapping.
inline i128 mul_strict(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiply overflow");
    return r;
}

inline i128 add_strict(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit add overflow");
    return r;
}

// gcd is always nonnegative; gcd(0, m) = |m|.
i64 gcd_nonneg(i64 a, i64 b);
i128 gcd_nonneg(i128 a, i128 b);

// Floor square root, exact for the full unsigned 128-bit range.
u128 isqrt(u128 v);

// If v is a perfect square, stores the nonnegative root and returns true.
bool perfect_square(i128 v, i128& root);

// x1*x2*x3 if |x1*x2*x3| <= cap, otherwise nullopt; never overflows.
// Requires x3 != 0 and cap >= 0.
bool triple_product_leq(i128 x1, i128 x2, i128 x3, i128 cap, i128& out);

// ---------------------------------------------------------------------------
// Parameter types
// ---------------------------------------------------------------------------

// Three distinct integers e = (e1,e2,e3) defining the twists
// y^2 = (x - e1 n)(x - e2 n)(x - e3 n) and the surfaces above them.
struct TwistFamily {
    i64 e1, e2, e3;

    TwistFamily(i64 e1, i64 e2, i64 e3);
    std::array<i64, 3> elems() const { return {e1, e2, e3}; }
    TwistFamily negated() const { return TwistFamily(-e1, -e2, -e3); }
    bool operator==(const TwistFamily&) const = default;
    std::string str() const;
};

// Q(u,v) = q11 u^2 + q12 uv + q22 v^2 with q12^2 - 4 q11 q22 != 0.
struct QuadForm {
    i64 q11, q12, q22;

    QuadForm(i64 q11, i64 q12, i64 q22);
    i64 eval(i64 u, i64 v) const { return q11 * u * u + q12 * u * v + q22 * v * v; }
    bool operator==(const QuadForm&) const = default;
    std::string str() const;
};

struct SurfaceSpec {
    TwistFamily family;
    QuadForm q;
    bool operator==(const SurfaceSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Elementary number theory
// ---------------------------------------------------------------------------

// Unique (a, b) with m = a b^2 and a squarefree; trial division, intended
// for inputs up to ~10^12.
std::pair<i64, i64> squarefree_decompose(i64 m);

// Largest k with 2^k | m.
int two_adic_valuation(i64 m);

// tau(n), the number of positive divisors.
i64 divisor_count(i64 n);

// Positive divisors of |n|, ascending.
std::vector<i64> divisors_of(i64 n);

// All (d1,d2,d3) with d1 | e2-e3, d2 | e3-e1, d3 | e1-e2 (both signs)
// and d1 d2 d3 > 0, in lexicographic order.
std::vector<std::array<i64, 3>> signed_divisor_triples(const TwistFamily& family);

// Smallest-prime-factor sieve; backs squarefree decomposition inside hot
// enumeration loops.
class SpfSieve {
  public:
    explicit SpfSieve(i64 limit);
    i64 limit() const { return static_cast<i64>(spf_.size()) - 1; }
    // m must be in [1, limit].
    std::pair<i64, i64> squarefree_decompose(i64 m) const;
    // Distinct prime factors of m in [1, limit].
    void distinct_primes(i64 m, std::vector<i64>& out) const;

  private:
    std::vector<std::int32_t> spf_;
};

// ---------------------------------------------------------------------------
// Execution context: worker count and operation budget
// ---------------------------------------------------------------------------

class OpBudget {
  public:
    explicit OpBudget(i64 limit) : limit_(limit) {}
    i64 limit() const { return limit_; }

    // Refuse up front a scan whose volume is known in closed form.
    void require(i128 volume) const {
        if (volume > limit_) throw BudgetExceeded(limit_);
    }
    // Runtime accounting for scans without a closed-form volume.
    void charge(i64 ops) const {
        if (used_.fetch_add(ops, std::memory_order_relaxed) + ops > limit_)
            throw BudgetExceeded(limit_);
    }
    i64 used() const { return used_.load(std::memory_order_relaxed); }

  private:
    i64 limit_;
    mutable std::atomic<i64> used_{0};
};

struct ExecCtx {
    int threads = 1;
    OpBudget budget{default_budget};
    static constexpr i64 default_budget = 1'000'000'000;

    ExecCtx() = default;
    ExecCtx(int threads, i64 budget_limit) : threads(threads), budget(budget_limit) {}
};

// Launches ctx.threads workers, each running body(worker_id, worker_count);
// workers pick up jobs round-robin by index. The first exception raised in
// any worker is rethrown after all join. threads == 1 runs inline.
void run_workers(const ExecCtx& ctx, const std::function<void(int, int)>& body);

}  // namespace dp1
