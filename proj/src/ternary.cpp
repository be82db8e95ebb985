#include "dp1/ternary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dp1 {

TernaryInstance::TernaryInstance(std::array<i64, 3> f, std::array<i64, 3> U, std::array<i64, 3> V)
    : f(f), U(U), V(V) {
    for (int i = 0; i < 3; ++i) {
        if (f[i] == 0) throw std::invalid_argument("ternary instance requires nonzero f_i");
        if (U[i] < 1 || V[i] < 1) throw std::invalid_argument("ternary boxes require U_i, V_i >= 1");
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (gcd_nonneg(f[i], f[j]) != 1)
                throw std::invalid_argument("ternary instance requires pairwise coprime f");
}

i64 count_solutions(const TernaryInstance& inst, const ExecCtx& ctx) {
    // Solve for the coordinate pair with the largest box; the remaining signs
    // come from symmetry: flipping any v_i is free (8x) and negating all u_i
    // is free (2x), so scan u_p >= 1 and v_i >= 1 only.
    int r = 0;
    for (int i = 1; i < 3; ++i)
        if (inst.U[i] * inst.V[i] > inst.U[r] * inst.V[r]) r = i;
    const int p = (r == 0) ? 1 : 0;
    const int q = (r == 2) ? 1 : 2;
    const i64 fp = inst.f[p], fq = inst.f[q], fr = inst.f[r];
    const i64 Up = inst.U[p], Uq = inst.U[q], Ur = inst.U[r];
    const i64 Vp = inst.V[p], Vq = inst.V[q], Vr = inst.V[r];

    const i128 volume = i128(Up) * Vp * 2 * Uq * Vq;
    ctx.budget.require(volume);
    ctx.budget.charge(static_cast<i64>(volume));  // cumulative across a scan

    const int nw = std::max(1, ctx.threads);
    std::vector<i64> parts(nw, 0);
    run_workers(ctx, [&](int wid, int nworkers) {
        i64 found = 0;
        for (i64 up = 1 + wid; up <= Up; up += nworkers) {
            for (i64 vp = 1; vp <= Vp; ++vp) {
                const i128 tp = i128(fp) * up * vp * vp;
                for (i64 uq_abs = 1; uq_abs <= Uq; ++uq_abs)
                    for (int squ = -1; squ <= 1; squ += 2) {
                        const i64 uq = squ * uq_abs;
                        for (i64 vq = 1; vq <= Vq; ++vq) {
                            const i128 t = -(tp + i128(fq) * uq * vq * vq);
                            if (t == 0 || t % fr != 0) continue;
                            const i128 w = t / fr;  // u_r v_r^2
                            const i64 pq1 = gcd_nonneg(up * vp, uq_abs * vq);
                            if (pq1 != 1) continue;
                            const i128 aw = iabs(w);
                            // v_r^2 >= |w| / U_r keeps |u_r| <= U_r
                            i64 vlo = 1;
                            if (aw > Ur) {
                                u128 s = isqrt(static_cast<u128>((aw + Ur - 1) / Ur));
                                vlo = static_cast<i64>(s);
                                while (i128(vlo) * vlo * Ur < aw) ++vlo;
                            }
                            const i64 vhi =
                                std::min<i64>(Vr, static_cast<i64>(isqrt(static_cast<u128>(aw))));
                            for (i64 vr = vlo; vr <= vhi; ++vr) {
                                if (aw % (i128(vr) * vr) != 0) continue;
                                const i64 ur_abs = static_cast<i64>(aw / (i128(vr) * vr));
                                if (gcd_nonneg(up * vp, ur_abs * vr) != 1) continue;
                                if (gcd_nonneg(uq_abs * vq, ur_abs * vr) != 1) continue;
                                ++found;
                            }
                        }
                    }
            }
        }
        parts[wid] = found;
    });

    i64 reduced = 0;
    for (i64 c : parts) reduced += c;
    return 16 * reduced;
}

double m_eps(i64 U1, i64 U2, i64 U3, double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
    const double u[3] = {double(U1), double(U2), double(U3)};
    double best = 0.0;
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        best = std::max(best, std::pow(u[i] * u[j], -0.5 + eps) * std::log(2.0 * u[k]));
    }
    return 1.0 + best;
}

double box_count_bound(const TernaryInstance& inst, double eps) {
    const double uprod = double(inst.U[0]) * double(inst.U[1]) * double(inst.U[2]);
    const double vprod = double(inst.V[0]) * double(inst.V[1]) * double(inst.V[2]);
    return std::pow(uprod, 2.0 / 3.0) * std::pow(vprod, 1.0 / 3.0) *
           m_eps(inst.U[0], inst.U[1], inst.U[2], eps);
}

std::vector<RatioRow> ratio_scan(const std::array<i64, 3>& f,
                                 const std::vector<std::pair<std::array<i64, 3>, std::array<i64, 3>>>& grid,
                                 double eps, const ExecCtx& ctx) {
    std::vector<RatioRow> rows;
    rows.reserve(grid.size());
    for (const auto& [U, V] : grid) {
        TernaryInstance inst(f, U, V);
        const i64 count = count_solutions(inst, ctx);
        const double bound = box_count_bound(inst, eps);
        rows.push_back(RatioRow{U, V, count, bound, double(count) / bound});
    }
    return rows;
}

}  // namespace dp1
