#include "ws/kernels.hpp"

#include "ws/numeric.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <omp.h>

namespace ws {

namespace {

inline bool genuine_crossing(double d0, double d1) {
    constexpr double half_pi = std::numbers::pi / 2;
    if (std::abs(d0) >= half_pi || std::abs(d1) >= half_pi) return false;
    return (d0 < 0.0 && d1 >= 0.0) || (d0 > 0.0 && d1 <= 0.0) || d0 == 0.0;
}

inline int column_first_root(const std::vector<double>& psi_u, const std::vector<double>& psit_v, int ns,
                             int nt, int j) {
    (void)ns;
    double prev = wrap_angle(psi_u[2 * j] - psit_v[2 * j + nt]);
    for (int i = 0; i < nt; ++i) {
        const int k = i + 1;
        const double cur = wrap_angle(psi_u[2 * j + k] - psit_v[2 * j - k + nt]);
        if (genuine_crossing(prev, cur)) return i;
        prev = cur;
    }
    return -1;
}

inline bool better(double v, int i, int j, const kernels::GridMin& m) {
    if (m.i < 0) return true;
    if (v < m.value) return true;
    if (v > m.value) return false;
    return i < m.i || (i == m.i && j < m.j);
}

}  // namespace

namespace kernels {

std::vector<int> strip_first_roots(const std::vector<double>& psi_u, const std::vector<double>& psit_v, int ns,
                                   int nt) {
    std::vector<int> out(ns);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < ns; ++j) out[j] = column_first_root(psi_u, psit_v, ns, nt, j);
    return out;
}

GridMin min_pair_sum(const std::vector<Vec3>& A, const std::vector<Vec3>& B, bool lower_triangle) {
    const int n = static_cast<int>(A.size()), m = static_cast<int>(B.size());
    const int nthreads = omp_get_max_threads();
    std::vector<GridMin> local(nthreads);
#pragma omp parallel
    {
        GridMin best;
        const int tid = omp_get_thread_num();
#pragma omp for schedule(static)
        for (int i = 0; i < n; ++i) {
            const int jmax = lower_triangle ? std::min(i + 1, m) : m;
            for (int j = 0; j < jmax; ++j) {
                const double v = (A[i] + B[j]).norm();
                if (better(v, i, j, best)) best = {v, i, j};
            }
        }
        local[tid] = best;
    }
    GridMin best;
    for (const GridMin& g : local)
        if (g.i >= 0 && better(g.value, g.i, g.j, best)) best = g;
    return best;
}

}  // namespace kernels

namespace reference {

std::vector<int> strip_first_roots(const std::vector<double>& psi_u, const std::vector<double>& psit_v, int ns,
                                   int nt) {
    std::vector<int> out(ns, -1);
    for (int j = 0; j < ns; ++j) {
        for (int i = 0; i < nt; ++i) {
            const double d0 = wrap_angle(psi_u[2 * j + i] - psit_v[2 * j - i + nt]);
            const double d1 = wrap_angle(psi_u[2 * j + i + 1] - psit_v[2 * j - i - 1 + nt]);
            if (genuine_crossing(d0, d1)) {
                out[j] = i;
                break;
            }
        }
    }
    return out;
}

kernels::GridMin min_pair_sum(const std::vector<Vec3>& A, const std::vector<Vec3>& B, bool lower_triangle) {
    kernels::GridMin best;
    for (int i = 0; i < static_cast<int>(A.size()); ++i) {
        const int jmax = lower_triangle ? std::min<int>(i + 1, B.size()) : static_cast<int>(B.size());
        for (int j = 0; j < jmax; ++j) {
            const double v = (A[i] + B[j]).norm();
            if (better(v, i, j, best)) best = {v, i, j};
        }
    }
    return best;
}

}  // namespace reference

}  // namespace ws
