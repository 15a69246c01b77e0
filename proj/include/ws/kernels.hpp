#pragma once

#include "ws/periodic.hpp"

#include <vector>

namespace ws::kernels {

template <class F>
void parallel_for(int n, F&& f) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) f(i);
}

// Strip scan for zeros of D(i, j) = wrap(psi(u) - psitilde(v)) on the lattice
// s_j = 2 j h, t_i = i h, u = (2j + i) h, v = (2j - i) h, i = 0..nt, j = 0..ns-1.
// psi_u[k] = psi(k h) for k = 0..2ns+nt, psit_v[k] = psitilde((k - nt) h) for k = 0..2ns+nt.
// Returns, per column, the first i with a genuine sign change of D on [t_i, t_{i+1}]
// (both |D| < pi/2, so branch-cut jumps are ignored), or -1.
std::vector<int> strip_first_roots(const std::vector<double>& psi_u, const std::vector<double>& psit_v,
                                   int ns, int nt);

struct GridMin {
    double value = 0.0;
    int i = -1;
    int j = -1;
};

// min over (i, j) of |A_i + B_j|; with lower_triangle only pairs i >= j are visited.
// Ties resolve to the smallest (i, j) in row-major order.
GridMin min_pair_sum(const std::vector<Vec3>& A, const std::vector<Vec3>& B, bool lower_triangle = false);

}  // namespace ws::kernels

namespace ws::reference {

// Straight serial loops with the same contracts as the kernels above.
std::vector<int> strip_first_roots(const std::vector<double>& psi_u, const std::vector<double>& psit_v,
                                   int ns, int nt);
kernels::GridMin min_pair_sum(const std::vector<Vec3>& A, const std::vector<Vec3>& B, bool lower_triangle = false);

}  // namespace ws::reference
