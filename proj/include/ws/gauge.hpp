#pragma once

#include "ws/curve_core.hpp"

#include <functional>
#include <vector>

namespace ws {

// A closed curve c(sigma) with a normal velocity field beta*(sigma), |beta*| < 1.
struct ArbitraryCurveData {
    PeriodicFunction curve;
    PeriodicFunction normal_speed;
};

// Samples gamma(t0 + i dt, j period / ns), i < nt, j < ns, stored t-major.
struct ArbitrarySurfacePatch {
    int nt = 0, ns = 0;
    double t0 = 0.0, dt = 0.0, period = 0.0;
    std::vector<Vec3> x;

    double t(int i) const { return t0 + i * dt; }
    double s(int j) const { return period * j / ns; }
    Vec3& at(int i, int j) { return x[static_cast<size_t>(i) * ns + j]; }
    const Vec3& at(int i, int j) const { return x[static_cast<size_t>(i) * ns + j]; }
};

ArbitrarySurfacePatch sample_patch(const std::function<Vec3(double t, double s)>& gamma, double t0, double dt,
                                   int nt, int ns, double period);

// Q = |gamma_t|^2 - <gamma_t, gamma_s>^2 / |gamma_s|^2; the induced metric is Lorentzian iff Q < 1.
double compute_Q(const Vec3& gamma_t, const Vec3& gamma_s);
// Q at grid point (i, j) from 9-point finite differences.
double compute_Q(const ArbitrarySurfacePatch& patch, int i, int j);

// Eighth-order finite-difference derivatives at every grid point (periodic in s, one-sided at t edges).
struct PatchDerivatives {
    std::vector<Vec3> gt, gs;
};
PatchDerivatives patch_derivatives(const ArbitrarySurfacePatch& patch);

// Reparametrizes c by ds = |c'| / sqrt(1 - |beta*|^2) dsigma. The new period is the
// proper-time length L = integral of that density.
InitialData orthogonal_gauge_initial_data(const ArbitraryCurveData& input);

struct OrthogonalPatch {
    ArbitrarySurfacePatch patch;  // gamma(t, s~) on a uniform s~ grid
    std::vector<double> sigma;    // source parameter of each output sample, t-major
};

// Normalizes the first slice by |gamma_sigma| / sqrt(1 - Q), then transports the parameter
// along the characteristics d sigma / dt = -<gamma_t, gamma_sigma> / |gamma_sigma|^2 with RK4
// at step dt/4. Throws NumericalError when the parameter map stops being monotone.
OrthogonalPatch reparametrize_surface(const ArbitrarySurfacePatch& patch);

struct GaugeResiduals {
    double orthogonality = 0.0;   // max |<gamma_t, gamma_s>|
    double normalization = 0.0;   // max ||gamma_t|^2 + |gamma_s|^2 - 1|
    double conservation = 0.0;    // max_t,s |rho(t, s) - rho(t0, s)|, rho = |gamma_s| / sqrt(1 - Q)
};
GaugeResiduals gauge_residuals(const ArbitrarySurfacePatch& patch);

// Symmetric Hausdorff distance between two closed sampled curves, each treated as its
// periodic 8-point interpolant (point-to-curve distances, both directions).
double slice_hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

}  // namespace ws
