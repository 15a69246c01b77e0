#pragma once

#include "ws/periodic.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace ws {

// Adaptive Simpson quadrature on [a, b] with absolute target tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 50);

// Finite-difference weights for the m-th derivative at x0 from nodes x (Fornberg).
std::vector<double> fd_weights(double x0, const std::vector<double>& x, int m);

// Root of f in [a, b] (sign change required), polished to machine precision.
double bracketed_root(const std::function<double(double)>& f, double a, double b);

// Local minimiser of f on [a, b]; returns (x, f(x)).
std::pair<double, double> minimize_1d(const std::function<double(double)>& f, double a, double b);

// Wrap an angle to (-pi, pi].
double wrap_angle(double x);

// Deterministic uniform in [0, 1) from a 64-bit engine (platform independent).
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
inline double uniform(std::mt19937_64& rng, double a, double b) { return a + (b - a) * uniform01(rng); }

// Best rigid motion (rotation angle + translation) mapping points p onto q in the plane.
struct RigidFit {
    double angle = 0.0;
    Vec2 translation = Vec2::Zero();
    double max_deviation = 0.0;
    double rms_deviation = 0.0;
};
RigidFit procrustes_2d(const std::vector<Vec2>& p, const std::vector<Vec2>& q);

// Least-squares polynomial fit y ~ sum c_i x^i, i <= degree.
std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree);

}  // namespace ws
