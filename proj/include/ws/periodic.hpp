#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace ws {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }
inline Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

// Truncated trigonometric series with values in R^dim (dim <= 3), plus an optional
// linear part: f(s) = drift * s + c0 + sum_k (a_k cos(k w s) + b_k sin(k w s)), w = 2 pi / period.
// The linear part carries antiderivatives of non-zero-mean functions and the winding
// part of angle lifts; with drift = 0 the function is strictly periodic.
class PeriodicFunction {
public:
    PeriodicFunction() = default;
    PeriodicFunction(double period, int dim, int modes);

    // Least-squares fit (exact DFT projection) of uniform samples f(j * period / n), j < n.
    static PeriodicFunction from_samples(double period, int dim, int modes,
                                         const std::vector<Vec3>& samples);
    static PeriodicFunction from_function(double period, int dim, int modes,
                                          const std::function<Vec3(double)>& f, int n = 0);

    double period() const { return period_; }
    int dim() const { return dim_; }
    int modes() const { return modes_; }

    // Coefficient access; cos(c, 0) is the constant term, sin(c, 0) is unused.
    double& cos(int c, int k) { return cos_[c][k]; }
    double& sin(int c, int k) { return sin_[c][k]; }
    double cos(int c, int k) const { return cos_[c][k]; }
    double sin(int c, int k) const { return sin_[c][k]; }
    Vec3& drift() { return drift_; }
    const Vec3& drift() const { return drift_; }

    // m-th derivative at s (m >= 0). Components beyond dim are zero.
    Vec3 eval(double s, int m = 0) const;
    Vec2 eval2(double s, int m = 0) const { return eval(s, m).head<2>(); }
    double eval1(double s, int m = 0) const { return eval(s, m).x(); }

    PeriodicFunction derivative(int m = 1) const;
    // Zero-mean antiderivative; a non-zero mean becomes the drift. Requires drift == 0.
    PeriodicFunction antiderivative() const;
    // g(s) = f(s + h).
    PeriodicFunction shifted(double h) const;
    PeriodicFunction resized(int modes) const;

    PeriodicFunction& operator+=(const PeriodicFunction& o);
    PeriodicFunction& operator*=(double c);
    friend PeriodicFunction operator+(PeriodicFunction a, const PeriodicFunction& b) { return a += b; }
    friend PeriodicFunction operator-(PeriodicFunction a, PeriodicFunction b) { return a += (b *= -1.0); }
    friend PeriodicFunction operator*(double c, PeriodicFunction a) { return a *= c; }

    std::vector<Vec3> sample(int n) const;
    // Mean over one period of the periodic part (the constant coefficients).
    Vec3 mean() const;
    // Largest |coefficient| among the top quarter of modes: a cheap truncation indicator.
    double tail_magnitude() const;

    bool operator==(const PeriodicFunction& o) const;

private:
    double period_ = 1.0;
    int dim_ = 1;
    int modes_ = 0;
    std::vector<double> cos_[3];
    std::vector<double> sin_[3];
    Vec3 drift_ = Vec3::Zero();
};

// Fit with K = 32, 64, ... until the coefficient tail drops below tol (or K reaches max_modes).
PeriodicFunction fit_periodic(double period, int dim, const std::function<Vec3(double)>& f, double tol,
                              int max_modes = 1024);

}  // namespace ws
