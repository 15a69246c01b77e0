#pragma once

#include "ws/curve_core.hpp"

#include <vector>

namespace ws {

// Exact d'Alembert evaluation of the maximal cylinder generated by orthogonal-gauge data:
// gamma(t,s) = (alpha(s+t) + alpha(s-t))/2 + (B(s+t) - B(s-t))/2, B' = beta.
// Derivative tables are built once; all queries are pure.
class Surface {
public:
    explicit Surface(InitialData data);

    const InitialData& data() const { return data_; }
    double period() const { return data_.period(); }
    int dimension() const { return data_.dimension(); }

    Vec3 position(double t, double s) const;
    Vec3 gamma_t(double t, double s) const;
    Vec3 gamma_s(double t, double s) const;
    // Mixed derivative d^(i+j) gamma / dt^i ds^j with i + j <= 4.
    Vec3 derivative(int i, int j, double t, double s) const;

    // Null fields a = alpha' + beta, b = alpha' - beta and their m-th derivatives (m <= 3).
    Vec3 a(double u, int m = 0) const;
    Vec3 b(double v, int m = 0) const;
    Vec3 alpha(double s, int m = 0) const;
    Vec3 beta(double s, int m = 0) const;

private:
    InitialData data_;
    std::vector<PeriodicFunction> dalpha_;  // alpha^(m), m = 0..5
    std::vector<PeriodicFunction> dbeta_;   // beta^(m), m = 0..4
    PeriodicFunction beta_int_;
};

struct Slice {
    double t = 0.0;
    std::vector<double> s;
    std::vector<Vec3> position;
    std::vector<double> speed;  // |gamma_s(t, s)|
};

Vec3 evolve_point(const InitialData& data, double t, double s);
Slice time_slice(const InitialData& data, double t, int n);
Slice time_slice(const Surface& surf, double t, int n);

constexpr double kTangentThreshold = 1e-12;
// U = (a(s+t) + b(s-t)) / |a(s+t) + b(s-t)|; throws NumericalError at a singular point.
Vec3 tangent(const Surface& surf, double t, double s);
Vec3 tangent(const InitialData& data, double t, double s);

struct WorldsheetRow {
    double t, s;
    Vec3 x;
};
// Uniform grid, t-major then s; nt rows in [t0, t1] inclusive, ns samples over one period.
std::vector<WorldsheetRow> worldsheet_export(const Surface& surf, double t0, double t1, int nt, int ns);

// Data (gamma(t0, .), gamma_t(t0, .)) of the same surface, as exact spectral functions.
InitialData shift_time(const InitialData& data, double t0);

struct GaugeReport {
    double orthogonality = 0.0;   // max |<gamma_t, gamma_s>|
    double normalization = 0.0;   // max ||gamma_t|^2 + |gamma_s|^2 - 1|
};
GaugeReport gauge_preservation(const Surface& surf, const std::vector<double>& times, int ns);

}  // namespace ws
