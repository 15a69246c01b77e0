#include "ws/evolution.hpp"

#include "ws/errors.hpp"
#include "ws/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace ws {

Surface::Surface(InitialData data) : data_(std::move(data)) {
    if (std::abs(data_.alpha.period() - data_.beta.period()) > 1e-12 * data_.period())
        throw ValidationError("surface: alpha and beta have different periods");
    for (int m = 0; m <= 5; ++m) dalpha_.push_back(data_.alpha.derivative(m));
    for (int m = 0; m <= 4; ++m) dbeta_.push_back(data_.beta.derivative(m));
    PeriodicFunction bt = data_.beta;
    bt.drift() = Vec3::Zero();
    beta_int_ = bt.antiderivative();
}

Vec3 Surface::alpha(double s, int m) const { return dalpha_.at(m).eval(s); }
Vec3 Surface::beta(double s, int m) const { return dbeta_.at(m).eval(s); }
Vec3 Surface::a(double u, int m) const { return dalpha_.at(m + 1).eval(u) + dbeta_.at(m).eval(u); }
Vec3 Surface::b(double v, int m) const { return dalpha_.at(m + 1).eval(v) - dbeta_.at(m).eval(v); }

Vec3 Surface::position(double t, double s) const {
    const double u = s + t, v = s - t;
    return 0.5 * (dalpha_[0].eval(u) + dalpha_[0].eval(v)) + 0.5 * (beta_int_.eval(u) - beta_int_.eval(v));
}

Vec3 Surface::gamma_s(double t, double s) const { return 0.5 * (a(s + t) + b(s - t)); }
Vec3 Surface::gamma_t(double t, double s) const { return 0.5 * (a(s + t) - b(s - t)); }

Vec3 Surface::derivative(int i, int j, double t, double s) const {
    if (i < 0 || j < 0 || i + j > 4) throw ValidationError("surface derivative order out of range");
    if (i == 0 && j == 0) return position(t, s);
    // gamma = F(s+t) + G(s-t) with F' = a/2, G' = b/2, so d_t^i d_s^j gamma = F^(i+j) + (-1)^i G^(i+j).
    const int m = i + j - 1;
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    return 0.5 * (a(s + t, m) + sign * b(s - t, m));
}

Vec3 evolve_point(const InitialData& data, double t, double s) { return Surface(data).position(t, s); }

Slice time_slice(const Surface& surf, double t, int n) {
    if (n < 16) throw ValidationError("time_slice: need at least 16 samples");
    Slice sl;
    sl.t = t;
    sl.s.resize(n);
    sl.position.resize(n);
    sl.speed.resize(n);
    const double L = surf.period();
    kernels::parallel_for(n, [&](int j) {
        const double s = L * j / n;
        sl.s[j] = s;
        sl.position[j] = surf.position(t, s);
        sl.speed[j] = surf.gamma_s(t, s).norm();
    });
    return sl;
}

Slice time_slice(const InitialData& data, double t, int n) { return time_slice(Surface(data), t, n); }

Vec3 tangent(const Surface& surf, double t, double s) {
    const Vec3 g = surf.a(s + t) + surf.b(s - t);
    const double n = g.norm();
    if (0.5 * n < kTangentThreshold) throw NumericalError("tangent: singular point (|gamma_s| below threshold)");
    return g / n;
}

Vec3 tangent(const InitialData& data, double t, double s) { return tangent(Surface(data), t, s); }

std::vector<WorldsheetRow> worldsheet_export(const Surface& surf, double t0, double t1, int nt, int ns) {
    if (nt < 1 || ns < 1) throw ValidationError("worldsheet_export: empty grid");
    std::vector<WorldsheetRow> rows(static_cast<size_t>(nt) * ns);
    const double L = surf.period();
    kernels::parallel_for(nt * ns, [&](int idx) {
        const int i = idx / ns, j = idx % ns;
        const double t = nt == 1 ? t0 : t0 + (t1 - t0) * i / (nt - 1);
        const double s = L * j / ns;
        rows[idx] = {t, s, surf.position(t, s)};
    });
    return rows;
}

InitialData shift_time(const InitialData& data, double t0) {
    // gamma(t0, s) = (alpha(s+t0) + alpha(s-t0))/2 + (B(s+t0) - B(s-t0))/2
    // gamma_t(t0, s) = (alpha'(s+t0) - alpha'(s-t0))/2 + (beta(s+t0) + beta(s-t0))/2
    PeriodicFunction bt = data.beta;
    bt.drift() = Vec3::Zero();
    const PeriodicFunction B = bt.antiderivative();
    const PeriodicFunction da = data.alpha.derivative();
    PeriodicFunction alpha = 0.5 * (data.alpha.shifted(t0) + data.alpha.shifted(-t0)) +
                             0.5 * (B.shifted(t0) - B.shifted(-t0));
    PeriodicFunction beta = 0.5 * (da.shifted(t0) - da.shifted(-t0)) +
                            0.5 * (data.beta.shifted(t0) + data.beta.shifted(-t0));
    alpha.drift() = Vec3::Zero();
    beta.drift() = Vec3::Zero();
    InitialData out{std::move(alpha), std::move(beta), data.singular_preset};
    return out;
}

GaugeReport gauge_preservation(const Surface& surf, const std::vector<double>& times, int ns) {
    GaugeReport r;
    const double L = surf.period();
    for (double t : times) {
        for (int j = 0; j < ns; ++j) {
            const double s = L * j / ns;
            const Vec3 gt = surf.gamma_t(t, s), gs = surf.gamma_s(t, s);
            r.orthogonality = std::max(r.orthogonality, std::abs(gt.dot(gs)));
            r.normalization = std::max(r.normalization, std::abs(gt.squaredNorm() + gs.squaredNorm() - 1.0));
        }
    }
    return r;
}

}  // namespace ws
