#include "ws/curve_core.hpp"

#include "ws/errors.hpp"
#include "ws/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace ws {

namespace {

constexpr double kPi = std::numbers::pi;

struct Lift {
    PeriodicFunction angle;
    int winding = 0;
};

// Continuous lift of the direction of unit samples v(j L / n).
Lift lift_angles(const std::vector<Vec2>& v, double period, int modes) {
    const int n = static_cast<int>(v.size());
    std::vector<double> th(n + 1);
    th[0] = std::atan2(v[0].y(), v[0].x());
    for (int j = 1; j <= n; ++j) {
        const Vec2& w = v[j % n];
        const Vec2& p = v[j - 1];
        const double step = std::atan2(cross2(p, w), p.dot(w));
        if (std::abs(step) > kPi / 2) throw NumericalError("angle lift under-resolved: raise the lift grid");
        th[j] = th[j - 1] + step;
    }
    Lift out;
    const double turns = (th[n] - th[0]) / (2.0 * kPi);
    out.winding = static_cast<int>(std::lround(turns));
    if (std::abs(turns - out.winding) > 1e-6) throw NumericalError("angle lift: inconsistent winding");
    const double slope = 2.0 * kPi * out.winding / period;
    std::vector<Vec3> periodic(n);
    for (int j = 0; j < n; ++j) periodic[j] = Vec3(th[j] - slope * (period * j / n), 0.0, 0.0);
    if (modes > 0) {
        out.angle = PeriodicFunction::from_samples(period, 1, modes, periodic);
    } else {
        for (int k = 64; k <= 2048; k *= 2) {
            out.angle = PeriodicFunction::from_samples(period, 1, std::min(k, (n - 1) / 2), periodic);
            if (out.angle.tail_magnitude() < 1e-13) break;
        }
    }
    out.angle.drift() = Vec3(slope, 0.0, 0.0);
    return out;
}

}  // namespace

ValidationReport validate_initial_data(const InitialData& data, int grid, double tol) {
    if (std::abs(data.alpha.period() - data.beta.period()) > 1e-12 * data.alpha.period())
        throw ValidationError("initial data: alpha and beta have different periods");
    if (data.alpha.dim() != data.beta.dim())
        throw ValidationError("initial data: alpha and beta have different dimensions");
    ValidationReport r;
    r.grid = grid;
    r.singular_preset = data.singular_preset;
    r.min_speed = std::numeric_limits<double>::infinity();
    const double L = data.period();
    const PeriodicFunction da = data.alpha.derivative();
    for (int j = 0; j < grid; ++j) {
        const double s = L * j / grid;
        const Vec3 ap = da.eval(s);
        const Vec3 b = data.beta.eval(s);
        r.orthogonality = std::max(r.orthogonality, std::abs(ap.dot(b)));
        r.normalization = std::max(r.normalization, std::abs(ap.squaredNorm() + b.squaredNorm() - 1.0));
        r.min_speed = std::min(r.min_speed, ap.norm());
        r.max_beta = std::max(r.max_beta, b.norm());
    }
    // Closure: alpha(L) - alpha(0) is the drift times L; the mean of alpha' is the drift.
    r.closure = (da.mean() * L).norm();
    r.regular = r.min_speed > kRegularityTol;
    r.passed = r.orthogonality <= tol && r.normalization <= tol && r.closure <= tol &&
               (r.regular || data.singular_preset);
    return r;
}

Vec2 NullPair::a(double u) const {
    const double p = psi.eval1(u);
    return Vec2(std::cos(p), std::sin(p));
}

Vec2 NullPair::b(double v) const {
    const double p = psitilde.eval1(v);
    return Vec2(-std::cos(p), -std::sin(p));
}

NullPair to_null_pair(const InitialData& data, int modes, int grid) {
    if (data.dimension() != 2) throw ValidationError("to_null_pair: data must be planar");
    if (grid <= 0) {
        // Eight samples per data mode resolves the lift; the power of two keeps grids nested.
        const int k = std::max(data.alpha.modes(), data.beta.modes());
        grid = 1024;
        while (grid < 8 * k && grid < 16384) grid *= 2;
    }
    const double L = data.period();
    const PeriodicFunction da = data.alpha.derivative();
    std::vector<Vec2> av(grid), mbv(grid);
    double worst = 0.0;
    for (int j = 0; j < grid; ++j) {
        const double s = L * j / grid;
        const Vec2 ap = da.eval2(s), b = data.beta.eval2(s);
        av[j] = ap + b;
        mbv[j] = b - ap;
        worst = std::max({worst, std::abs(av[j].norm() - 1.0), std::abs(mbv[j].norm() - 1.0)});
    }
    if (worst > kStructuralTol)
        throw ValidationError("to_null_pair: |a| or |b| deviates from 1 (gauge violation " +
                              std::to_string(worst) + ")");
    NullPair p;
    Lift la = lift_angles(av, L, modes);
    Lift lb = lift_angles(mbv, L, modes);
    p.psi = std::move(la.angle);
    p.psitilde = std::move(lb.angle);
    p.winding_a = la.winding;
    p.winding_b = lb.winding;
    return p;
}

InitialData from_null_pair(const NullPair& pair, const Vec2& basepoint, int modes, bool allow_singular) {
    const double L = pair.period();
    auto dalpha = [&](double s) -> Vec3 {
        const Vec2 v = 0.5 * (pair.a(s) + pair.b(s));
        return Vec3(v.x(), v.y(), 0.0);
    };
    auto beta = [&](double s) -> Vec3 {
        const Vec2 v = 0.5 * (pair.a(s) - pair.b(s));
        return Vec3(v.x(), v.y(), 0.0);
    };
    PeriodicFunction da, b;
    if (modes > 0) {
        da = PeriodicFunction::from_function(L, 2, modes, dalpha, std::max(256, 4 * modes));
        b = PeriodicFunction::from_function(L, 2, modes, beta, std::max(256, 4 * modes));
    } else {
        da = fit_periodic(L, 2, dalpha, 1e-13);
        b = fit_periodic(L, 2, beta, 1e-13);
        const int k = std::max(da.modes(), b.modes());
        da = da.resized(k);
        b = b.resized(k);
    }
    if (da.mean().norm() * L > kStructuralTol)
        throw ValidationError("from_null_pair: closure integral of a + b is not zero");
    double min_speed = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 4096; ++j) min_speed = std::min(min_speed, da.eval(L * j / 4096).norm());
    if (min_speed <= kRegularityTol && !allow_singular)
        throw ValidationError("from_null_pair: alpha' vanishes (degenerate data)");
    da.cos(0, 0) = 0.0;
    da.cos(1, 0) = 0.0;
    PeriodicFunction alpha = da.antiderivative();
    const Vec3 a0 = alpha.eval(0.0);
    alpha.cos(0, 0) += basepoint.x() - a0.x();
    alpha.cos(1, 0) += basepoint.y() - a0.y();
    InitialData d{std::move(alpha), std::move(b), min_speed <= kRegularityTol};
    return d;
}

int rotation_index(const InitialData& data) {
    if (data.singular_preset) throw ValidationError("rotation_index: undefined for singular presets");
    if (data.dimension() != 2) throw ValidationError("rotation_index: data must be planar");
    const int n = 16384;
    const double L = data.period();
    const PeriodicFunction da = data.alpha.derivative();
    std::vector<Vec2> t(n);
    for (int j = 0; j < n; ++j) {
        t[j] = da.eval2(L * j / n);
        if (t[j].norm() <= kRegularityTol) throw ValidationError("rotation_index: alpha' vanishes");
        t[j].normalize();
    }
    return lift_angles(t, L, 16).winding;
}

NullPair random_null_pair(std::uint64_t seed, int modes, double amplitude, const RandomDataOptions& opt) {
    if (modes < 1) throw ValidationError("random_null_pair: need at least one mode");
    if (opt.winding == 0) throw ValidationError("random_null_pair: winding must be non-zero");
    const double L = opt.period;
    const double w = 2.0 * kPi / L;
    const int m = std::abs(opt.winding);
    const int kmax = std::max(modes, m);
    const int nq = 1024;
    for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
        std::seed_seq sseq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                           static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(attempt)};
        std::mt19937_64 rng(sseq);
        PeriodicFunction psi(L, 1, kmax), psit(L, 1, kmax);
        const double theta = uniform(rng, -kPi, kPi);
        psi.cos(0, 0) = theta + kPi / 2;
        psit.cos(0, 0) = theta - kPi / 2 + amplitude * uniform(rng, -0.5, 0.5);
        for (int k = 1; k <= modes; ++k) {
            psi.cos(0, k) = amplitude * uniform(rng, -1.0, 1.0) / k;
            psi.sin(0, k) = amplitude * uniform(rng, -1.0, 1.0) / k;
            psit.cos(0, k) = amplitude * uniform(rng, -1.0, 1.0) / k;
            psit.sin(0, k) = amplitude * uniform(rng, -1.0, 1.0) / k;
        }
        psi.drift() = Vec3(opt.winding * w, 0.0, 0.0);
        psit.drift() = Vec3(opt.winding * w, 0.0, 0.0);

        // Closure defect F = mean(e^{i psi}) - mean(e^{i psitilde}); unknowns are the
        // harmonic-m cosine and sine coefficients of psi.
        std::complex<double> mt(0.0, 0.0);
        for (int j = 0; j < nq; ++j) {
            const double p = psit.eval1(L * j / nq);
            mt += std::polar(1.0, p);
        }
        mt /= static_cast<double>(nq);
        auto defect = [&](const PeriodicFunction& f, Eigen::Matrix2d* jac) {
            std::complex<double> mean(0.0, 0.0), dc(0.0, 0.0), ds(0.0, 0.0);
            for (int j = 0; j < nq; ++j) {
                const double s = L * j / nq;
                const std::complex<double> e = std::polar(1.0, f.eval1(s));
                mean += e;
                if (jac) {
                    dc += std::complex<double>(0.0, std::cos(m * w * s)) * e;
                    ds += std::complex<double>(0.0, std::sin(m * w * s)) * e;
                }
            }
            mean /= static_cast<double>(nq);
            if (jac) {
                dc /= static_cast<double>(nq);
                ds /= static_cast<double>(nq);
                *jac << dc.real(), ds.real(), dc.imag(), ds.imag();
            }
            const std::complex<double> F = mean - mt;
            return Eigen::Vector2d(F.real(), F.imag());
        };
        bool converged = false;
        for (int it = 0; it < 60; ++it) {
            Eigen::Matrix2d jac;
            const Eigen::Vector2d F = defect(psi, &jac);
            if (F.norm() < 1e-14) {
                converged = true;
                break;
            }
            if (std::abs(jac.determinant()) < 1e-14) break;
            const Eigen::Vector2d step = jac.lu().solve(-F);
            double lam = 1.0;
            bool improved = false;
            for (int h = 0; h < 30; ++h) {
                PeriodicFunction trial = psi;
                trial.cos(0, m) += lam * step(0);
                trial.sin(0, m) += lam * step(1);
                if (defect(trial, nullptr).norm() < F.norm()) {
                    psi = std::move(trial);
                    improved = true;
                    break;
                }
                lam *= 0.5;
            }
            if (!improved) break;
        }
        if (!converged) continue;
        double min_speed = std::numeric_limits<double>::infinity();
        for (int j = 0; j < 4096; ++j) {
            const double s = L * j / 4096;
            min_speed = std::min(min_speed, std::abs(std::sin(0.5 * (psi.eval1(s) - psit.eval1(s)))));
        }
        if (min_speed < opt.min_speed) continue;
        NullPair pair;
        pair.psi = std::move(psi);
        pair.psitilde = std::move(psit);
        pair.winding_a = pair.winding_b = opt.winding;
        return pair;
    }
    throw NumericalError("random_null_pair: retry budget exhausted");
}

InitialData random_initial_data(std::uint64_t seed, int modes, double amplitude, const RandomDataOptions& opt) {
    return from_null_pair(random_null_pair(seed, modes, amplitude, opt), Vec2::Zero());
}

}  // namespace ws
