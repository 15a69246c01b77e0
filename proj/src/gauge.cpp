#include "ws/gauge.hpp"

#include "ws/errors.hpp"
#include "ws/kernels.hpp"
#include "ws/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace ws {

namespace {

constexpr int kStencil = 9;
constexpr int kInterp = 8;

// First-derivative weights for 9 unit-spaced nodes 0..8 evaluated at node `at`.
const std::array<std::array<double, kStencil>, kStencil>& stencil_table() {
    static const auto table = [] {
        std::array<std::array<double, kStencil>, kStencil> t{};
        std::vector<double> nodes(kStencil);
        for (int k = 0; k < kStencil; ++k) nodes[k] = k;
        for (int at = 0; at < kStencil; ++at) {
            const std::vector<double> w = fd_weights(at, nodes, 1);
            for (int k = 0; k < kStencil; ++k) t[at][k] = w[k];
        }
        return t;
    }();
    return table;
}

// 8-point Lagrange weights at fractional position x on nodes 0..7.
std::array<double, kInterp> lagrange_weights(double x) {
    std::array<double, kInterp> w{};
    for (int k = 0; k < kInterp; ++k) {
        double p = 1.0;
        for (int m = 0; m < kInterp; ++m)
            if (m != k) p *= (x - m) / (k - m);
        w[k] = p;
    }
    return w;
}

int wrap_index(int j, int n) {
    j %= n;
    return j < 0 ? j + n : j;
}

struct PeriodicStencil {
    int base;
    std::array<double, kInterp> w;
};

PeriodicStencil periodic_stencil(double sigma, double period, int n) {
    const double r = sigma / period * n;
    const int base = static_cast<int>(std::floor(r)) - 3;
    return {base, lagrange_weights(r - base)};
}

PeriodicStencil clamped_stencil(double t, double t0, double dt, int n) {
    const double r = (t - t0) / dt;
    const int base = std::clamp(static_cast<int>(std::floor(r)) - 3, 0, n - kInterp);
    return {base, lagrange_weights(r - base)};
}

Vec3 interp_periodic(const std::vector<Vec3>& v, double sigma, double period) {
    const int n = static_cast<int>(v.size());
    const PeriodicStencil st = periodic_stencil(sigma, period, n);
    Vec3 out = Vec3::Zero();
    for (int k = 0; k < kInterp; ++k) out += st.w[k] * v[wrap_index(st.base + k, n)];
    return out;
}

void point_derivatives(const ArbitrarySurfacePatch& p, int i, int j, Vec3& gt, Vec3& gs) {
    const auto& tab = stencil_table();
    const double hs = p.period / p.ns;
    gs = Vec3::Zero();
    for (int k = 0; k < kStencil; ++k) gs += tab[4][k] * p.at(i, wrap_index(j - 4 + k, p.ns));
    gs /= hs;
    const int start = std::clamp(i - 4, 0, p.nt - kStencil);
    gt = Vec3::Zero();
    for (int k = 0; k < kStencil; ++k) gt += tab[i - start][k] * p.at(start + k, j);
    gt /= p.dt;
}

void check_patch(const ArbitrarySurfacePatch& p) {
    if (p.nt < kStencil || p.ns < 2 * kStencil) throw ValidationError("patch: grid too small (need nt >= 9, ns >= 18)");
    if (!(p.dt > 0.0) || !(p.period > 0.0)) throw ValidationError("patch: non-positive spacing");
    if (p.x.size() != static_cast<size_t>(p.nt) * p.ns) throw ValidationError("patch: sample count mismatch");
}

// Distance from q to the interpolated closed curve through b, starting from the nearest sample.
double point_to_curve(const Vec3& q, const std::vector<Vec3>& b) {
    const int n = static_cast<int>(b.size());
    int jn = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        const double d = (b[j] - q).squaredNorm();
        if (d < best) {
            best = d;
            jn = j;
        }
    }
    const double period = n;
    // Squared distance in a local offset keeps the minimum smooth and the Brent tolerance absolute.
    auto c = [&](double x) { return interp_periodic(b, jn + x, period); };
    auto f = [&](double x) { return (c(x) - q).squaredNorm(); };
    auto [x, fx] = minimize_1d(f, -1.0, 1.0);
    // Newton on the foot-point condition <c(x) - q, c'(x)> = 0.
    constexpr double h = 1e-3;
    for (int it = 0; it < 3; ++it) {
        const Vec3 c0 = c(x), cp = (c(x + h) - c(x - h)) / (2 * h), cpp = (c(x + h) - 2 * c0 + c(x - h)) / (h * h);
        const double g = (c0 - q).dot(cp), dg = cp.squaredNorm() + (c0 - q).dot(cpp);
        if (!(dg > 0.0)) break;
        const double xn = x - g / dg, fn = f(xn);
        if (!(fn < fx)) break;
        x = xn;
        fx = fn;
    }
    return std::sqrt(std::min(fx, best));
}

}  // namespace

ArbitrarySurfacePatch sample_patch(const std::function<Vec3(double, double)>& gamma, double t0, double dt, int nt,
                                   int ns, double period) {
    ArbitrarySurfacePatch p;
    p.nt = nt;
    p.ns = ns;
    p.t0 = t0;
    p.dt = dt;
    p.period = period;
    p.x.resize(static_cast<size_t>(nt) * ns);
    kernels::parallel_for(nt * ns, [&](int idx) {
        const int i = idx / ns, j = idx % ns;
        p.x[idx] = gamma(p.t(i), p.s(j));
    });
    return p;
}

double compute_Q(const Vec3& gamma_t, const Vec3& gamma_s) {
    const double n2 = gamma_s.squaredNorm();
    if (n2 < 1e-24) throw ValidationError("compute_Q: gamma_s vanishes, Q undefined");
    const double c = gamma_t.dot(gamma_s);
    return gamma_t.squaredNorm() - c * c / n2;
}

double compute_Q(const ArbitrarySurfacePatch& patch, int i, int j) {
    check_patch(patch);
    Vec3 gt, gs;
    point_derivatives(patch, i, j, gt, gs);
    return compute_Q(gt, gs);
}

PatchDerivatives patch_derivatives(const ArbitrarySurfacePatch& patch) {
    check_patch(patch);
    PatchDerivatives d;
    d.gt.resize(patch.x.size());
    d.gs.resize(patch.x.size());
    kernels::parallel_for(patch.nt * patch.ns, [&](int idx) {
        point_derivatives(patch, idx / patch.ns, idx % patch.ns, d.gt[idx], d.gs[idx]);
    });
    return d;
}

InitialData orthogonal_gauge_initial_data(const ArbitraryCurveData& input) {
    const PeriodicFunction& c = input.curve;
    const PeriodicFunction& bs = input.normal_speed;
    if (c.dim() != bs.dim()) throw ValidationError("orthogonal_gauge_initial_data: dimension mismatch");
    if (std::abs(c.period() - bs.period()) > 1e-12 * c.period())
        throw ValidationError("orthogonal_gauge_initial_data: period mismatch");
    const double P = c.period();
    const PeriodicFunction dc = c.derivative();
    const int n = 4096;
    std::vector<Vec3> rho(n);
    for (int j = 0; j < n; ++j) {
        const double s = P * j / n;
        const Vec3 v = dc.eval(s), b = bs.eval(s);
        if (b.norm() >= 1.0) throw ValidationError("orthogonal_gauge_initial_data: |beta*| >= 1 (not timelike)");
        if (std::abs(v.dot(b)) > kStructuralTol)
            throw ValidationError("orthogonal_gauge_initial_data: beta* is not normal to the curve");
        if (v.norm() <= kRegularityTol) throw ValidationError("orthogonal_gauge_initial_data: curve is not immersed");
    }
    auto density = [&](double s) {
        const Vec3 b = bs.eval(s);
        return Vec3(dc.eval(s).norm() / std::sqrt(1.0 - b.squaredNorm()), 0.0, 0.0);
    };
    const PeriodicFunction w = fit_periodic(P, 1, density, 1e-14, 2048);
    const double mean = w.mean().x();
    const double L = mean * P;
    PeriodicFunction wp = w;
    wp.cos(0, 0) = 0.0;
    const PeriodicFunction A = wp.antiderivative();
    const double A0 = A.eval1(0.0);
    // Inverse of s(sigma) = mean sigma + A(sigma) - A(0) by Newton; s' = density > 0.
    auto sigma_of = [&](double s) {
        double x = s / mean;
        for (int it = 0; it < 50; ++it) {
            const double f = mean * x + A.eval1(x) - A0 - s;
            const double dx = f / w.eval1(x);
            x -= dx;
            if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
        }
        return x;
    };
    auto alpha_f = [&](double s) { return c.eval(sigma_of(s)); };
    auto beta_f = [&](double s) { return bs.eval(sigma_of(s)); };
    PeriodicFunction alpha = fit_periodic(L, c.dim(), alpha_f, 1e-14, 2048);
    PeriodicFunction beta = fit_periodic(L, c.dim(), beta_f, 1e-14, 2048);
    const int k = std::max(alpha.modes(), beta.modes());
    return InitialData{alpha.resized(k), beta.resized(k), false};
}

OrthogonalPatch reparametrize_surface(const ArbitrarySurfacePatch& patch) {
    check_patch(patch);
    const int nt = patch.nt, ns = patch.ns;
    const double P = patch.period;
    const PatchDerivatives d = patch_derivatives(patch);

    std::vector<double> mu(patch.x.size());
    for (size_t idx = 0; idx < mu.size(); ++idx) {
        const double g2 = d.gs[idx].squaredNorm();
        if (g2 < 1e-24) throw ValidationError("reparametrize_surface: gamma_s vanishes on the patch");
        if (compute_Q(d.gt[idx], d.gs[idx]) >= 1.0)
            throw ValidationError("reparametrize_surface: patch is not Lorentzian (Q >= 1)");
        mu[idx] = -d.gt[idx].dot(d.gs[idx]) / g2;
    }
    auto mu_at = [&](double t, double sigma) {
        const PeriodicStencil ts = clamped_stencil(t, patch.t0, patch.dt, nt);
        const PeriodicStencil ss = periodic_stencil(sigma, P, ns);
        double v = 0.0;
        for (int a = 0; a < kInterp; ++a) {
            const size_t row = static_cast<size_t>(ts.base + a) * ns;
            double r = 0.0;
            for (int b = 0; b < kInterp; ++b) r += ss.w[b] * mu[row + wrap_index(ss.base + b, ns)];
            v += ts.w[a] * r;
        }
        return v;
    };

    // First slice: arclength in the proper-time density |gamma_sigma| / sqrt(1 - Q).
    std::vector<Vec3> w0(ns);
    for (int j = 0; j < ns; ++j)
        w0[j] = Vec3(d.gs[j].norm() / std::sqrt(1.0 - compute_Q(d.gt[j], d.gs[j])), 0.0, 0.0);
    const PeriodicFunction w = PeriodicFunction::from_samples(P, 1, ns / 2 - 1, w0);
    const double mean = w.mean().x();
    const double L = mean * P;
    PeriodicFunction wp = w;
    wp.cos(0, 0) = 0.0;
    const PeriodicFunction A = wp.antiderivative();
    const double A0 = A.eval1(0.0);

    OrthogonalPatch out;
    out.patch.nt = nt;
    out.patch.ns = ns;
    out.patch.t0 = patch.t0;
    out.patch.dt = patch.dt;
    out.patch.period = L;
    out.patch.x.resize(patch.x.size());
    out.sigma.resize(patch.x.size());

    std::vector<double> sig(ns);
    kernels::parallel_for(ns, [&](int k) {
        const double s = L * k / ns;
        double x = s / mean;
        for (int it = 0; it < 50; ++it) {
            const double dx = (mean * x + A.eval1(x) - A0 - s) / w.eval1(x);
            x -= dx;
            if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
        }
        sig[k] = x;
    });

    auto store_row = [&](int i) {
        std::vector<Vec3> row(patch.x.begin() + static_cast<long>(i) * ns,
                              patch.x.begin() + static_cast<long>(i + 1) * ns);
        for (int k = 1; k < ns; ++k)
            if (!(sig[k] > sig[k - 1]))
                throw NumericalError("reparametrize_surface: characteristics crossed (grid under-resolved)");
        if (!(sig[ns - 1] < sig[0] + P))
            throw NumericalError("reparametrize_surface: characteristics crossed (grid under-resolved)");
        kernels::parallel_for(ns, [&](int k) {
            out.patch.at(i, k) = interp_periodic(row, sig[k], P);
            out.sigma[static_cast<size_t>(i) * ns + k] = sig[k];
        });
    };
    store_row(0);
    const double h = patch.dt / 4.0;
    for (int i = 0; i + 1 < nt; ++i) {
        kernels::parallel_for(ns, [&](int k) {
            double t = patch.t(i), x = sig[k];
            for (int sub = 0; sub < 4; ++sub) {
                const double k1 = mu_at(t, x);
                const double k2 = mu_at(t + h / 2, x + h / 2 * k1);
                const double k3 = mu_at(t + h / 2, x + h / 2 * k2);
                const double k4 = mu_at(t + h, x + h * k3);
                x += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
                t += h;
            }
            sig[k] = x;
        });
        store_row(i + 1);
    }
    return out;
}

GaugeResiduals gauge_residuals(const ArbitrarySurfacePatch& patch) {
    const PatchDerivatives d = patch_derivatives(patch);
    GaugeResiduals r;
    const int ns = patch.ns;
    std::vector<double> rho(d.gs.size());
    for (size_t idx = 0; idx < d.gs.size(); ++idx) {
        const Vec3& gt = d.gt[idx];
        const Vec3& gs = d.gs[idx];
        r.orthogonality = std::max(r.orthogonality, std::abs(gt.dot(gs)));
        r.normalization = std::max(r.normalization, std::abs(gt.squaredNorm() + gs.squaredNorm() - 1.0));
        const double Q = compute_Q(gt, gs);
        rho[idx] = Q < 1.0 ? gs.norm() / std::sqrt(1.0 - Q) : std::numeric_limits<double>::infinity();
    }
    for (size_t idx = ns; idx < rho.size(); ++idx)
        r.conservation = std::max(r.conservation, std::abs(rho[idx] - rho[idx % ns]));
    return r;
}

double slice_hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    if (a.size() < kInterp || b.size() < kInterp) throw ValidationError("slice_hausdorff: need at least 8 samples");
    std::vector<double> da(a.size()), db(b.size());
    kernels::parallel_for(static_cast<int>(a.size()), [&](int i) { da[i] = point_to_curve(a[i], b); });
    kernels::parallel_for(static_cast<int>(b.size()), [&](int i) { db[i] = point_to_curve(b[i], a); });
    return std::max(*std::max_element(da.begin(), da.end()), *std::max_element(db.begin(), db.end()));
}

}  // namespace ws
