#include "ws/numeric.hpp"

#include "ws/errors.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>

namespace ws {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (a == b) return 0.0;
    // Start from 16 panels so that narrow features are not skipped by the first estimate.
    const int panels = 16;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + (b - a) * i / panels, x1 = a + (b - a) * (i + 1) / panels;
        const double xm = 0.5 * (x0 + x1);
        const double f0 = f(x0), f1 = f(x1), fm = f(xm);
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += simpson_step(f, x0, f0, x1, f1, xm, fm, whole, tol / panels, max_depth);
    }
    return total;
}

std::vector<double> fd_weights(double x0, const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size());
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0, c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][m];
    return w;
}

double bracketed_root(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) throw NumericalError("bracketed_root: no sign change");
    boost::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(52);
    auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
    return 0.5 * (r.first + r.second);
}

std::pair<double, double> minimize_1d(const std::function<double(double)>& f, double a, double b) {
    boost::uintmax_t iters = 200;
    auto r = boost::math::tools::brent_find_minima(f, a, b, 52, iters);
    return {r.first, r.second};
}

double wrap_angle(double x) {
    const double two_pi = 2.0 * std::numbers::pi;
    double y = std::fmod(x + std::numbers::pi, two_pi);
    if (y <= 0.0) y += two_pi;
    return y - std::numbers::pi;
}

RigidFit procrustes_2d(const std::vector<Vec2>& p, const std::vector<Vec2>& q) {
    if (p.size() != q.size() || p.empty()) throw ValidationError("procrustes: point sets differ in size");
    Vec2 cp = Vec2::Zero(), cq = Vec2::Zero();
    for (size_t i = 0; i < p.size(); ++i) {
        cp += p[i];
        cq += q[i];
    }
    cp /= static_cast<double>(p.size());
    cq /= static_cast<double>(q.size());
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        const Vec2 a = p[i] - cp, b = q[i] - cq;
        sxx += a.dot(b);
        sxy += cross2(a, b);
    }
    RigidFit fit;
    fit.angle = std::atan2(sxy, sxx);
    Eigen::Rotation2Dd rot(fit.angle);
    fit.translation = cq - rot * cp;
    double sum = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        const double d = (rot * p[i] + fit.translation - q[i]).norm();
        fit.max_deviation = std::max(fit.max_deviation, d);
        sum += d * d;
    }
    fit.rms_deviation = std::sqrt(sum / static_cast<double>(p.size()));
    return fit;
}

std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd a(n, degree + 1);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        double p = 1.0;
        for (int d = 0; d <= degree; ++d) {
            a(i, d) = p;
            p *= x[i];
        }
        b(i) = y[i];
    }
    Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    return std::vector<double>(c.data(), c.data() + c.size());
}

}  // namespace ws
