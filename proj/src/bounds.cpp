#include "ws/bounds.hpp"

#include "ws/errors.hpp"
#include "ws/evolution.hpp"
#include "ws/kernels.hpp"
#include "ws/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace ws {

namespace {

constexpr double kQuadTol = 1e-10;

double arc_integral(const OpenArc& arc, const std::function<double(double)>& f) {
    return adaptive_simpson(f, arc.p, arc.q, kQuadTol);
}

}  // namespace

OpenArc OpenArc::from_null_angles(std::function<double(double, int)> psi, std::function<double(double, int)> psitilde,
                                  double p, double q) {
    if (!(q > p)) throw ValidationError("OpenArc: need p < q");
    OpenArc arc;
    arc.p = p;
    arc.q = q;
    arc.jet = [psi = std::move(psi), psitilde = std::move(psitilde)](double s) {
        const double x = psi(s, 0), x1 = psi(s, 1), y = psitilde(s, 0), y1 = psitilde(s, 1);
        const Vec2 a(std::cos(x), std::sin(x)), b(-std::cos(y), -std::sin(y));
        const Vec2 da = x1 * perp(a), db = y1 * perp(b);
        ArcJet j;
        j.d1 = 0.5 * (a + b);
        j.d2 = 0.5 * (da + db);
        j.b0 = 0.5 * (a - b);
        j.b1 = 0.5 * (da - db);
        return j;
    };
    return arc;
}

OpenArc OpenArc::restrict(const InitialData& data, double p, double q) {
    if (data.dimension() != 2) throw ValidationError("OpenArc: data must be planar");
    if (!(q > p) || q - p > data.period() * (1.0 + 1e-12))
        throw ValidationError("OpenArc: need p < q within one period");
    OpenArc arc;
    arc.p = p;
    arc.q = q;
    auto da = std::make_shared<PeriodicFunction>(data.alpha.derivative());
    auto dda = std::make_shared<PeriodicFunction>(data.alpha.derivative(2));
    auto b = std::make_shared<PeriodicFunction>(data.beta);
    auto db = std::make_shared<PeriodicFunction>(data.beta.derivative());
    arc.jet = [da, dda, b, db](double s) {
        return ArcJet{da->eval2(s), dda->eval2(s), b->eval2(s), db->eval2(s)};
    };
    return arc;
}

Vec2 OpenArc::a(double sigma) const {
    const ArcJet J = jet(sigma);
    return J.b0 + std::sqrt(1.0 - J.b0.squaredNorm()) * J.d1.normalized();
}

Vec2 OpenArc::b(double sigma) const {
    const ArcJet J = jet(sigma);
    return -J.b0 + std::sqrt(1.0 - J.b0.squaredNorm()) * J.d1.normalized();
}

namespace {

void null_derivatives(const ArcJet& J, Vec2& a_s, Vec2& b_s) {
    const double sp = J.d1.norm();
    const Vec2 U = J.d1 / sp;
    const Vec2 U_s = (J.d2 - U * U.dot(J.d2)) / sp;
    const double c = std::sqrt(1.0 - J.b0.squaredNorm());
    const double c_s = -J.b0.dot(J.b1) / c;
    a_s = J.b1 + c_s * U + c * U_s;
    b_s = -J.b1 + c_s * U + c * U_s;
}

}  // namespace

Vec2 OpenArc::a_sigma(double sigma) const {
    Vec2 as, bs;
    null_derivatives(jet(sigma), as, bs);
    return as;
}

Vec2 OpenArc::b_sigma(double sigma) const {
    Vec2 as, bs;
    null_derivatives(jet(sigma), as, bs);
    return bs;
}

void validate_arc(const OpenArc& arc, int grid) {
    if (!(arc.q > arc.p)) throw ValidationError("arc: empty parameter interval");
    if (!arc.jet) throw ValidationError("arc: missing data");
    for (int i = 0; i <= grid; ++i) {
        const ArcJet J = arc.jet(arc.p + (arc.q - arc.p) * i / grid);
        if (J.b0.norm() >= 1.0) throw ValidationError("arc: |beta*| >= 1 (not timelike)");
        if (J.d1.norm() <= kRegularityTol) throw ValidationError("arc: alpha*' vanishes");
        if (std::abs(J.b0.dot(J.d1)) > kStructuralTol) throw ValidationError("arc: beta* is not normal to alpha*'");
    }
}

double arc_length(const OpenArc& arc) {
    return arc_integral(arc, [&](double s) { return arc.jet(s).d1.norm(); });
}

double gauge_length(const OpenArc& arc) {
    return arc_integral(arc, [&](double s) {
        const ArcJet J = arc.jet(s);
        return J.d1.norm() / std::sqrt(1.0 - J.b0.squaredNorm());
    });
}

double timelikeness_index(const OpenArc& arc) {
    validate_arc(arc);
    return arc_length(arc) / gauge_length(arc);
}

double curvature_load(const OpenArc& arc) {
    validate_arc(arc);
    return arc_integral(arc, [&](double s) {
        Vec2 as, bs;
        null_derivatives(arc.jet(s), as, bs);
        return as.norm() + bs.norm();
    });
}

Certificate existence_guarantee(const OpenArc& arc) {
    validate_arc(arc);
    Certificate c;
    c.length = arc_length(arc);
    const double lg = gauge_length(arc);
    c.j = c.length / lg;
    c.load = curvature_load(arc);
    c.issued = c.j > 1.5 * c.load;
    if (!c.issued) return c;
    c.T = c.length / c.j;
    c.omega_p = 0.0;
    c.omega_q = lg;
    const double weighted = arc_integral(arc, [&](double s) {
        const ArcJet J = arc.jet(s);
        Vec2 as, bs;
        null_derivatives(J, as, bs);
        return (as.norm() + bs.norm()) * (0.5 * J.b0.norm() + 1.0);
    });
    c.floor = 0.25 * c.j - 0.25 * weighted;
    return c;
}

VerificationReport verify_guarantee(const OpenArc& arc, const Certificate& cert, int grid) {
    if (!cert.issued) throw ValidationError("verify_guarantee: no certificate to verify");
    if (grid < 2) throw ValidationError("verify_guarantee: grid too small");
    const double h = (arc.q - arc.p) / (grid - 1);
    std::vector<Vec3> A(grid), B(grid);
    kernels::parallel_for(grid, [&](int i) {
        const double s = arc.p + h * i;
        const Vec2 a = arc.a(s), b = arc.b(s);
        A[i] = Vec3(a.x(), a.y(), 0.0);
        B[i] = Vec3(b.x(), b.y(), 0.0);
    });
    const kernels::GridMin g = kernels::min_pair_sum(A, B, true);
    double x = arc.p + h * g.i, y = arc.p + h * g.j;
    auto f = [&](double u, double v) { return 0.5 * (arc.a(u) + arc.b(v)).norm(); };
    double best = 0.5 * g.value;
    for (int round = 0; round < 6; ++round) {
        const auto [xu, fu] = minimize_1d([&](double u) { return f(u, y); }, std::max(y, x - 2 * h), std::min(arc.q, x + 2 * h));
        if (fu < best) {
            best = fu;
            x = xu;
        }
        const auto [yv, fv] = minimize_1d([&](double v) { return f(x, v); }, std::max(arc.p, y - 2 * h), std::min(x, y + 2 * h));
        if (fv < best) {
            best = fv;
            y = yv;
        }
    }
    auto gauge_pos = [&](double sigma) {
        if (sigma <= arc.p) return 0.0;
        return adaptive_simpson([&](double s) {
            const ArcJet J = arc.jet(s);
            return J.d1.norm() / std::sqrt(1.0 - J.b0.squaredNorm());
        }, arc.p, sigma, kQuadTol);
    };
    const double su = gauge_pos(x), sv = gauge_pos(y);
    VerificationReport r;
    r.min_speed = best;
    r.floor = cert.floor;
    r.t_at_min = 0.5 * (su - sv);
    r.s_at_min = 0.5 * (su + sv);
    r.passed = r.min_speed >= cert.floor - 1e-6;
    r.grid = grid;
    return r;
}

bool small_total_curvature(const OpenArc& arc) {
    validate_arc(arc);
    for (int i = 0; i <= 1024; ++i)
        if (arc.jet(arc.p + (arc.q - arc.p) * i / 1024).b0.norm() > 1e-12)
            throw ValidationError("small_total_curvature: requires beta* = 0");
    const double total = arc_integral(arc, [&](double s) {
        const ArcJet J = arc.jet(s);
        return std::abs(cross2(J.d1, J.d2)) / J.d1.squaredNorm();
    });
    return total < 1.0 / 3.0;
}

double corollary_ratio(const InitialData& data, double t, double l, int starts) {
    const InitialData slice = shift_time(data, t);
    const double L = data.period();
    double sup = 0.0;
    for (int k = 0; k < starts; ++k) {
        const double s0 = L * k / starts;
        const OpenArc arc = OpenArc::restrict(slice, s0, s0 + l);
        sup = std::max(sup, curvature_load(arc) / timelikeness_index(arc));
    }
    return sup;
}

}  // namespace ws
