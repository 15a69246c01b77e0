#include "ws/r3.hpp"

#include "ws/errors.hpp"
#include "ws/evolution.hpp"
#include "ws/gauge.hpp"
#include "ws/kernels.hpp"
#include "ws/numeric.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace ws {

namespace {

constexpr double kPi = std::numbers::pi;

// Degree-9 smoothstep: h(0) = 0, h(1) = 1, h' = 630 x^4 (1 - x)^4.
double smoothstep9(double x) {
    const double x2 = x * x, x5 = x2 * x2 * x;
    return x5 * (126.0 + x * (-420.0 + x * (540.0 + x * (-315.0 + x * 70.0))));
}

struct Corner {
    Vec3 vertex, d_in, n, normal, start;
    double phi = 0.0, length = 0.0;

    Vec3 tangent(double x) const {
        const double th = phi * smoothstep9(x);
        return std::cos(th) * d_in + std::sin(th) * n;
    }
    Vec3 position(double x) const {
        using GL = boost::math::quadrature::gauss<double, 30>;
        if (x <= 0.0) return start;
        const double ic = GL::integrate([&](double y) { return std::cos(phi * smoothstep9(y)); }, 0.0, x);
        const double is = GL::integrate([&](double y) { return std::sin(phi * smoothstep9(y)); }, 0.0, x);
        return start + length * (ic * d_in + is * n);
    }
};

struct Piece {
    bool corner = false;
    double length = 0.0;
    Vec3 start, dir;  // straight pieces
    int corner_index = -1;
};

}  // namespace

InitialData SpaceCurve3::initial_data() const {
    PeriodicFunction beta(alpha.period(), alpha.dim(), alpha.modes());
    return InitialData{alpha, beta, false};
}

double SpaceCurve3::arclength_defect(int grid) const {
    const PeriodicFunction d = alpha.derivative();
    double worst = 0.0;
    for (int j = 0; j < grid; ++j) worst = std::max(worst, std::abs(d.eval(period() * j / grid).norm() - 1.0));
    return worst;
}

TetraSmoothingSpec regular_tetra_spec(double radius_fraction) {
    TetraSmoothingSpec spec;
    const double c = 1.0 / (2.0 * std::sqrt(2.0));
    spec.vertices = {Vec3(c, c, c), Vec3(c, -c, -c), Vec3(-c, c, -c), Vec3(-c, -c, c)};
    spec.radius = radius_fraction;
    return spec;
}

TetraCurve build_tetra_curve(const TetraSmoothingSpec& spec) {
    const auto& P = spec.vertices;
    const double volume = std::abs((P[1] - P[0]).dot((P[2] - P[0]).cross(P[3] - P[0]))) / 6.0;
    if (volume <= 1e-9) throw ValidationError("tetra: vertices are coplanar (degenerate tetrahedron)");
    if (!(spec.radius > 0.0)) throw ValidationError("tetra: corner radius must be positive (tangent jumps at vertices)");
    double shortest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) shortest = std::min(shortest, (P[(k + 1) % 4] - P[k]).norm());
    if (spec.radius >= 0.5 * shortest) throw ValidationError("tetra: corner radius too large for the shortest edge");
    if (spec.samples < 2 * spec.modes + 1) throw ValidationError("tetra: need samples >= 2 modes + 1");

    const double r = spec.radius;
    std::array<Corner, 4> corners;
    for (int k = 0; k < 4; ++k) {
        Corner& c = corners[k];
        c.vertex = P[k];
        c.d_in = (P[k] - P[(k + 3) % 4]).normalized();
        const Vec3 d_out = (P[(k + 1) % 4] - P[k]).normalized();
        c.phi = std::acos(std::clamp(c.d_in.dot(d_out), -1.0, 1.0));
        c.n = (d_out - c.d_in.dot(d_out) * c.d_in).normalized();
        c.normal = c.d_in.cross(d_out).normalized();
        c.start = P[k] - r * c.d_in;
        using GL = boost::math::quadrature::gauss<double, 30>;
        const double ic = GL::integrate([&](double y) { return std::cos(c.phi * smoothstep9(y)); }, 0.0, 1.0);
        c.length = r * (1.0 + std::cos(c.phi)) / ic;
    }
    // Pieces start after corner 0: edge 0-1, corner 1, edge 1-2, corner 2, edge 2-3, corner 3, edge 3-0, corner 0.
    std::vector<Piece> pieces;
    for (int k = 0; k < 4; ++k) {
        const int a = k, b = (k + 1) % 4;
        const Vec3 dir = (P[b] - P[a]).normalized();
        pieces.push_back({false, (P[b] - P[a]).norm() - 2.0 * r, P[a] + r * dir, dir, -1});
        pieces.push_back({true, corners[b].length, Vec3::Zero(), Vec3::Zero(), b});
    }
    double L = 0.0;
    std::vector<double> offset;
    for (const Piece& p : pieces) {
        offset.push_back(L);
        L += p.length;
    }
    const int N = spec.samples;
    std::vector<Vec3> samples(N);
    kernels::parallel_for(N, [&](int j) {
        const double s = L * j / N;
        int k = static_cast<int>(std::upper_bound(offset.begin(), offset.end(), s) - offset.begin()) - 1;
        k = std::clamp(k, 0, static_cast<int>(pieces.size()) - 1);
        const Piece& p = pieces[k];
        const double loc = s - offset[k];
        samples[j] = p.corner ? corners[p.corner_index].position(loc / p.length) : Vec3(p.start + loc * p.dir);
    });
    TetraCurve out;
    out.curve.alpha = PeriodicFunction::from_samples(L, 3, spec.modes, samples);

    for (int k = 0; k < 4; ++k) {
        const int pk = 2 * ((k + 3) % 4) + 1;  // piece index of corner k
        const Corner& c = corners[k];
        CornerCheck chk;
        chk.min_increment = std::numeric_limits<double>::infinity();
        double prev = 0.0;
        for (int i = 0; i <= 64; ++i) {
            const double x = i / 64.0;
            const double s = offset[pk] + x * c.length;
            chk.planarity = std::max(chk.planarity, std::abs((out.curve.alpha.eval(s) - c.vertex).dot(c.normal)));
            const Vec3 T = c.tangent(x);
            const double th = std::atan2(T.dot(c.n), T.dot(c.d_in));
            if (i > 0) chk.min_increment = std::min(chk.min_increment, th - prev);
            prev = th;
        }
        chk.turn = prev;
        if (!(chk.min_increment > 0.0) || !(chk.turn < kPi))
            throw ValidationError("tetra: corner tangent angle is not strictly monotone within a half-turn");
        out.corners[k] = chk;
    }
    return out;
}

SpaceCurve3 arclength_curve(const PeriodicFunction& c) {
    PeriodicFunction zero(c.period(), c.dim(), 0);
    const InitialData d = orthogonal_gauge_initial_data({c, zero});
    return SpaceCurve3{d.alpha};
}

SpaceCurve3 circle3(double radius) {
    if (!(radius > 0.0)) throw ValidationError("circle3: radius must be positive");
    PeriodicFunction a(2.0 * kPi * radius, 3, 1);
    a.cos(0, 1) = radius;
    a.sin(1, 1) = radius;
    return SpaceCurve3{a};
}

SpaceCurve3 torus_knot(int p, int q) {
    if (p <= 0 || q <= 0 || std::gcd(p, q) != 1) throw ValidationError("torus_knot: need coprime positive p, q");
    const int k = std::max(p, q) + std::min(p, q);
    auto f = [p, q](double th) {
        const double R = 2.0 + std::cos(p * th);
        return Vec3(R * std::cos(q * th), R * std::sin(q * th), std::sin(p * th));
    };
    const PeriodicFunction c = PeriodicFunction::from_function(2.0 * kPi, 3, k, f, 8 * k);
    return arclength_curve(c);
}

SpaceCurve3 tangent_wave(double c, double A) {
    if (!(std::abs(c) > 0.0) || !(std::abs(c) + std::abs(A) < kPi / 2))
        throw ValidationError("tangent_wave: need 0 < |c| and |c| + |A| < pi/2");
    auto phi = [c, A](double th) { return c + A * std::sin(3.0 * th); };
    // Speed 1 + b sin 3 theta balances the z component; x and y balance by the 3-fold symmetry.
    const double num = adaptive_simpson([&](double th) { return std::sin(phi(th)); }, 0.0, 2.0 * kPi, 1e-14);
    const double den =
        adaptive_simpson([&](double th) { return std::sin(3.0 * th) * std::sin(phi(th)); }, 0.0, 2.0 * kPi, 1e-14);
    const double b = -num / den;
    if (!(std::abs(b) < 1.0)) throw ValidationError("tangent_wave: tangent image cannot be balanced");
    auto velocity = [&](double th) {
        const double rho = 1.0 + b * std::sin(3.0 * th), p = phi(th);
        return Vec3(rho * std::cos(p) * std::cos(th), rho * std::cos(p) * std::sin(th), rho * std::sin(p));
    };
    PeriodicFunction v = fit_periodic(2.0 * kPi, 3, velocity, 1e-13, 1024);
    for (int k = 0; k < 3; ++k) v.cos(k, 0) = 0.0;
    return arclength_curve(v.antiderivative());
}

MarginResult antipodal_margin(const SpaceCurve3& curve, int grid) {
    const double L = curve.period();
    const PeriodicFunction d1 = curve.alpha.derivative(), d2 = curve.alpha.derivative(2),
                           d3 = curve.alpha.derivative(3);
    std::vector<Vec3> T(grid);
    kernels::parallel_for(grid, [&](int j) { T[j] = d1.eval(L * j / grid); });
    const kernels::GridMin g = kernels::min_pair_sum(T, T, false);
    double x = L * g.i / grid, y = L * g.j / grid;
    auto f = [&](double a, double b) { return (d1.eval(a) + d1.eval(b)).squaredNorm(); };
    double fx = f(x, y);
    for (int it = 0; it < 50 && fx > 1e-28; ++it) {
        const Vec3 v = d1.eval(x) + d1.eval(y);
        const Vec3 ax = d2.eval(x), ay = d2.eval(y);
        const Eigen::Vector2d grad(2 * v.dot(ax), 2 * v.dot(ay));
        Eigen::Matrix2d H;
        H << 2 * (ax.squaredNorm() + v.dot(d3.eval(x))), 2 * ax.dot(ay), 2 * ax.dot(ay),
            2 * (ay.squaredNorm() + v.dot(d3.eval(y)));
        Eigen::Vector2d step = -grad;
        Eigen::LLT<Eigen::Matrix2d> llt(H);
        if (llt.info() == Eigen::Success) step = llt.solve(-grad);
        double lam = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls, lam *= 0.5) {
            const double fn = f(x + lam * step(0), y + lam * step(1));
            if (fn < fx) {
                x += lam * step(0);
                y += lam * step(1);
                fx = fn;
                moved = true;
                break;
            }
        }
        if (!moved || lam * step.norm() < 1e-15) break;
    }
    auto wrap = [L](double s) {
        double m = std::fmod(s, L);
        return m < 0 ? m + L : m;
    };
    return {std::sqrt(fx), wrap(x), wrap(y)};
}

Vec3 evolve3(const SpaceCurve3& curve, double t, double s) {
    return 0.5 * (curve.alpha.eval(s + t) + curve.alpha.eval(s - t));
}

double regularity_margin(const SpaceCurve3& curve) { return 0.5 * antipodal_margin(curve).margin; }

SpeedMin min_speed_search(const SpaceCurve3& curve, double t_max, int ns) {
    if (ns < 8 || !(t_max >= 0.0)) throw ValidationError("min_speed_search: bad grid");
    const Surface surf(curve.initial_data());
    const double L = curve.period();
    // Lattice t_i = i h, s_j = 2 j h with h = L / (2 ns): s +- t fall on a tangent table of 2 ns samples.
    const int m = 2 * ns;
    const double h = L / m;
    const int nt = static_cast<int>(std::floor(t_max / h)) + 1;
    const PeriodicFunction d1 = curve.alpha.derivative();
    std::vector<Vec3> T(m);
    kernels::parallel_for(m, [&](int k) { T[k] = d1.eval(h * k); });
    std::vector<double> best_v(nt);
    std::vector<int> best_j(nt);
    kernels::parallel_for(nt, [&](int i) {
        best_v[i] = std::numeric_limits<double>::infinity();
        for (int j = 0; j < ns; ++j) {
            const double v = 0.5 * (T[(2 * j + i) % m] + T[((2 * j - i) % m + m) % m]).norm();
            if (v < best_v[i]) {
                best_v[i] = v;
                best_j[i] = j;
            }
        }
    });
    const int bi = static_cast<int>(std::min_element(best_v.begin(), best_v.end()) - best_v.begin());
    double t = h * bi, s = 2.0 * h * best_j[bi];
    double fbest = best_v[bi];
    const double ht = h, hs = 2.0 * h;
    // Squared speed is smooth at a zero, so the line searches converge there too.
    fbest *= fbest;
    for (int round = 0; round < 200; ++round) {
        const double f0 = fbest;
        const auto [tn, ft] = minimize_1d([&](double x) { return surf.gamma_s(x, s).squaredNorm(); },
                                          std::max(0.0, t - 2 * ht), std::min(t_max, t + 2 * ht));
        if (ft < fbest) {
            fbest = ft;
            t = tn;
        }
        const auto [sn, fs] = minimize_1d([&](double x) { return surf.gamma_s(t, x).squaredNorm(); }, s - 2 * hs,
                                          s + 2 * hs);
        if (fs < fbest) {
            fbest = fs;
            s = sn;
        }
        if (f0 - fbest <= 1e-16 * f0) break;
    }
    return {std::sqrt(fbest), t, std::fmod(s + 10.0 * L, L)};
}

}  // namespace ws
