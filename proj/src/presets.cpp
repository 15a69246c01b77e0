#include "ws/presets.hpp"

#include "ws/errors.hpp"
#include "ws/gauge.hpp"
#include "ws/r3.hpp"

#include <cmath>
#include <numbers>

namespace ws {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

InitialData circle() {
    PeriodicFunction a(kTwoPi, 2, 1), b(kTwoPi, 2, 1);
    a.cos(0, 1) = 1.0;
    a.sin(1, 1) = 1.0;
    return {a, b, false};
}

// Rotation family with lambda1 = 3, lambda2 = 1: a(u) = (sin u, cos u), b(v) = (sin 3v, -cos 3v).
InitialData rotation31() {
    PeriodicFunction a(kTwoPi, 2, 3), b(kTwoPi, 2, 3);
    a.cos(0, 0) = 2.0 / 3.0;
    a.cos(0, 3) = -1.0 / 6.0;
    a.cos(0, 1) = -0.5;
    a.sin(1, 3) = -1.0 / 6.0;
    a.sin(1, 1) = 0.5;
    b.sin(0, 1) = 0.5;
    b.sin(0, 3) = -0.5;
    b.cos(1, 1) = 0.5;
    b.cos(1, 3) = 0.5;
    return {a, b, true};
}

// beta = cos s sqrt(1 + sin^2 s) (-sin s, cos s), the smooth branch of sqrt(1 - sin^4 s).
PeriodicFunction swallowtail_beta() {
    auto f = [](double s) {
        const double m = std::cos(s) * std::sqrt(1.0 + std::sin(s) * std::sin(s));
        return Vec3(-m * std::sin(s), m * std::cos(s), 0.0);
    };
    return fit_periodic(kTwoPi, 2, f, 1e-16, 256);
}

// alpha = (sin^3 s / 3, 2/3 - cos s + cos^3 s / 3), written in harmonics.
InitialData swallowtail() {
    PeriodicFunction beta = swallowtail_beta();
    PeriodicFunction a(kTwoPi, 2, beta.modes());
    a.sin(0, 1) = 0.25;
    a.sin(0, 3) = -1.0 / 12.0;
    a.cos(1, 0) = 2.0 / 3.0;
    a.cos(1, 1) = -1.0 + 0.25;
    a.cos(1, 3) = 1.0 / 12.0;
    return {a, beta, true};
}

// Printed form alpha_2 = 2/3 - (2/3) cos s + (1/3) sin^2 s cos s; fails the gauge constraint.
InitialData swallowtail_as_printed() {
    InitialData d = swallowtail();
    // sin^2 s cos s = (cos s - cos 3s) / 4
    d.alpha.cos(1, 1) = -2.0 / 3.0 + 1.0 / 12.0;
    d.alpha.cos(1, 3) = -1.0 / 12.0;
    return d;
}

// Figure eight (sin sigma, sin 2 sigma / 2) with normal speed 1/4, put into orthogonal gauge.
InitialData zero_index() {
    PeriodicFunction c(kTwoPi, 2, 2);
    c.sin(0, 1) = 1.0;
    c.sin(1, 2) = 0.5;
    auto normal = [](double s) {
        const Vec2 d(std::cos(s), std::cos(2.0 * s));
        const Vec2 n = perp(d).normalized();
        return Vec3(0.25 * n.x(), 0.25 * n.y(), 0.0);
    };
    const PeriodicFunction bs = fit_periodic(kTwoPi, 2, normal, 1e-16, 1024);
    // Refit the curve with the same resolution so the normality check sees matching data.
    return orthogonal_gauge_initial_data({c.resized(bs.modes()), bs});
}

}  // namespace

std::vector<PresetInfo> presets() {
    return {
        {"circle", 2, "unit circle at rest; shrinks to a point at t = pi/2"},
        {"rotation-λ3-1", 2, "rotation family lambda1 = 3, lambda2 = 1; singular at t = 0 (four cusps)"},
        {"swallowtail", 2,
         "degenerate point at the origin at t = 0; alpha_2 = 2/3 - cos s + cos^3 s / 3 (corrected from the "
         "printed form so that |alpha'|^2 + |beta|^2 = 1)"},
        {"swallowtail-as-printed", 2, "swallowtail with the printed alpha_2; invalid, kept for comparison"},
        {"zero-index", 2, "figure eight with normal speed 1/4, rotation index 0"},
        {"tetra", 3, "smoothed regular tetrahedron at rest; its antipodal margin vanishes"},
        {"tangent-wave", 3, "curve at rest with tangent latitude 0.2 + 0.8 sin 3 theta; positive antipodal margin"},
        {"circle3", 3, "unit circle in a plane of R^3; singular at t = pi/2"},
        {"torus-knot", 3, "(3,2) torus knot at rest, arclength parametrized"},
    };
}

InitialData make_preset(const std::string& name) {
    if (name == "circle") return circle();
    if (name == "rotation-λ3-1" || name == "rotation-l3-1") return rotation31();
    if (name == "swallowtail") return swallowtail();
    if (name == "swallowtail-as-printed") return swallowtail_as_printed();
    if (name == "zero-index") return zero_index();
    if (name == "tetra") return build_tetra_curve(regular_tetra_spec()).curve.initial_data();
    if (name == "tangent-wave") return tangent_wave().initial_data();
    if (name == "circle3") return circle3().initial_data();
    if (name == "torus-knot") return torus_knot(3, 2).initial_data();
    throw ValidationError("unknown preset: " + name);
}

}  // namespace ws
