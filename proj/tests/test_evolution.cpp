#include "generators.hpp"

#include "ws/errors.hpp"
#include "ws/evolution.hpp"
#include "ws/presets.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace ws;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed form of the lambda1 = 3, lambda2 = 1 rotation solution from its null fields
// a(u) = (sin u, cos u), b(v) = (sin 3v, -cos 3v).
Vec2 rotation_closed_form(double t, double s) {
    const double u = s + t, v = s - t;
    return Vec2(2.0 / 3.0, 0.0) +
           0.5 * Vec2(-std::cos(u) - std::cos(3 * v) / 3.0, std::sin(u) - std::sin(3 * v) / 3.0);
}

}  // namespace

TEST_CASE("circle slices have radius |cos t|", "[evolution]") {
    const InitialData c = make_preset("circle");
    for (double t : {0.0, 0.3, 1.0, 1.5, 2.5, 4.0}) {
        const Slice sl = time_slice(c, t, 64);
        for (int j = 0; j < 64; ++j) {
            REQUIRE(sl.position[j].norm() == Approx(std::abs(std::cos(t))).margin(1e-12));
            REQUIRE(sl.speed[j] == Approx(std::abs(std::cos(t))).margin(1e-12));
        }
    }
}

TEST_CASE("rotation preset matches its closed form", "[evolution]") {
    const Surface surf(make_preset("rotation-λ3-1"));
    for (double t : gen::uniforms(11, 10, -3.0, 3.0))
        for (double s : gen::uniforms(12, 10, 0.0, 2.0 * kPi))
            REQUIRE((surf.position(t, s).head<2>() - rotation_closed_form(t, s)).norm() < 1e-12);
}

TEST_CASE("evolution solves the wave equation in orthogonal gauge", "[evolution][property]") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Surface surf(random_initial_data(seed, 3, 0.5));
        for (double t : gen::uniforms(seed + 100, 5, 0.0, 2.0))
            for (double s : gen::uniforms(seed + 200, 5, 0.0, surf.period())) {
                const Vec3 tt = surf.derivative(2, 0, t, s), ss = surf.derivative(0, 2, t, s);
                REQUIRE((tt - ss).norm() < 1e-9);
                const Vec3 gt = surf.gamma_t(t, s), gs = surf.gamma_s(t, s);
                REQUIRE(std::abs(gt.dot(gs)) < 1e-9);
                REQUIRE(std::abs(gt.squaredNorm() + gs.squaredNorm() - 1.0) < 1e-9);
                // Derivatives agree with centered differences of the position.
                const double h = 1e-5;
                const Vec3 fd = (surf.position(t + h, s) - surf.position(t - h, s)) / (2 * h);
                REQUIRE((fd - gt).norm() < 1e-8);
            }
    }
}

TEST_CASE("initial data are recovered at t = 0", "[evolution]") {
    const InitialData d = random_initial_data(3, 3, 0.5);
    const Surface surf(d);
    for (double s : gen::uniforms(13, 20, 0.0, d.period())) {
        REQUIRE((surf.position(0.0, s) - d.alpha.eval(s)).norm() < 1e-12);
        REQUIRE((surf.gamma_t(0.0, s) - d.beta.eval(s)).norm() < 1e-12);
        REQUIRE((evolve_point(d, 0.0, s) - d.alpha.eval(s)).norm() < 1e-12);
    }
}

TEST_CASE("time shift composes with evolution", "[evolution][property]") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const InitialData d = random_initial_data(seed, 3, 0.5);
        const double t0 = 0.4 + 0.2 * seed;
        const Surface a(d), b(shift_time(d, t0));
        for (double t : gen::uniforms(seed, 5, -1.0, 1.0))
            for (double s : gen::uniforms(seed + 1, 5, 0.0, d.period()))
                REQUIRE((a.position(t0 + t, s) - b.position(t, s)).norm() < 1e-11);
    }
}

TEST_CASE("gauge is preserved for every preset", "[evolution]") {
    for (const PresetInfo& p : presets()) {
        INFO(p.name);
        if (p.name == "swallowtail-as-printed") continue;
        const Surface surf(make_preset(p.name));
        std::vector<double> times;
        for (int i = 0; i <= 20; ++i) times.push_back(0.25 * i);
        const GaugeReport g = gauge_preservation(surf, times, 256);
        REQUIRE(g.orthogonality <= 1e-8);
        REQUIRE(g.normalization <= 1e-8);
    }
}

TEST_CASE("unit tangent", "[evolution]") {
    const InitialData c = make_preset("circle");
    const Vec3 T = tangent(c, 0.5, 0.0);
    REQUIRE((T - Vec3(0.0, 1.0, 0.0)).norm() < 1e-12);
    REQUIRE_THROWS_AS(tangent(c, kPi / 2, 0.3), NumericalError);
}

TEST_CASE("worldsheet export grid", "[evolution]") {
    const Surface surf(make_preset("circle"));
    const auto rows = worldsheet_export(surf, 0.0, 1.0, 5, 8);
    REQUIRE(rows.size() == 40);
    REQUIRE(rows.front().t == 0.0);
    REQUIRE(rows.back().t == 1.0);
    REQUIRE(rows[1].s == Approx(2.0 * kPi / 8));
    REQUIRE((rows[9].x - surf.position(0.25, 2.0 * kPi / 8)).norm() < 1e-15);
}
