#include "generators.hpp"

#include "ws/errors.hpp"
#include "ws/r3.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace ws;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("circle in R^3 has zero margin and collapses at pi/2", "[r3]") {
    const SpaceCurve3 c = circle3();
    REQUIRE(c.arclength_defect() < 1e-14);
    REQUIRE(antipodal_margin(c).margin < 1e-12);
    for (double s : gen::uniforms(41, 10, 0.0, 2 * kPi)) {
        REQUIRE(evolve3(c, kPi / 2, s).norm() < 1e-12);
        REQUIRE(evolve3(c, 0.4, s).norm() == Approx(std::cos(0.4)).margin(1e-12));
    }
    const SpeedMin m = min_speed_search(c, 2 * kPi, 128);
    REQUIRE(m.min_speed < 1e-9);
    REQUIRE(std::abs(std::remainder(m.t, kPi) - kPi / 2) < 1e-6);
}

TEST_CASE("evolution at rest is the average of translates", "[r3]") {
    const SpaceCurve3 k = torus_knot();
    REQUIRE(k.arclength_defect() < 1e-8);
    for (double t : gen::uniforms(42, 4, 0.0, 5.0))
        for (double s : gen::uniforms(43, 4, 0.0, k.period()))
            REQUIRE((evolve3(k, t, s) - 0.5 * (k.alpha.eval(s + t) + k.alpha.eval(s - t))).norm() < 1e-12);
}

TEST_CASE("smoothed regular tetrahedron", "[r3]") {
    const TetraCurve tc = build_tetra_curve(regular_tetra_spec());
    REQUIRE(tc.curve.arclength_defect() < 1e-8);
    for (const CornerCheck& c : tc.corners) {
        REQUIRE(c.planarity < 1e-12);
        REQUIRE(c.min_increment > 0.0);
        REQUIRE(c.turn < kPi);
    }
    // Four unit edges shortened by the corners: the length lies below 4.
    REQUIRE(tc.curve.period() < 4.0);
    REQUIRE(tc.curve.period() > 3.5);
    // Closed quadrilaterals always carry an antipodal tangent pair: the margin vanishes.
    const MarginResult m = antipodal_margin(tc.curve);
    REQUIRE(m.margin < 1e-8);
    const SpeedMin sm = min_speed_search(tc.curve, 10 * tc.curve.period());
    REQUIRE(std::abs(sm.min_speed - 0.5 * m.margin) < 1e-6);
}

TEST_CASE("tangent wave has a positive margin and min speed half of it", "[r3]") {
    const SpaceCurve3 c = tangent_wave();
    REQUIRE(c.arclength_defect() < 1e-10);
    const MarginResult m = antipodal_margin(c);
    REQUIRE(m.margin > 0.1);
    REQUIRE(regularity_margin(c) == Approx(0.5 * m.margin).margin(1e-12));
    const SpeedMin sm = min_speed_search(c, 10 * c.period());
    REQUIRE(sm.min_speed == Approx(0.5 * m.margin).margin(1e-6));
    // The reported location attains the minimum: gamma_s = (alpha'(s + t) + alpha'(s - t)) / 2.
    const Vec3 gs = 0.5 * (c.alpha.eval(sm.s + sm.t, 1) + c.alpha.eval(sm.s - sm.t, 1));
    REQUIRE(gs.norm() == Approx(sm.min_speed).margin(1e-12));
}

TEST_CASE("margin is a lower bound for sampled tangent sums", "[r3][property]") {
    for (const SpaceCurve3& c : {tangent_wave(0.2, 0.8), tangent_wave(0.1, 0.5), tangent_wave(-0.25, 0.9)}) {
        const double m = antipodal_margin(c).margin;
        for (std::uint64_t seed = 0; seed < 3; ++seed)
            for (double s1 : gen::uniforms(seed, 30, 0.0, c.period()))
                for (double s2 : gen::uniforms(seed + 7, 30, 0.0, c.period()))
                    REQUIRE((c.alpha.eval(s1, 1) + c.alpha.eval(s2, 1)).norm() >= m - 1e-12);
    }
}

TEST_CASE("tetra construction rejects bad input", "[r3]") {
    TetraSmoothingSpec flat = regular_tetra_spec();
    flat.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)};
    REQUIRE_THROWS_AS(build_tetra_curve(flat), ValidationError);
    TetraSmoothingSpec sharp = regular_tetra_spec();
    sharp.radius = 0.0;
    REQUIRE_THROWS_AS(build_tetra_curve(sharp), ValidationError);
    TetraSmoothingSpec wide = regular_tetra_spec();
    wide.radius = 0.5;
    REQUIRE_THROWS_AS(build_tetra_curve(wide), ValidationError);
    REQUIRE_THROWS_AS(torus_knot(2, 4), ValidationError);
    REQUIRE_THROWS_AS(tangent_wave(0.0, 0.5), ValidationError);
}
