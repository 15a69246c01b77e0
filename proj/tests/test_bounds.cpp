#include "generators.hpp"

#include "ws/bounds.hpp"
#include "ws/errors.hpp"
#include "ws/presets.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace ws;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Straight segment moving normally at constant speed v: a = (cos psi, sin psi) with psi = asin v,
// psitilde = pi - asin v, so beta = (0, v) and alpha' = (sqrt(1 - v^2), 0).
OpenArc moving_segment(double v, double len) {
    const double th = std::asin(v);
    return OpenArc::from_null_angles([th](double, int m) { return m == 0 ? th : 0.0; },
                                     [th](double, int m) { return m == 0 ? kPi - th : 0.0; }, 0.0, len);
}

}  // namespace

TEST_CASE("timelikeness index of a uniformly moving segment", "[bounds]") {
    for (double v : {0.0, 0.3, 0.6}) {
        const OpenArc arc = moving_segment(v, 2.0);
        validate_arc(arc);
        REQUIRE(arc_length(arc) == Approx(2.0 * std::sqrt(1 - v * v)).epsilon(1e-10));
        REQUIRE(gauge_length(arc) == Approx(2.0).epsilon(1e-10));
        REQUIRE(timelikeness_index(arc) == Approx(std::sqrt(1 - v * v)).epsilon(1e-10));
        REQUIRE(curvature_load(arc) == Approx(0.0).margin(1e-12));
        const Certificate c = existence_guarantee(arc);
        REQUIRE(c.issued);
        REQUIRE(c.floor == Approx(std::sqrt(1 - v * v) / 4).epsilon(1e-10));
        const VerificationReport r = verify_guarantee(arc, c, 64);
        REQUIRE(r.passed);
        REQUIRE(r.min_speed == Approx(std::sqrt(1 - v * v)).epsilon(1e-10));
    }
}

TEST_CASE("curvature load of a circle arc at rest", "[bounds]") {
    const OpenArc arc = OpenArc::restrict(make_preset("circle"), 0.0, 0.5);
    REQUIRE(arc_length(arc) == Approx(0.5).epsilon(1e-10));
    REQUIRE(timelikeness_index(arc) == Approx(1.0).epsilon(1e-10));
    REQUIRE(curvature_load(arc) == Approx(1.0).epsilon(1e-9));
    // 1 > 3 * 0.5 fails; a sub-arc of length 0.3 has total curvature 0.3 < 1/3.
    REQUIRE_FALSE(small_total_curvature(arc));
    REQUIRE(small_total_curvature(OpenArc::restrict(make_preset("circle"), 0.0, 0.3)));
}

TEST_CASE("circle as an arc gets no certificate", "[bounds]") {
    const Certificate c = existence_guarantee(OpenArc::restrict(make_preset("circle"), 0.0, 2 * kPi));
    REQUIRE_FALSE(c.issued);
    REQUIRE(c.load == Approx(4 * kPi).epsilon(1e-9));
}

TEST_CASE("certificates on random shallow arcs are sound", "[bounds][property]") {
    int issued = 0;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        INFO("seed " << seed);
        const OpenArc arc = gen::shallow_arc(seed).arc();
        validate_arc(arc);
        const Certificate c = existence_guarantee(arc);
        REQUIRE(c.issued == (c.j > 1.5 * c.load));
        REQUIRE(c.T == Approx(c.length / c.j));
        if (!c.issued) continue;
        ++issued;
        REQUIRE(c.floor > 0.0);
        const VerificationReport r = verify_guarantee(arc, c, 256);
        REQUIRE(r.passed);
        REQUIRE(r.min_speed >= c.floor - 1e-6);
    }
    REQUIRE(issued >= 6);
}

TEST_CASE("corollary ratio of the collapsing circle is 2l/cos t", "[bounds]") {
    const InitialData c = make_preset("circle");
    for (double t : {0.0, 0.5, 1.0})
        for (double l : {0.2, 0.5}) REQUIRE(corollary_ratio(c, t, l, 16) == Approx(2 * l / std::cos(t)).epsilon(1e-8));
}

TEST_CASE("arc validation", "[bounds]") {
    REQUIRE_THROWS_AS(existence_guarantee(moving_segment(1.0, 1.0)), ValidationError);
    REQUIRE_THROWS_AS(small_total_curvature(moving_segment(0.5, 1.0)), ValidationError);
    REQUIRE_THROWS_AS(OpenArc::restrict(make_preset("circle"), 1.0, 0.5), ValidationError);
}
