#include "generators.hpp"

#include "ws/errors.hpp"
#include "ws/kernels.hpp"
#include "ws/presets.hpp"
#include "ws/singularity.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace ws;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInfinity = 1e300;

double periodic_distance(double a, double b, double L) { return std::abs(std::remainder(a - b, L)); }

// Brute-force first zero of wrap(psi(s + t) - psitilde(s - t)) over a column grid with bisection;
// an upper bound for the true first singular time that converges as the grid is refined.
double brute_force_t0(const NullPair& p, int ns, int nt) {
    const double L = p.period();
    auto gap = [&](double t, double s) { return wrap_angle(p.psi.eval1(s + t) - p.psitilde.eval1(s - t)); };
    double best = kInfinity;
    for (int j = 0; j < ns; ++j) {
        const double s = L * j / ns;
        double t_prev = 0.0, g_prev = gap(0.0, s);
        for (int i = 1; i <= nt; ++i) {
            const double t = 0.5 * L * i / nt;
            if (t_prev >= best) break;
            const double g = gap(t, s);
            if (g == 0.0 || (g * g_prev < 0.0 && std::abs(g) < kPi / 2 && std::abs(g_prev) < kPi / 2)) {
                double lo = t_prev, hi = t;
                for (int k = 0; k < 60; ++k) {
                    const double mid = 0.5 * (lo + hi);
                    (gap(mid, s) * g_prev <= 0.0 ? hi : lo) = mid;
                }
                best = std::min(best, hi);
                break;
            }
            t_prev = t;
            g_prev = g;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("circle collapses at pi/2", "[singularity]") {
    const InitialData c = make_preset("circle");
    const auto evs = first_singularities(c);
    REQUIRE(evs.size() == 1);
    REQUIRE(evs[0].t0 == Approx(kPi / 2).margin(1e-10));
    REQUIRE(evs[0].kind == SingularKind::shrink_to_point);
    REQUIRE(evs[0].position.norm() < 1e-12);
    REQUIRE(classify(c, evs[0]) == SingularKind::shrink_to_point);
}

TEST_CASE("rotation preset events", "[singularity]") {
    const Surface surf(make_preset("rotation-λ3-1"));
    const auto s0 = singular_set_at_time(surf, 0.0);
    REQUIRE(s0.size() == 4);
    for (size_t k = 0; k < 4; ++k) REQUIRE(periodic_distance(s0[k], k * kPi / 2, 2 * kPi) < 1e-9);
    for (double t : {0.0, 0.3, 1.1}) {
        for (double s : singular_set_at_time(surf, t)) {
            const SingularEvent e = make_event(surf, t, s);
            REQUIRE(e.residual < 1e-9);
            REQUIRE(e.zeta == Approx(-1.0).margin(1e-9));
            REQUIRE(e.eta == Approx(3.0).margin(1e-9));
            REQUIRE(e.kind == SingularKind::ordinary_cusp);
        }
    }
    const SingularEvent e = make_event(surf, 0.0, s0[0]);
    const LocalModel m = local_model(surf, e);
    REQUIRE(m.p == Approx(-2.0).margin(1e-9));
    REQUIRE(m.q == Approx(1.0).margin(1e-9));
    REQUIRE(m.k0 == Approx(-1.5).margin(1e-9));
    REQUIRE(m.motion == MotionKind::rotation);
    REQUIRE(m.rotation_rate == Approx(-0.5).margin(1e-9));
}

TEST_CASE("rotation cusps propagate along S(t) = s0 + t/2", "[singularity]") {
    const Surface surf(make_preset("rotation-λ3-1"));
    for (double s0 : singular_set_at_time(surf, 0.0)) {
        const SingularEvent e = make_event(surf, 0.0, s0);
        const CurveTrace tr = propagation_curve(surf, e, 1.0, 0.01);
        REQUIRE(tr.complete);
        REQUIRE(tr.max_null_deviation < 1e-6);
        REQUIRE(tr.max_residual < 1e-9);
        for (size_t k = 0; k < tr.param.size(); ++k)
            REQUIRE(std::abs(tr.value[k] - (s0 + tr.param[k] / 2)) < 1e-8);
    }
}

TEST_CASE("event polishing from a nearby guess", "[singularity]") {
    const Surface surf(make_preset("rotation-λ3-1"));
    const SingularEvent e = locate_event(surf, 0.01, 0.02);
    REQUIRE(e.residual < 1e-9);
    REQUIRE(e.kind == SingularKind::ordinary_cusp);
    REQUIRE(std::abs(e.s0 - (e.t0 / 2)) < 1e-8);
}

TEST_CASE("swallowtail degenerate point", "[singularity]") {
    const Surface surf(make_preset("swallowtail"));
    const SingularEvent e = make_event(surf, 0.0, 0.0);
    REQUIRE(e.residual < 1e-12);
    REQUIRE(e.kind == SingularKind::degenerate_43);
    const LocalModel m = local_model(surf, e);
    REQUIRE(m.p == Approx(0.0).margin(1e-9));
    REQUIRE(m.q == Approx(1.0).margin(1e-9));
    REQUIRE(m.u3 == Approx(-2.0).margin(1e-9));
    REQUIRE(m.motion == MotionKind::self_similar);
    const FormationTrace f = formation_curve(surf, e, 0.2, 1e-3);
    REQUIRE(f.t_second == Approx(2.0).margin(1e-3));
    REQUIRE(f.t_second_numeric == Approx(2.0).margin(1e-3));
    REQUIRE(f.future_directed);
    REQUIRE(f.curve.max_null_deviation < 1e-6);
}

TEST_CASE("swallowtail splits into two cusps with T(s) = s^2", "[singularity]") {
    const Surface surf(make_preset("swallowtail"));
    std::vector<double> s2, ts;
    for (double t : {0.005, 0.01, 0.02, 0.03, 0.04, 0.05}) {
        std::vector<double> near;
        for (double s : singular_set_at_time(surf, t))
            if (periodic_distance(s, 0.0, 2 * kPi) < 0.5) near.push_back(std::remainder(s, 2 * kPi));
        REQUIRE(near.size() == 2);
        REQUIRE(near[0] * near[1] < 0.0);
        for (double s : near) {
            REQUIRE(make_event(surf, t, s).kind == SingularKind::ordinary_cusp);
            s2.push_back(s * s);
            ts.push_back(t);
        }
    }
    // Least-squares t = c s^2.
    double num = 0.0, den = 0.0;
    for (size_t k = 0; k < ts.size(); ++k) {
        num += ts[k] * s2[k];
        den += s2[k] * s2[k];
    }
    REQUIRE(num / den == Approx(1.0).epsilon(0.05));
}

TEST_CASE("self-similar residual halves per scale doubling", "[singularity]") {
    const Surface surf(make_preset("swallowtail"));
    const SingularEvent e = make_event(surf, 0.0, 0.0);
    const auto r = self_similar_residual(surf, e, {4, 8, 16, 32, 64});
    for (size_t k = 1; k < r.size(); ++k) REQUIRE(r[k] / r[k - 1] == Approx(0.5).epsilon(0.3));
    REQUIRE_THROWS_AS(self_similar_residual(Surface(make_preset("rotation-λ3-1")),
                                            make_event(Surface(make_preset("rotation-λ3-1")), 0.0, 0.0), {4}),
                      ValidationError);
}

TEST_CASE("first singularity on random data agrees with a brute-force scan", "[singularity][property]") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        INFO("seed " << seed);
        const InitialData d = random_initial_data(seed, 3, 0.5);
        const auto evs = first_singularities(d);
        const SingularEvent& e = evs.front();
        REQUIRE(e.t0 > 0.0);
        REQUIRE(e.t0 <= d.period() / 2);
        for (const auto& ev : evs) {
            REQUIRE(ev.residual <= 1e-9);
            REQUIRE(std::abs(ev.t0 - e.t0) <= 1e-9);
            REQUIRE(Surface(d).gamma_s(ev.t0, ev.s0).norm() < 1e-8);
        }
        const double brute = brute_force_t0(to_null_pair(d), 256, 2000);
        REQUIRE(brute >= e.t0 - 1e-9);
        REQUIRE(brute - e.t0 < 1e-3);
    }
}

TEST_CASE("classification is consistent with the null-angle derivatives", "[singularity][property]") {
    for (std::uint64_t seed = 10; seed < 16; ++seed) {
        const InitialData d = random_initial_data(seed, 4, 0.6);
        const Surface surf(d);
        const SingularEvent e = first_singularity(d);
        REQUIRE(classify(surf, e) == e.kind);
        if (e.kind == SingularKind::ordinary_cusp) REQUIRE_FALSE(nearly_equal(e.zeta, e.eta));
        if (e.kind == SingularKind::degenerate_43) {
            REQUIRE(nearly_equal(e.zeta, e.eta));
            REQUIRE_FALSE(nearly_equal(e.zeta_prime, e.eta_prime));
        }
    }
}

TEST_CASE("singularity operations check their inputs", "[singularity]") {
    const Surface circle(make_preset("circle"));
    REQUIRE_THROWS_AS(classify(circle, make_event(circle, 0.3, 0.0)), ValidationError);
    const Surface rot(make_preset("rotation-λ3-1"));
    REQUIRE_THROWS_AS(formation_curve(rot, make_event(rot, 0.0, 0.0), 0.1, 1e-3), ValidationError);
    REQUIRE_THROWS_AS(propagation_curve(rot, make_event(rot, 0.0, 0.0), 0.1, 0.0), ValidationError);
    REQUIRE_THROWS_AS(first_singularities(make_preset("torus-knot")), ValidationError);
}

TEST_CASE("nearly_equal is a relative comparison", "[singularity]") {
    REQUIRE(nearly_equal(1.0, 1.0 + 1e-12));
    REQUIRE_FALSE(nearly_equal(1.0, 1.001));
    REQUIRE(nearly_equal(0.0, 1e-14));
}
