#pragma once

#include "ws/curve_core.hpp"

#include <array>

namespace ws {

// Closed curve in R^3 parametrized by arclength; period = length.
struct SpaceCurve3 {
    PeriodicFunction alpha;

    double period() const { return alpha.period(); }
    // Zero-velocity orthogonal-gauge data (alpha, 0).
    InitialData initial_data() const;
    // max ||alpha'| - 1| on a grid.
    double arclength_defect(int grid = 8192) const;
};

struct TetraSmoothingSpec {
    std::array<Vec3, 4> vertices;
    double radius = 0.1;   // distance from each vertex where its corner blend starts
    int samples = 16384;   // uniform arclength samples used for the spectral fit
    int modes = 4096;
};

struct CornerCheck {
    double planarity = 0.0;       // max distance of a corner from its plane (LP)
    double min_increment = 0.0;   // smallest tangent-angle increment along a corner, > 0 (AC)
    double turn = 0.0;            // total turning angle, < pi (AC)
};

struct TetraCurve {
    SpaceCurve3 curve;
    std::array<CornerCheck, 4> corners;
};

// Regular tetrahedron with unit edges centred at the origin.
TetraSmoothingSpec regular_tetra_spec(double radius_fraction = 0.1);
// Smooths the polyline P1 P2 P3 P4 P1: straight edges joined by planar corner blends whose tangent
// angle follows a degree-9 monotone smoothstep. Throws ValidationError for coplanar vertices,
// r <= 0 (tangent jump) or r >= half the shortest edge.
TetraCurve build_tetra_curve(const TetraSmoothingSpec& spec);

// Arclength reparametrization of a closed immersed curve.
SpaceCurve3 arclength_curve(const PeriodicFunction& c);
SpaceCurve3 circle3(double radius = 1.0);
// (p, q) torus knot on the torus with radii 2 and 1.
SpaceCurve3 torus_knot(int p = 3, int q = 2);

// Closed curve whose unit tangent sits at latitude c + A sin 3 theta over longitude theta. The
// latitudes at theta and theta + pi sum to 2c, so the tangent image misses its antipode.
SpaceCurve3 tangent_wave(double c = 0.2, double A = 0.8);

struct MarginResult {
    double margin = 0.0;
    double s1 = 0.0, s2 = 0.0;
};
// min over (s1, s2) of |alpha'(s1) + alpha'(s2)|: 512^2 grid, then Newton refinement.
MarginResult antipodal_margin(const SpaceCurve3& curve, int grid = 512);

Vec3 evolve3(const SpaceCurve3& curve, double t, double s);
double regularity_margin(const SpaceCurve3& curve);

struct SpeedMin {
    double min_speed = 0.0;
    double t = 0.0, s = 0.0;
};
// min of |gamma_s| over t in [0, t_max] and one period in s: lattice search with t step L/(2 ns)
// and s step L/ns, then coordinate-wise Brent refinement in (t, s).
SpeedMin min_speed_search(const SpaceCurve3& curve, double t_max, int ns = 512);

}  // namespace ws
