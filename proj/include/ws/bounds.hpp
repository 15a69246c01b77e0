#pragma once

#include "ws/curve_core.hpp"

#include <functional>
#include <optional>

namespace ws {

// Pointwise data of an arc at parameter sigma: alpha', alpha'', beta, beta'.
struct ArcJet {
    Vec2 d1 = Vec2::Zero(), d2 = Vec2::Zero();
    Vec2 b0 = Vec2::Zero(), b1 = Vec2::Zero();
};

// Open arc (alpha*, beta*) on [p, q] in an arbitrary parametrization, with beta* normal and |beta*| < 1.
struct OpenArc {
    double p = 0.0, q = 1.0;
    std::function<ArcJet(double)> jet;

    // Gauge-form arc from null angles: a = (cos psi, sin psi), b = -(cos psitilde, sin psitilde),
    // alpha' = (a + b)/2, beta = (a - b)/2. The callbacks return the m-th derivative, m <= 2.
    static OpenArc from_null_angles(std::function<double(double, int)> psi, std::function<double(double, int)> psitilde,
                                    double p, double q);
    // Restriction of closed orthogonal-gauge data to [p, q].
    static OpenArc restrict(const InitialData& data, double p, double q);

    // Null fields in this parametrization: a = beta + sqrt(1 - |beta|^2) U, b = -beta + sqrt(1 - |beta|^2) U.
    Vec2 a(double sigma) const;
    Vec2 b(double sigma) const;
    // d/dsigma of a and b.
    Vec2 a_sigma(double sigma) const;
    Vec2 b_sigma(double sigma) const;
};

// Checks beta* normal to alpha*' (<= 1e-9) and |beta*| < 1 on a sample grid; throws ValidationError.
void validate_arc(const OpenArc& arc, int grid = 1024);

double arc_length(const OpenArc& arc);
// Proper-time length integral |alpha*'| / sqrt(1 - |beta*|^2): the orthogonal-gauge parameter length.
double gauge_length(const OpenArc& arc);
// j = L(alpha*) / gauge_length.
double timelikeness_index(const OpenArc& arc);
// integral of |a_sigma| + |b_sigma|; equals integral |zeta| + |eta| ds in gauge.
double curvature_load(const OpenArc& arc);

struct Certificate {
    bool issued = false;
    double j = 0.0;
    double load = 0.0;
    double length = 0.0;        // L(alpha*)
    double T = 0.0;             // L / j, the gauge length of the arc
    double floor = 0.0;         // j/4 - (1/4) integral (|zeta| + |eta|)(|beta|/2 + 1) ds
    double omega_p = 0.0;       // Omega = {t >= 0, p + t <= s <= q - t} in gauge coordinates
    double omega_q = 0.0;
};

// Issued iff j > (3/2) load.
Certificate existence_guarantee(const OpenArc& arc);

struct VerificationReport {
    double min_speed = 0.0;     // min over Omega of |gamma_s|
    double floor = 0.0;
    double t_at_min = 0.0, s_at_min = 0.0;  // gauge coordinates
    bool passed = false;        // min_speed >= floor - 1e-6
    int grid = 0;
};
// |gamma_s(t, s)| = |a(u) + b(v)| / 2 with u = s + t, v = s - t ranges over all pairs u >= v of the arc,
// so Omega is covered by the lower triangle of a (grid x grid) null-coordinate lattice plus local refinement.
VerificationReport verify_guarantee(const OpenArc& arc, const Certificate& cert, int grid = 1024);

// For beta* = 0 the hypothesis j > (3/2) load reads 1 > 3 int kappa (a = b = U, so load = 2 int kappa):
// total curvature below 1/3. Throws ValidationError when beta* is not identically zero.
bool small_total_curvature(const OpenArc& arc);

// sup over sub-arcs [s, s + l] (gauge parameter) of load / j for the slice of a closed surface at time t.
double corollary_ratio(const InitialData& data, double t, double l, int starts = 64);

}  // namespace ws
