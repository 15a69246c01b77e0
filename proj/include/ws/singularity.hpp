#pragma once

#include "ws/evolution.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ws {

enum class SingularKind { ordinary_cusp, tangent_reversal, degenerate_43, shrink_to_point, higher_order };
enum class MotionKind { rotation, translation, self_similar, unclassified };

std::string to_string(SingularKind k);
std::string to_string(MotionKind k);

struct SingularEvent {
    double t0 = 0.0, s0 = 0.0;
    double u0 = 0.0, v0 = 0.0;
    double zeta = 0.0, eta = 0.0;
    double zeta_prime = 0.0, eta_prime = 0.0;
    Vec3 position = Vec3::Zero();
    double residual = 0.0;  // |a(u0) + b(v0)|
    SingularKind kind = SingularKind::higher_order;
};

struct LocalModel {
    Vec2 e = Vec2::Zero();
    double p = 0.0, q = 0.0, u3 = 0.0;
    double k0 = 0.0;          // NaN when p = 0
    MotionKind motion = MotionKind::unclassified;
    double rotation_rate = 0.0;     // q / p
    double center_offset = 0.0;     // p / (p^2 - q^2), along e_perp
};

struct SearchOptions {
    int grid = 2048;          // strip columns; rows cover t in (0, L/2]
    int max_refinements = 2;  // grid doublings before giving up
    double tie_tol = 1e-9;
};

constexpr double kEventTol = 1e-9;
// Relative gate for zeta = eta style comparisons.
bool nearly_equal(double x, double y);

// Build an event at (t0, s0): null-angle derivatives, position, residual and kind.
SingularEvent make_event(const Surface& surf, double t0, double s0);
// Newton/bracket polish of a singular point near (t, s).
SingularEvent locate_event(const Surface& surf, double t, double s);

std::vector<SingularEvent> first_singularities(const InitialData& data, const SearchOptions& opt = {});
SingularEvent first_singularity(const InitialData& data, const SearchOptions& opt = {});

std::vector<double> singular_set_at_time(const Surface& surf, double t, int grid = 4096);
std::vector<double> singular_set_at_time(const InitialData& data, double t, int grid = 4096);

SingularKind classify(const Surface& surf, const SingularEvent& ev);
SingularKind classify(const InitialData& data, const SingularEvent& ev);

LocalModel local_model(const Surface& surf, const SingularEvent& ev);
LocalModel local_model(const InitialData& data, const SingularEvent& ev);

struct CurveTrace {
    std::vector<double> param;   // t for propagation, s for formation
    std::vector<double> value;   // S(t) or T(s)
    std::vector<double> residual;
    std::vector<double> speed;   // |d/dparam gamma| along the curve, 1 for a null curve
    double max_residual = 0.0;
    double max_null_deviation = 0.0;
    bool complete = true;
    std::string stop_reason;
};

// Integrates S' = -<gamma_ss, gamma_ts> / |gamma_ss|^2 from (t0, s0) to t0 + t_span.
CurveTrace propagation_curve(const Surface& surf, const SingularEvent& ev, double t_span, double step);

struct FormationTrace {
    CurveTrace curve;               // T(s) on [s0 - s_span, s0 + s_span], increasing s
    double t_second = 0.0;          // -<alpha''', beta'> / |beta'|^2 at the event
    double t_second_numeric = 0.0;  // from the integrated curve
    double t_first = 0.0;           // T'(s0)
    bool future_directed = false;
};
FormationTrace formation_curve(const Surface& surf, const SingularEvent& ev, double s_span, double step);

struct MonotonicityReport {
    double zeta_min = 0.0, zeta_max = 0.0, eta_min = 0.0, eta_max = 0.0;
    bool psi_monotone = false, psitilde_monotone = false;
    bool same_direction = false;  // both non-decreasing or both non-increasing
    int winding = 0;
    double psi_range_min = 0.0, psi_range_max = 0.0, psitilde_range_min = 0.0, psitilde_range_max = 0.0;
    bool extremal_collision = false;  // zero index: psi and psitilde + 2 pi k share interior values
};
MonotonicityReport monotonicity_diagnostics(const NullPair& pair, int grid = 8192);

// Deviation of gamma(t0 + t/n^2, s0 + s/n) - gamma(t0, s0) from the quartic self-similar model
// [q t s + u3 s^3/6] e_perp + [t - q^2 t s^2/2 - q u3 s^4/8] e over t in [0,1], s in [-1,1],
// measured in units of the model's quartic order (multiplied by n^4).
using SurfaceMap = std::function<Vec2(double t, double s)>;
std::vector<double> self_similar_residual(const Surface& surf, const SingularEvent& ev,
                                          const std::vector<int>& scales);
std::vector<double> self_similar_residual(const SurfaceMap& gamma, const LocalModel& model,
                                          const std::vector<int>& scales);

}  // namespace ws
