#pragma once

#include "ws/periodic.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ws {

// Reduced data on a maximal cylinder in a vacuum background: second fundamental form
// components M0, N0 (P0 = -M0) and the conformal factor u0 with its time derivative v0.
struct ReducedBackgroundData {
    double period = 6.283185307179586;
    PeriodicFunction M0, N0, u0, v0;
};

void validate_reduced(const ReducedBackgroundData& data);

struct HypothesisReport {
    double a_lb = 0.0;            // min over xi of M0^2 - N0^2
    double xi_at_min = 0.0;
    bool plus_nonzero = false;    // M0 + N0 has no zero
    bool minus_nonzero = false;   // M0 - N0 has no zero
    bool holds = false;           // a_lb > 0
};
HypothesisReport hypothesis_check(const ReducedBackgroundData& data, int grid = 4096);

// Exact transports (M + N)(tau, xi) = (M0 + N0)(xi - tau), (M - N)(tau, xi) = (M0 - N0)(xi + tau).
std::pair<double, double> transport_MN(const ReducedBackgroundData& data, double tau, double xi);

struct CurvedState {
    double tau = 0.0;
    std::vector<double> u, u_tau;
    double w = 0.0, w_prime = 0.0;
    double w_second = 0.0;        // mean of the discrete acceleration
    double max_u = 0.0, min_u = 0.0, max_exp = 0.0;  // max e^{-2u}
};

struct CurvedOptions {
    double cfl = 0.5;
    double blow_up_threshold = 1e8;
    double output_interval = 0.01;
};

struct CurvedTrajectory {
    std::vector<CurvedState> states;
    double dtau = 0.0;
    double a_lb = 0.0;
    bool time_flipped = false;    // run reflected so that w'(0) <= 0
    bool blew_up = false;
    double blow_up_lo = 0.0, blow_up_hi = 0.0;  // bracket of the threshold crossing
};

// Kick-drift-kick leapfrog for u_tt = u_xixi - e^{-2u} (M^2 - N^2) with centered differences.
// Throws NumericalError on instability (energy growth of the free wave, or non-finite values).
CurvedTrajectory evolve_u(const ReducedBackgroundData& data, double tau_max, int n, const CurvedOptions& opt = {});

struct MonitorReport {
    bool applicable = false;      // a_lb > 0
    double max_wpp_excess = 0.0;  // max of w'' + a e^{-2w}, should be <= tol
    bool wpp_bound = false;
    bool wp_decreasing = false;
    bool energy_nondecreasing = false;  // (w')^2 - a e^{-2w}
    double linear_deviation = 0.0;      // max |w - w(0) - w'(0) tau|, for the free wave
    bool passed = false;
};
MonitorReport mean_monitor(const CurvedTrajectory& traj, double tol = 1e-3);

// Blow-up time of w'' = -a e^{-2w} from (w0, wp0) (time-reflected when wp0 > 0).
double blow_up_bound(double a_lb, double w0, double wp0);

}  // namespace ws
