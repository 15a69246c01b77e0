#include "ws/curved.hpp"

#include "ws/errors.hpp"
#include "ws/numeric.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace ws {

void validate_reduced(const ReducedBackgroundData& data) {
    for (const PeriodicFunction* f : {&data.M0, &data.N0, &data.u0, &data.v0}) {
        if (f->dim() != 1) throw ValidationError("reduced data: fields must be scalar");
        if (std::abs(f->period() - data.period) > 1e-12 * data.period)
            throw ValidationError("reduced data: fields must share the period");
        if (f->drift().norm() != 0.0) throw ValidationError("reduced data: fields must be periodic");
    }
}

HypothesisReport hypothesis_check(const ReducedBackgroundData& data, int grid) {
    validate_reduced(data);
    const double X = data.period;
    auto g = [&](double x) {
        const double m = data.M0.eval1(x), nn = data.N0.eval1(x);
        return m * m - nn * nn;
    };
    HypothesisReport r;
    int jmin = 0;
    double gmin = std::numeric_limits<double>::infinity();
    double pmin = gmin, pmax = -gmin, mmin = gmin, mmax = -gmin;
    for (int j = 0; j < grid; ++j) {
        const double x = X * j / grid;
        const double v = g(x);
        if (v < gmin) {
            gmin = v;
            jmin = j;
        }
        const double m = data.M0.eval1(x), nn = data.N0.eval1(x);
        pmin = std::min(pmin, m + nn);
        pmax = std::max(pmax, m + nn);
        mmin = std::min(mmin, m - nn);
        mmax = std::max(mmax, m - nn);
    }
    const auto [xm, fm] = minimize_1d(g, X * (jmin - 1) / grid, X * (jmin + 1) / grid);
    r.a_lb = std::min(gmin, fm);
    r.xi_at_min = fm < gmin ? xm : X * jmin / grid;
    r.plus_nonzero = pmin > 0.0 || pmax < 0.0;
    r.minus_nonzero = mmin > 0.0 || mmax < 0.0;
    r.holds = r.a_lb > 0.0;
    return r;
}

std::pair<double, double> transport_MN(const ReducedBackgroundData& data, double tau, double xi) {
    const double plus = data.M0.eval1(xi - tau) + data.N0.eval1(xi - tau);
    const double minus = data.M0.eval1(xi + tau) - data.N0.eval1(xi + tau);
    return {0.5 * (plus + minus), 0.5 * (plus - minus)};
}

namespace {

struct Stepper {
    const ReducedBackgroundData& data;
    int n;
    double dx;
    bool flip;

    // M^2 - N^2 = (M + N)(M - N); reflecting time swaps the two translates.
    double source(double tau, double xi) const {
        const double t = flip ? -tau : tau;
        const double plus = data.M0.eval1(xi - t) + data.N0.eval1(xi - t);
        const double minus = data.M0.eval1(xi + t) - data.N0.eval1(xi + t);
        return plus * minus;
    }

    void accel(const std::vector<double>& u, double tau, std::vector<double>& out) const {
        const double inv = 1.0 / (dx * dx);
        for (int j = 0; j < n; ++j) {
            const double um = u[(j + n - 1) % n], up = u[(j + 1) % n];
            out[j] = (up - 2.0 * u[j] + um) * inv - std::exp(-2.0 * u[j]) * source(tau, dx * j);
        }
    }

    void step(std::vector<double>& u, std::vector<double>& v, double tau, double h, std::vector<double>& acc) const {
        accel(u, tau, acc);
        for (int j = 0; j < n; ++j) v[j] += 0.5 * h * acc[j];
        for (int j = 0; j < n; ++j) u[j] += h * v[j];
        accel(u, tau + h, acc);
        for (int j = 0; j < n; ++j) v[j] += 0.5 * h * acc[j];
    }

    double energy(const std::vector<double>& u, const std::vector<double>& v) const {
        double e = 0.0;
        for (int j = 0; j < n; ++j) {
            const double ux = (u[(j + 1) % n] - u[j]) / dx;
            e += 0.5 * (v[j] * v[j] + ux * ux) * dx;
        }
        return e;
    }
};

double max_exp(const std::vector<double>& u) {
    return std::exp(-2.0 * *std::min_element(u.begin(), u.end()));
}

// Threshold crossing; a step that overflows e^{-2u} counts as crossing and is resolved by the bracket.
bool crossed(const std::vector<double>& u, const std::vector<double>& v, double threshold) {
    for (size_t j = 0; j < u.size(); ++j)
        if (!std::isfinite(u[j]) || !std::isfinite(v[j])) return true;
    return max_exp(u) > threshold;
}

CurvedState make_state(const Stepper& st, double tau, const std::vector<double>& u, const std::vector<double>& v,
                       std::vector<double>& acc) {
    CurvedState s;
    s.tau = tau;
    s.u = u;
    s.u_tau = v;
    const double n = static_cast<double>(u.size());
    for (size_t j = 0; j < u.size(); ++j) {
        s.w += u[j] / n;
        s.w_prime += v[j] / n;
    }
    st.accel(u, tau, acc);
    for (double a : acc) s.w_second += a / n;
    s.max_u = *std::max_element(u.begin(), u.end());
    s.min_u = *std::min_element(u.begin(), u.end());
    s.max_exp = max_exp(u);
    return s;
}

}  // namespace

CurvedTrajectory evolve_u(const ReducedBackgroundData& data, double tau_max, int n, const CurvedOptions& opt) {
    validate_reduced(data);
    if (n < 64) throw ValidationError("evolve_u: need n >= 64");
    if (!(opt.cfl > 0.0) || opt.cfl > 0.9) throw ValidationError("evolve_u: cfl must lie in (0, 0.9]");
    if (!(tau_max > 0.0)) throw ValidationError("evolve_u: tau_max must be positive");
    CurvedTrajectory tr;
    tr.a_lb = hypothesis_check(data).a_lb;
    const double dx = data.period / n;
    std::vector<double> u(n), v(n), acc(n);
    double wp0 = 0.0;
    for (int j = 0; j < n; ++j) {
        u[j] = data.u0.eval1(dx * j);
        v[j] = data.v0.eval1(dx * j);
        wp0 += v[j] / n;
    }
    tr.time_flipped = wp0 > 0.0;
    if (tr.time_flipped)
        for (double& x : v) x = -x;
    const Stepper st{data, n, dx, tr.time_flipped};

    bool free_wave = true;
    for (int j = 0; j < n && free_wave; ++j)
        for (double tau : {0.0, 0.25 * data.period, 0.5 * data.period})
            if (st.source(tau, dx * j) != 0.0) free_wave = false;
    const double e0 = st.energy(u, v);

    const int per_output = std::max(1, static_cast<int>(std::ceil(opt.output_interval / (opt.cfl * dx))));
    const double h = opt.output_interval / per_output;
    tr.dtau = h;
    const long total = static_cast<long>(std::ceil(tau_max / h - 1e-9));
    tr.states.push_back(make_state(st, 0.0, u, v, acc));
    for (long k = 1; k <= total; ++k) {
        const double tau = (k - 1) * h;
        const std::vector<double> u_prev = u, v_prev = v;
        st.step(u, v, tau, h, acc);
        if (free_wave && !(st.energy(u, v) <= 10.0 * e0 + 1e-12))
            throw NumericalError("evolve_u: energy growth without a source (step size unstable)");
        if (crossed(u, v, opt.blow_up_threshold)) {
            // Bracket the crossing by repeated step halving from the last state below threshold.
            double lo = tau, hi = tau + h, hh = h;
            std::vector<double> ub = u_prev, vb = v_prev;
            for (int level = 0; level < 40 && hi - lo > 1e-9; ++level) {
                hh *= 0.5;
                std::vector<double> uu = ub, vv = vb;
                double tt = lo;
                for (int guard = 0; guard < 1 << 20; ++guard) {
                    std::vector<double> us = uu, vs = vv;
                    st.step(uu, vv, tt, hh, acc);
                    if (crossed(uu, vv, opt.blow_up_threshold)) {
                        lo = tt;
                        hi = tt + hh;
                        ub = us;
                        vb = vs;
                        break;
                    }
                    tt += hh;
                }
            }
            tr.blew_up = true;
            tr.blow_up_lo = lo;
            tr.blow_up_hi = hi;
            tr.states.push_back(make_state(st, lo, ub, vb, acc));
            return tr;
        }
        if (k % per_output == 0 || k == total) tr.states.push_back(make_state(st, k * h, u, v, acc));
    }
    return tr;
}

MonitorReport mean_monitor(const CurvedTrajectory& traj, double tol) {
    if (traj.states.empty()) throw ValidationError("mean_monitor: empty trajectory");
    MonitorReport r;
    const double a = traj.a_lb;
    r.applicable = a > 0.0;
    const CurvedState& s0 = traj.states.front();
    // Only states below the blow-up threshold enter the checks.
    size_t end = traj.states.size();
    if (traj.blew_up) --end;
    for (size_t k = 0; k < end; ++k) {
        const CurvedState& s = traj.states[k];
        r.linear_deviation = std::max(r.linear_deviation, std::abs(s.w - s0.w - s0.w_prime * s.tau));
    }
    if (!r.applicable) {
        r.passed = true;
        return r;
    }
    r.wpp_bound = r.wp_decreasing = r.energy_nondecreasing = true;
    r.max_wpp_excess = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < end; ++k) {
        const CurvedState& s = traj.states[k];
        const double excess = s.w_second + a * std::exp(-2.0 * s.w);
        r.max_wpp_excess = std::max(r.max_wpp_excess, excess);
        if (excess > tol) r.wpp_bound = false;
        if (k == 0) continue;
        const CurvedState& p = traj.states[k - 1];
        if (!(s.w_prime < p.w_prime)) r.wp_decreasing = false;
        const double ep = p.w_prime * p.w_prime - a * std::exp(-2.0 * p.w);
        const double es = s.w_prime * s.w_prime - a * std::exp(-2.0 * s.w);
        if (es < ep - tol * std::max(1.0, std::abs(ep))) r.energy_nondecreasing = false;
    }
    r.passed = r.wpp_bound && r.wp_decreasing && r.energy_nondecreasing;
    return r;
}

double blow_up_bound(double a_lb, double w0, double wp0) {
    if (!(a_lb > 0.0)) throw ValidationError("blow_up_bound: requires a_lb > 0");
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 2>;
    if (wp0 > 0.0) wp0 = -wp0;
    auto rhs = [a_lb](const State& x, State& dx, double) {
        dx[0] = x[1];
        dx[1] = -a_lb * std::exp(-2.0 * x[0]);
    };
    auto stepper = odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>());
    State x{w0, wp0};
    double t = 0.0, dt = 1e-3;
    constexpr double cutoff = -20.0;
    for (long guard = 0; x[0] > cutoff && guard < 10000000; ++guard) {
        State trial = x;
        double tt = t, hh = dt;
        if (stepper.try_step(rhs, trial, tt, hh) == odeint::success) {
            if (trial[0] < cutoff && hh > 0.0) {
                // Do not overshoot far past the cutoff: shrink the step and retry.
                if (x[0] - trial[0] > 1.0) {
                    dt *= 0.5;
                    continue;
                }
            }
            x = trial;
            t = tt;
        }
        dt = hh;
    }
    // Remaining time from the conserved energy E = w'^2 - a e^{-2w}: with x = e^w,
    // dtau = dx / sqrt(a + E x^2) down to x = 0.
    const double E = x[1] * x[1] - a_lb * std::exp(-2.0 * x[0]);
    const double x1 = std::exp(x[0]);
    double tail;
    if (E > 0.0) tail = std::asinh(x1 * std::sqrt(E / a_lb)) / std::sqrt(E);
    else if (E < 0.0) tail = std::asin(std::min(1.0, x1 * std::sqrt(-E / a_lb))) / std::sqrt(-E);
    else tail = x1 / std::sqrt(a_lb);
    return t + tail;
}

}  // namespace ws
