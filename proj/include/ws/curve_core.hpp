#pragma once

#include "ws/periodic.hpp"

#include <cstdint>
#include <string>

namespace ws {

// Orthogonal-gauge initial data: alpha = gamma(0, .), beta = gamma_t(0, .).
struct InitialData {
    PeriodicFunction alpha;
    PeriodicFunction beta;
    // Exact-solution presets whose alpha' vanishes at isolated points.
    bool singular_preset = false;

    double period() const { return alpha.period(); }
    int dimension() const { return alpha.dim(); }
    bool operator==(const InitialData& o) const {
        return alpha == o.alpha && beta == o.beta && singular_preset == o.singular_preset;
    }
};

struct ValidationReport {
    double orthogonality = 0.0;   // max |<beta, alpha'>|
    double normalization = 0.0;   // max ||alpha'|^2 + |beta|^2 - 1|
    double closure = 0.0;         // |integral of alpha' over one period|
    double min_speed = 0.0;       // min |alpha'|
    double max_beta = 0.0;        // max |beta|
    bool singular_preset = false;
    bool regular = false;         // min |alpha'| above the regularity threshold
    bool passed = false;
    int grid = 0;
};

constexpr double kStructuralTol = 1e-9;
constexpr double kRoundTripTol = 1e-8;
constexpr double kRegularityTol = 1e-8;

ValidationReport validate_initial_data(const InitialData& data, int grid = 4096, double tol = kStructuralTol);

// Continuous angle lifts of a = alpha' + beta and -b = beta - alpha':
// a = (cos psi, sin psi), b = -(cos psitilde, sin psitilde). Each lift is a
// PeriodicFunction whose drift is 2 pi d / L.
struct NullPair {
    PeriodicFunction psi;
    PeriodicFunction psitilde;
    int winding_a = 0;
    int winding_b = 0;

    double period() const { return psi.period(); }
    Vec2 a(double u) const;
    Vec2 b(double v) const;
    double zeta(double u, int m = 0) const { return psi.eval1(u, m + 1); }
    double eta(double v, int m = 0) const { return psitilde.eval1(v, m + 1); }
    bool operator==(const NullPair& o) const {
        return psi == o.psi && psitilde == o.psitilde && winding_a == o.winding_a && winding_b == o.winding_b;
    }
};

// modes = 0 picks the lift resolution automatically; grid = 0 sizes the sample grid from the data.
NullPair to_null_pair(const InitialData& data, int modes = 0, int grid = 0);
InitialData from_null_pair(const NullPair& pair, const Vec2& basepoint, int modes = 0,
                           bool allow_singular = false);

int rotation_index(const InitialData& data);

struct RandomDataOptions {
    int winding = 1;
    double period = 6.283185307179586;
    int max_attempts = 64;
    double min_speed = 1e-3;
};

// Deterministic in seed. Draws psi, psitilde with equal winding, enforces closure by damped
// Newton on the harmonic-|d| coefficients of psi, retries when alpha' gets close to zero.
NullPair random_null_pair(std::uint64_t seed, int modes, double amplitude,
                          const RandomDataOptions& opt = {});
InitialData random_initial_data(std::uint64_t seed, int modes, double amplitude,
                                const RandomDataOptions& opt = {});

}  // namespace ws
