#pragma once

#include "ws/bounds.hpp"
#include "ws/curve_core.hpp"
#include "ws/numeric.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

// Seeded generators for property tests.
namespace gen {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(0x9e3779b97f4a7c15ull ^ seed); }

inline std::vector<double> uniforms(std::uint64_t seed, int n, double a, double b) {
    auto r = rng(seed);
    std::vector<double> out(n);
    for (auto& x : out) x = ws::uniform(r, a, b);
    return out;
}

inline ws::Vec3 unit_vector(std::mt19937_64& r) {
    std::normal_distribution<double> nd;
    ws::Vec3 v(nd(r), nd(r), nd(r));
    return v.normalized();
}

// Monotone circle map sigma -> sigma + sum c_k sin(k w sigma + phase_k) / (k w) with sum |c_k| <= amp < 1.
struct MonotoneMap {
    double period = 2.0 * std::numbers::pi;
    std::vector<double> c, phase;
    double operator()(double t, double sg) const {
        const double w = 2.0 * std::numbers::pi / period;
        double x = sg;
        for (size_t k = 0; k < c.size(); ++k) {
            const double kw = (k + 1) * w;
            x += c[k] * std::sin(kw * sg + phase[k] + 0.5 * t) / kw;
        }
        return x;
    }
};

inline MonotoneMap monotone_map(std::uint64_t seed, double period, int modes = 3, double amp = 0.6) {
    auto r = rng(seed);
    MonotoneMap m;
    m.period = period;
    for (int k = 0; k < modes; ++k) {
        m.c.push_back(ws::uniform(r, -1.0, 1.0) * amp / modes);
        m.phase.push_back(ws::uniform(r, 0.0, 2.0 * std::numbers::pi));
    }
    return m;
}

// Shallow arc from null angles psi = e1 s + e2 s^2, psitilde = pi - d - f1 s - f2 s^2 on [0, len].
struct ShallowArc {
    double e1, e2, f1, f2, d, len;
    ws::OpenArc arc() const {
        const double a1 = e1, a2 = e2, b1 = f1, b2 = f2, dd = d;
        return ws::OpenArc::from_null_angles(
            [a1, a2](double s, int m) { return m == 0 ? a1 * s + a2 * s * s : (m == 1 ? a1 + 2 * a2 * s : 2 * a2); },
            [b1, b2, dd](double s, int m) {
                return m == 0 ? std::numbers::pi - dd - b1 * s - b2 * s * s : (m == 1 ? -b1 - 2 * b2 * s : -2 * b2);
            },
            0.0, len);
    }
};

inline ShallowArc shallow_arc(std::uint64_t seed) {
    auto r = rng(seed);
    ShallowArc a;
    a.e1 = ws::uniform(r, -0.05, 0.05);
    a.e2 = ws::uniform(r, -0.05, 0.05);
    a.f1 = ws::uniform(r, -0.05, 0.05);
    a.f2 = ws::uniform(r, -0.05, 0.05);
    a.d = ws::uniform(r, -0.3, 0.3);
    a.len = ws::uniform(r, 0.5, 1.5);
    return a;
}

}  // namespace gen
