#include "ws/singularity.hpp"

#include "ws/errors.hpp"
#include "ws/kernels.hpp"
#include "ws/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ws {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Signed angle from -b(s - t) to a(s + t); zero exactly on the singular set.
double null_gap(const Surface& surf, double t, double s) {
    const Vec2 a = surf.a(s + t).head<2>();
    const Vec2 mb = -surf.b(s - t).head<2>();
    return std::atan2(cross2(mb, a), mb.dot(a));
}

// Root of f near x within an expanding symmetric bracket; NaN when none is found.
double local_root(const std::function<double(double)>& f, double x, double width, double max_width,
                  double lo = -kInf, double hi = kInf) {
    for (double w = width; w <= max_width; w *= 4.0) {
        const double a = std::max(lo, x - w), b = std::min(hi, x + w);
        const double fa = f(a), fb = f(b);
        if (std::abs(fa) < kPi / 2 && std::abs(fb) < kPi / 2 && ((fa <= 0.0) != (fb <= 0.0) || fa == 0.0 || fb == 0.0))
            return bracketed_root(f, a, b);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double periodic_mod(double s, double L) {
    double r = std::fmod(s, L);
    if (r < 0.0) r += L;
    if (r >= L) r -= L;
    return r;
}

SingularKind kind_of(const Surface& surf, const SingularEvent& ev) {
    if (!nearly_equal(ev.zeta, ev.eta)) {
        return nearly_equal(ev.zeta, -ev.eta) ? SingularKind::tangent_reversal : SingularKind::ordinary_cusp;
    }
    if (!nearly_equal(ev.zeta_prime, ev.eta_prime)) return SingularKind::degenerate_43;
    // A slice collapsed to a point: gamma_s vanishes along the whole slice.
    const double L = surf.period();
    double worst = 0.0;
    for (int j = 0; j < 256 && worst < 1e-8; ++j) worst = std::max(worst, surf.gamma_s(ev.t0, L * j / 256).norm());
    if (worst < 1e-8) return SingularKind::shrink_to_point;
    return SingularKind::higher_order;
}

}  // namespace

std::string to_string(SingularKind k) {
    switch (k) {
        case SingularKind::ordinary_cusp: return "ordinary_cusp";
        case SingularKind::tangent_reversal: return "tangent_reversal";
        case SingularKind::degenerate_43: return "degenerate_43";
        case SingularKind::shrink_to_point: return "shrink_to_point";
        case SingularKind::higher_order: return "higher_order";
    }
    return "higher_order";
}

std::string to_string(MotionKind k) {
    switch (k) {
        case MotionKind::rotation: return "rotation";
        case MotionKind::translation: return "translation";
        case MotionKind::self_similar: return "self_similar";
        case MotionKind::unclassified: return "unclassified";
    }
    return "unclassified";
}

bool nearly_equal(double x, double y) {
    return std::abs(x - y) < 1e-6 * std::max({std::abs(x), std::abs(y), 1.0});
}

SingularEvent make_event(const Surface& surf, double t0, double s0) {
    if (surf.dimension() != 2) throw ValidationError("singular events need planar data");
    SingularEvent ev;
    ev.t0 = t0;
    ev.s0 = periodic_mod(s0, surf.period());
    ev.u0 = ev.s0 + t0;
    ev.v0 = ev.s0 - t0;
    const Vec2 a = surf.a(ev.u0).head<2>(), a1 = surf.a(ev.u0, 1).head<2>(), a2 = surf.a(ev.u0, 2).head<2>();
    const Vec2 b = surf.b(ev.v0).head<2>(), b1 = surf.b(ev.v0, 1).head<2>(), b2 = surf.b(ev.v0, 2).head<2>();
    ev.zeta = cross2(a, a1) / a.squaredNorm();
    ev.zeta_prime = cross2(a, a2) / a.squaredNorm();
    ev.eta = cross2(b, b1) / b.squaredNorm();
    ev.eta_prime = cross2(b, b2) / b.squaredNorm();
    ev.position = surf.position(t0, ev.s0);
    ev.residual = (a + b).norm();
    ev.kind = kind_of(surf, ev);
    return ev;
}

SingularEvent locate_event(const Surface& surf, double t, double s) {
    // Move along the direction where the null gap changes fastest, then polish on a line.
    const double zeta = make_event(surf, t, s).zeta;
    const double eta = make_event(surf, t, s).eta;
    const double gs = zeta - eta, gt = zeta + eta;
    double t0 = t, s0 = s;
    if (std::abs(gt) >= std::abs(gs)) {
        const double r = local_root([&](double x) { return null_gap(surf, x, s); }, t, 1e-9, 1.0);
        if (!std::isnan(r)) t0 = r;
    } else {
        const double r = local_root([&](double x) { return null_gap(surf, t, x); }, s, 1e-9, 1.0);
        if (!std::isnan(r)) s0 = r;
    }
    return make_event(surf, t0, s0);
}

std::vector<SingularEvent> first_singularities(const InitialData& data, const SearchOptions& opt) {
    if (data.dimension() != 2) throw ValidationError("first_singularity: data must be planar");
    const Surface surf(data);
    const NullPair pair = to_null_pair(data);
    const double L = data.period();
    for (int level = 0; level <= opt.max_refinements; ++level) {
        const int ns = opt.grid << level, nt = ns;
        const double h = L / (2.0 * ns);
        const int nk = 2 * ns + nt + 1;
        std::vector<double> pu(nk), pv(nk);
        kernels::parallel_for(nk, [&](int k) {
            pu[k] = pair.psi.eval1(k * h);
            pv[k] = pair.psitilde.eval1((k - nt) * h);
        });
        const std::vector<int> roots = kernels::strip_first_roots(pu, pv, ns, nt);
        std::vector<double> tlin(ns, kInf);
        for (int j = 0; j < ns; ++j) {
            const int i = roots[j];
            if (i < 0) continue;
            const double d0 = wrap_angle(pu[2 * j + i] - pv[2 * j - i + nt]);
            const double d1 = wrap_angle(pu[2 * j + i + 1] - pv[2 * j - i - 1 + nt]);
            const double frac = (d0 == d1) ? 0.0 : d0 / (d0 - d1);
            tlin[j] = (i + frac) * h;
        }
        const auto it = std::min_element(tlin.begin(), tlin.end());
        if (*it == kInf) continue;
        const double tmin = *it;
        const int jmin = static_cast<int>(it - tlin.begin());

        auto column_root = [&](double s, double t_guess) {
            return local_root([&](double x) { return null_gap(surf, x, s); }, t_guess, 2.0 * h, 64.0 * h, 0.0,
                              L / 2 + 4.0 * h);
        };

        // Collapse of a whole slice: every column reaches zero at the same time.
        {
            const double t0 = column_root(0.0, tmin);
            if (!std::isnan(t0)) {
                SingularEvent ev = make_event(surf, t0, 0.0);
                if (ev.kind == SingularKind::shrink_to_point) return {ev};
            }
        }

        std::vector<int> cand;
        for (int j = 0; j < ns; ++j) {
            const double l = tlin[(j + ns - 1) % ns], r = tlin[(j + 1) % ns];
            if (tlin[j] <= l && tlin[j] <= r && tlin[j] <= tmin + 4.0 * h) cand.push_back(j);
        }
        if (cand.empty()) cand.push_back(jmin);
        std::sort(cand.begin(), cand.end(), [&](int x, int y) { return tlin[x] < tlin[y] || (tlin[x] == tlin[y] && x < y); });
        if (cand.size() > 32) cand.resize(32);

        std::vector<SingularEvent> found(cand.size());
        std::vector<char> ok(cand.size(), 0);
        kernels::parallel_for(static_cast<int>(cand.size()), [&](int c) {
            const int j = cand[c];
            const double sc = 2.0 * j * h, tg = tlin[j];
            auto T = [&](double s) {
                const double r = column_root(s, tg);
                return std::isnan(r) ? 10.0 * L : r;
            };
            auto [s_best, t_best] = minimize_1d(T, sc - 2.0 * h, sc + 2.0 * h);
            if (t_best >= 10.0 * L) return;
            // Newton on (gap, zeta - eta) in null coordinates sharpens the tangency point.
            double u = s_best + t_best, v = s_best - t_best;
            for (int k = 0; k < 8; ++k) {
                const SingularEvent e = make_event(surf, 0.5 * (u - v), 0.5 * (u + v));
                const Eigen::Vector2d F(null_gap(surf, 0.5 * (u - v), 0.5 * (u + v)), e.zeta - e.eta);
                Eigen::Matrix2d J;
                J << e.zeta, -e.eta, e.zeta_prime, -e.eta_prime;
                if (std::abs(J.determinant()) < 1e-10) break;
                const Eigen::Vector2d d = J.lu().solve(-F);
                if (d.norm() > 2.0 * h) break;
                u += d(0);
                v += d(1);
                if (d.norm() < 1e-15) break;
            }
            double s0 = 0.5 * (u + v);
            if (std::abs(s0 - s_best) > 2.0 * h) s0 = s_best;
            const double t0 = column_root(s0, 0.5 * (u - v));
            if (std::isnan(t0) || t0 <= 0.0) return;
            found[c] = make_event(surf, t0, s0);
            ok[c] = 1;
        });
        std::vector<SingularEvent> events;
        for (size_t c = 0; c < found.size(); ++c)
            if (ok[c]) events.push_back(found[c]);
        if (events.empty()) continue;
        double tbest = kInf;
        for (const auto& e : events) tbest = std::min(tbest, e.t0);
        std::vector<SingularEvent> first;
        for (const auto& e : events)
            if (e.t0 <= tbest + opt.tie_tol) first.push_back(e);
        std::sort(first.begin(), first.end(), [](const auto& x, const auto& y) { return x.s0 < y.s0; });
        std::vector<SingularEvent> out;
        for (const auto& e : first) {
            bool dup = false;
            for (const auto& o : out) {
                const double ds = std::abs(e.s0 - o.s0);
                if (std::min(ds, L - ds) < 1e-7) dup = true;
            }
            if (!dup) out.push_back(e);
        }
        return out;
    }
    throw NumericalError("first_singularity: no zero of a(s+t) + b(s-t) found in 0 < t <= L/2");
}

SingularEvent first_singularity(const InitialData& data, const SearchOptions& opt) {
    return first_singularities(data, opt).front();
}

std::vector<double> singular_set_at_time(const Surface& surf, double t, int grid) {
    const double L = surf.period();
    std::vector<double> g(grid + 1);
    kernels::parallel_for(grid + 1, [&](int j) { g[j] = null_gap(surf, t, L * j / grid); });
    auto f = [&](double s) { return null_gap(surf, t, s); };
    std::vector<double> roots;
    for (int j = 0; j < grid; ++j) {
        const double s0 = L * j / grid, s1 = L * (j + 1) / grid;
        const double d0 = g[j], d1 = g[j + 1];
        if (std::abs(d0) < kPi / 2 && std::abs(d1) < kPi / 2) {
            if (d0 == 0.0) {
                roots.push_back(s0);
            } else if ((d0 < 0.0) != (d1 < 0.0) && d1 != 0.0) {
                roots.push_back(bracketed_root(f, s0, s1));
            } else if (j > 0 && std::abs(d0) < 1e-3 && std::abs(d0) <= std::abs(g[j - 1]) &&
                       std::abs(d0) <= std::abs(d1)) {
                // Touching zero without a sign change (zeta = -eta).
                auto [sm, fm] = minimize_1d([&](double s) { return std::abs(f(s)); }, L * (j - 1) / grid, s1);
                if (fm < 1e-10) roots.push_back(sm);
            }
        }
    }
    for (double& r : roots) r = periodic_mod(r, L);
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots) {
        if (!out.empty() && r - out.back() < 1e-9) continue;
        out.push_back(r);
    }
    if (out.size() > 1 && out.front() + L - out.back() < 1e-9) out.pop_back();
    return out;
}

std::vector<double> singular_set_at_time(const InitialData& data, double t, int grid) {
    return singular_set_at_time(Surface(data), t, grid);
}

SingularKind classify(const Surface& surf, const SingularEvent& ev) {
    const double res = (surf.a(ev.u0) + surf.b(ev.v0)).norm();
    if (res > 1e-8) throw ValidationError("classify: event does not satisfy a(u0) + b(v0) = 0");
    return kind_of(surf, ev);
}

SingularKind classify(const InitialData& data, const SingularEvent& ev) { return classify(Surface(data), ev); }

LocalModel local_model(const Surface& surf, const SingularEvent& ev) {
    LocalModel m;
    const Vec2 a = surf.a(ev.u0).head<2>();
    m.e = a.normalized();
    const Vec2 ep = perp(m.e);
    m.p = ep.dot(surf.derivative(0, 2, ev.t0, ev.s0).head<2>());
    m.q = ep.dot(surf.derivative(1, 1, ev.t0, ev.s0).head<2>());
    m.u3 = ep.dot(surf.derivative(0, 3, ev.t0, ev.s0).head<2>());
    const double scale = std::max({std::abs(ev.zeta), std::abs(ev.eta), 1.0});
    const double thr = 1e-6 * scale;
    const bool p0 = std::abs(m.p) < thr, q0 = std::abs(m.q) < thr, u0 = std::abs(m.u3) < thr;
    if (p0 && q0 && u0) throw ValidationError("local_model: p, q and u3 all vanish (unclassified degenerate event)");
    m.k0 = p0 ? std::numeric_limits<double>::quiet_NaN() : m.p - m.q * m.q / m.p;
    if (!p0) {
        m.rotation_rate = m.q / m.p;
        if (nearly_equal(std::abs(m.p), std::abs(m.q))) {
            m.motion = MotionKind::translation;
        } else {
            m.motion = MotionKind::rotation;
            m.center_offset = m.p / (m.p * m.p - m.q * m.q);
        }
    } else if (!q0 && !u0) {
        m.motion = MotionKind::self_similar;
    }
    return m;
}

LocalModel local_model(const InitialData& data, const SingularEvent& ev) { return local_model(Surface(data), ev); }

CurveTrace propagation_curve(const Surface& surf, const SingularEvent& ev, double t_span, double step) {
    if (ev.kind != SingularKind::ordinary_cusp)
        throw ValidationError("propagation_curve: event is not an ordinary cusp");
    if (!(step > 0.0)) throw ValidationError("propagation_curve: step must be positive");
    auto rhs = [&](double t, double s, double* gss_norm) {
        const Vec2 gss = surf.derivative(0, 2, t, s).head<2>();
        const Vec2 gts = surf.derivative(1, 1, t, s).head<2>();
        if (gss_norm) *gss_norm = gss.norm();
        return -gss.dot(gts) / gss.squaredNorm();
    };
    CurveTrace tr;
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(t_span) / step)));
    const double h = t_span / n;
    double t = ev.t0, S = ev.s0;
    auto record = [&]() {
        const double sp = rhs(t, S, nullptr);
        const double res = (surf.a(S + t) + surf.b(S - t)).norm();
        const double speed = (surf.gamma_t(t, S) + sp * surf.gamma_s(t, S)).norm();
        tr.param.push_back(t);
        tr.value.push_back(S);
        tr.residual.push_back(res);
        tr.speed.push_back(speed);
        tr.max_residual = std::max(tr.max_residual, res);
        tr.max_null_deviation = std::max(tr.max_null_deviation, std::abs(speed - 1.0));
    };
    record();
    for (int k = 0; k < n; ++k) {
        double gn = 0.0;
        const double k1 = rhs(t, S, &gn);
        if (gn < 1e-8) {
            tr.complete = false;
            tr.stop_reason = "gamma_ss vanishes: left the ordinary-cusp regime";
            break;
        }
        const double k2 = rhs(t + h / 2, S + h / 2 * k1, nullptr);
        const double k3 = rhs(t + h / 2, S + h / 2 * k2, nullptr);
        const double k4 = rhs(t + h, S + h * k3, nullptr);
        const double tn = t + h;
        double Sn = S + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        const double r = local_root([&](double x) { return null_gap(surf, tn, x); }, Sn, 1e-10, 1e-2);
        if (std::isnan(r)) {
            tr.complete = false;
            tr.stop_reason = "lost the singular curve";
            break;
        }
        t = tn;
        S = r;
        record();
    }
    return tr;
}

FormationTrace formation_curve(const Surface& surf, const SingularEvent& ev, double s_span, double step) {
    if (ev.kind != SingularKind::degenerate_43)
        throw ValidationError("formation_curve: event is not a degenerate (4/3) point");
    if (!(step > 0.0)) throw ValidationError("formation_curve: step must be positive");
    auto rhs = [&](double s, double t, double* gts_norm) {
        const Vec2 gss = surf.derivative(0, 2, t, s).head<2>();
        const Vec2 gts = surf.derivative(1, 1, t, s).head<2>();
        if (gts_norm) *gts_norm = gts.norm();
        return gss.dot(gts) / gts.squaredNorm();
    };
    FormationTrace out;
    const int n = std::max(1, static_cast<int>(std::ceil(s_span / step)));
    const double h = s_span / n;
    struct Pt { double s, t, res, speed, tp; };
    auto march = [&](double dir, std::vector<Pt>& pts, CurveTrace& tr) {
        double s = ev.s0, T = ev.t0;
        for (int k = 0; k < n; ++k) {
            const double hh = dir * h;
            double gn = 0.0;
            const double k1 = rhs(s, T, &gn);
            if (gn < 1e-8) {
                tr.complete = false;
                tr.stop_reason = "gamma_ts vanishes";
                return;
            }
            const double k2 = rhs(s + hh / 2, T + hh / 2 * k1, nullptr);
            const double k3 = rhs(s + hh / 2, T + hh / 2 * k2, nullptr);
            const double k4 = rhs(s + hh, T + hh * k3, nullptr);
            const double sn = s + hh;
            const double Tn = T + hh / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
            const double r = local_root([&](double x) { return null_gap(surf, x, sn); }, Tn, 1e-10, 1e-2);
            if (std::isnan(r)) {
                tr.complete = false;
                tr.stop_reason = "lost the singular curve";
                return;
            }
            s = sn;
            T = r;
            const double tp = rhs(s, T, nullptr);
            const double res = (surf.a(s + T) + surf.b(s - T)).norm();
            const double speed = (tp * surf.gamma_t(T, s) + surf.gamma_s(T, s)).norm();
            pts.push_back({s, T, res, speed, tp});
        }
    };
    std::vector<Pt> fwd, bwd;
    march(1.0, fwd, out.curve);
    march(-1.0, bwd, out.curve);
    std::vector<Pt> all(bwd.rbegin(), bwd.rend());
    const double tp0 = rhs(ev.s0, ev.t0, nullptr);
    all.push_back({ev.s0, ev.t0, ev.residual, (tp0 * surf.gamma_t(ev.t0, ev.s0) + surf.gamma_s(ev.t0, ev.s0)).norm(), tp0});
    all.insert(all.end(), fwd.begin(), fwd.end());
    for (const Pt& p : all) {
        out.curve.param.push_back(p.s);
        out.curve.value.push_back(p.t);
        out.curve.residual.push_back(p.res);
        out.curve.speed.push_back(p.speed);
        out.curve.max_residual = std::max(out.curve.max_residual, p.res);
        // The spacetime tangent T'(1, gamma_t) + (0, gamma_s) is null iff |d gamma / ds| = |T'|.
        out.curve.max_null_deviation = std::max(out.curve.max_null_deviation, std::abs(p.speed - std::abs(p.tp)));
    }
    out.t_first = tp0;
    const Vec2 g3 = surf.derivative(0, 3, ev.t0, ev.s0).head<2>();
    const Vec2 gts = surf.derivative(1, 1, ev.t0, ev.s0).head<2>();
    out.t_second = -g3.dot(gts) / gts.squaredNorm();
    if (!fwd.empty() && !bwd.empty())
        out.t_second_numeric = (fwd.front().t - 2.0 * ev.t0 + bwd.front().t) / (h * h);
    out.future_directed = out.t_second > 0.0;
    return out;
}

MonotonicityReport monotonicity_diagnostics(const NullPair& pair, int grid) {
    MonotonicityReport r;
    const double L = pair.period();
    r.zeta_min = r.eta_min = kInf;
    r.zeta_max = r.eta_max = -kInf;
    r.psi_range_min = r.psitilde_range_min = kInf;
    r.psi_range_max = r.psitilde_range_max = -kInf;
    for (int j = 0; j < grid; ++j) {
        const double s = L * j / grid;
        const double z = pair.zeta(s), e = pair.eta(s);
        r.zeta_min = std::min(r.zeta_min, z);
        r.zeta_max = std::max(r.zeta_max, z);
        r.eta_min = std::min(r.eta_min, e);
        r.eta_max = std::max(r.eta_max, e);
        const double ps = pair.psi.eval1(s), pt = pair.psitilde.eval1(s);
        r.psi_range_min = std::min(r.psi_range_min, ps);
        r.psi_range_max = std::max(r.psi_range_max, ps);
        r.psitilde_range_min = std::min(r.psitilde_range_min, pt);
        r.psitilde_range_max = std::max(r.psitilde_range_max, pt);
    }
    r.winding = pair.winding_a;
    r.psi_monotone = r.zeta_min >= 0.0 || r.zeta_max <= 0.0;
    r.psitilde_monotone = r.eta_min >= 0.0 || r.eta_max <= 0.0;
    r.same_direction = (r.zeta_min >= 0.0 && r.eta_min >= 0.0) || (r.zeta_max <= 0.0 && r.eta_max <= 0.0);
    if (pair.winding_a == 0 && pair.winding_b == 0) {
        // Interior overlap of [min psi, max psi] with some [min psitilde, max psitilde] + 2 pi k:
        // a shared value that is not extremal for both lifts.
        const double lo = r.psi_range_min - r.psitilde_range_max, hi = r.psi_range_max - r.psitilde_range_min;
        const int k0 = static_cast<int>(std::ceil(lo / (2 * kPi) - 1e-12));
        const int k1 = static_cast<int>(std::floor(hi / (2 * kPi) + 1e-12));
        for (int k = k0; k <= k1; ++k) {
            const double shift = 2 * kPi * k;
            const double olo = std::max(r.psi_range_min, r.psitilde_range_min + shift);
            const double ohi = std::min(r.psi_range_max, r.psitilde_range_max + shift);
            if (ohi - olo > 1e-9) r.extremal_collision = true;
        }
    }
    return r;
}

std::vector<double> self_similar_residual(const SurfaceMap& gamma, const LocalModel& m,
                                          const std::vector<int>& scales) {
    const Vec2 e = m.e, ep = perp(m.e);
    auto model = [&](double t, double s) -> Vec2 {
        return (m.q * t * s + m.u3 * s * s * s / 6.0) * ep +
               (t - m.q * m.q * t * s * s / 2.0 - m.q * m.u3 * s * s * s * s / 8.0) * e;
    };
    std::vector<double> out;
    for (int n : scales) {
        const double n2 = static_cast<double>(n) * n, n4 = n2 * n2;
        double worst = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double t = i / 20.0 / n2;
            for (int j = -20; j <= 20; ++j) {
                const double s = j / 20.0 / n;
                worst = std::max(worst, (gamma(t, s) - model(t, s)).norm());
            }
        }
        out.push_back(worst * n4);
    }
    return out;
}

std::vector<double> self_similar_residual(const Surface& surf, const SingularEvent& ev,
                                          const std::vector<int>& scales) {
    const LocalModel m = local_model(surf, ev);
    if (m.motion != MotionKind::self_similar)
        throw ValidationError("self_similar_residual: event is not of self-similar type");
    const Vec2 base = surf.position(ev.t0, ev.s0).head<2>();
    return self_similar_residual(
        [&](double t, double s) { return Vec2(surf.position(ev.t0 + t, ev.s0 + s).head<2>() - base); }, m, scales);
}

}  // namespace ws
