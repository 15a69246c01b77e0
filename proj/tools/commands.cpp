#include "commands.hpp"

#include "ws/bounds.hpp"
#include "ws/curved.hpp"
#include "ws/errors.hpp"
#include "ws/evolution.hpp"
#include "ws/gauge.hpp"
#include "ws/presets.hpp"
#include "ws/r3.hpp"
#include "ws/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <set>

namespace wscli {

using namespace ws;
namespace fs = std::filesystem;

RunContext::RunContext(std::string out_dir) : out_dir_(std::move(out_dir)) {
    std::error_code ec;
    fs::create_directories(out_dir_, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir_ + ": " + ec.message());
}

void RunContext::write(const std::string& name, const std::string& content) {
    const fs::path p = fs::path(out_dir_) / name;
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + p.parent_path().string());
    write_text(p.string(), content);
    outputs_.push_back({name, sha256_hex(content)});
}

void RunContext::check(const std::string& name, bool passed) { checks_[name] = passed; }

namespace {

const std::set<std::string> kDataKeys = {"preset", "data", "random"};

const std::map<std::string, std::set<std::string>>& schemas() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"presets", {}},
        {"validate", {"grid", "tol"}},
        {"evolve", {"tmax", "nt", "grid"}},
        {"slices", {"times", "grid"}},
        {"detect", {"grid", "tol"}},
        {"classify", {"t", "grid"}},
        {"local-model", {"span", "step"}},
        {"gauge-fix", {"curve", "normal_speed", "patch", "period", "reparam_amplitude", "tmax", "nt", "grid"}},
        {"bound", {"p", "q", "shallow", "grid"}},
        {"curved", {"period", "homogeneous", "M0", "N0", "u0", "v0", "tmax", "grid", "cfl", "threshold", "output_interval"}},
        {"r3", {"vertices", "radius", "periods", "grid"}},
        {"sweep", {"seeds", "seed_offset", "modes", "amplitude", "grid"}},
    };
    return s;
}

bool uses_data(const std::string& cmd) {
    return cmd != "presets" && cmd != "curved" && cmd != "sweep";
}

template <class T>
T get(const Json& cfg, const std::string& key, T fallback) {
    if (!cfg.contains(key)) return fallback;
    try {
        return cfg.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError("config key '" + key + "' has the wrong type");
    }
}

int positive_int(const Json& cfg, const std::string& key, int fallback, int min_value = 1) {
    const int v = get<int>(cfg, key, fallback);
    if (v < min_value) throw ValidationError("config key '" + key + "' must be >= " + std::to_string(min_value));
    return v;
}

InitialData resolve_data(const Json& cfg) {
    int n = 0;
    for (const auto& k : kDataKeys) n += cfg.contains(k) ? 1 : 0;
    if (n != 1) throw ValidationError("config needs exactly one of 'preset', 'data', 'random'");
    if (cfg.contains("preset")) return make_preset(get<std::string>(cfg, "preset", ""));
    if (cfg.contains("data")) return initial_data_from_json(cfg["data"]);
    const Json& r = cfg["random"];
    for (const auto& [key, value] : r.items()) {
        (void)value;
        if (key != "seed" && key != "modes" && key != "amplitude" && key != "winding")
            throw ValidationError("random: unknown key '" + key + "'");
    }
    RandomDataOptions opt;
    opt.winding = get<int>(r, "winding", 1);
    return random_initial_data(get<std::uint64_t>(r, "seed", 0), positive_int(r, "modes", 3),
                               get<double>(r, "amplitude", 0.5), opt);
}

std::string num(double x) { return format_double(x); }

std::vector<std::string> point_cells(const Vec3& x, int dim) {
    std::vector<std::string> out = {num(x.x()), num(x.y())};
    if (dim == 3) out.push_back(num(x.z()));
    return out;
}

std::vector<std::string> xyz_header(int dim) {
    std::vector<std::string> h = {"x", "y"};
    if (dim == 3) h.push_back("z");
    return h;
}

void require_planar(const InitialData& d, const std::string& cmd) {
    if (d.dimension() != 2) throw ValidationError(cmd + ": data must be planar");
}

// First events, or the singular set at t = 0 for presets that start singular.
std::vector<SingularEvent> detect_events(const InitialData& d, int grid) {
    require_planar(d, "detect");
    if (d.singular_preset) {
        const Surface surf(d);
        std::vector<SingularEvent> out;
        for (double s : singular_set_at_time(surf, 0.0)) out.push_back(make_event(surf, 0.0, s));
        if (out.empty()) throw NumericalError("detect: singular preset without singular points at t = 0");
        return out;
    }
    SearchOptions opt;
    opt.grid = grid;
    return first_singularities(d, opt);
}

void cmd_presets(const Json&, RunContext& ctx) {
    Json list = Json::array();
    for (const PresetInfo& p : presets()) list.push_back({{"name", p.name}, {"dimension", p.dimension}, {"description", p.description}});
    ctx.write("presets.json", list.dump(2) + "\n");
}

void cmd_validate(const Json& cfg, RunContext& ctx) {
    const InitialData d = resolve_data(cfg);
    const ValidationReport r = validate_initial_data(d, positive_int(cfg, "grid", 4096, 16), get<double>(cfg, "tol", kStructuralTol));
    Json out;
    out["dimension"] = d.dimension();
    out["period"] = d.period();
    out["report"] = to_json(r);
    if (r.passed && d.dimension() == 2 && !d.singular_preset) out["rotation_index"] = rotation_index(d);
    ctx.write("validation.json", out.dump(2) + "\n");
    ctx.write("data.json", to_json(d).dump(2) + "\n");
    ctx.check("validated", r.passed);
    if (!r.passed) throw ValidationError("initial data failed validation (see validation.json)");
}

void cmd_evolve(const Json& cfg, RunContext& ctx) {
    const InitialData d = resolve_data(cfg);
    const double tmax = get<double>(cfg, "tmax", 1.0);
    const int nt = positive_int(cfg, "nt", 65, 2), ns = positive_int(cfg, "grid", 256, 16);
    const Surface surf(d);
    const auto rows = worldsheet_export(surf, 0.0, tmax, nt, ns);
    CsvTable t;
    t.header = {"t", "s"};
    for (auto& h : xyz_header(d.dimension())) t.header.push_back(h);
    for (const auto& r : rows) {
        std::vector<std::string> row = {num(r.t), num(r.s)};
        for (auto& c : point_cells(r.x, d.dimension())) row.push_back(c);
        t.rows.push_back(std::move(row));
    }
    ctx.write("worldsheet.csv", t.str());
    std::vector<double> times;
    for (int i = 0; i < nt; ++i) times.push_back(nt == 1 ? 0.0 : tmax * i / (nt - 1));
    const GaugeReport g = gauge_preservation(surf, times, ns);
    ctx.write("gauge.json", Json({{"orthogonality", g.orthogonality}, {"normalization", g.normalization}}).dump(2) + "\n");
    ctx.check("gauge_preserved", g.orthogonality <= 1e-8 && g.normalization <= 1e-8);
}

void cmd_slices(const Json& cfg, RunContext& ctx) {
    const InitialData d = resolve_data(cfg);
    const std::vector<double> times = get<std::vector<double>>(cfg, "times", {0.0, 0.5, 1.0});
    const int ns = positive_int(cfg, "grid", 256, 16);
    const Surface surf(d);
    CsvTable t;
    t.header = {"t", "s"};
    for (auto& h : xyz_header(d.dimension())) t.header.push_back(h);
    t.header.push_back("speed");
    for (double tt : times) {
        const Slice sl = time_slice(surf, tt, ns);
        for (int j = 0; j < ns; ++j) {
            std::vector<std::string> row = {num(tt), num(sl.s[j])};
            for (auto& c : point_cells(sl.position[j], d.dimension())) row.push_back(c);
            row.push_back(num(sl.speed[j]));
            t.rows.push_back(std::move(row));
        }
    }
    ctx.write("slices.csv", t.str());
}

void cmd_detect(const Json& cfg, RunContext& ctx) {
    const InitialData d = resolve_data(cfg);
    const std::vector<SingularEvent> evs = detect_events(d, positive_int(cfg, "grid", 2048, 64));
    Json out;
    out["t0"] = evs.front().t0;
    out["period"] = d.period();
    out["events"] = Json::array();
    double worst = 0.0;
    for (const auto& e : evs) {
        out["events"].push_back(to_json(e));
        worst = std::max(worst, e.residual);
    }
    ctx.write("events.json", out.dump(2) + "\n");
    const double tol = get<double>(cfg, "tol", kEventTol);
    ctx.check("residual", worst <= tol);
    ctx.check("t0_in_window", evs.front().t0 >= 0.0 && evs.front().t0 <= d.period() / 2 + 1e-12);
}

void cmd_classify(const Json& cfg, RunContext& ctx) {
    const InitialData d = resolve_data(cfg);
    require_planar(d, "classify");
    const Surface surf(d);
    std::vector<SingularEvent> evs;
    if (cfg.contains("t")) {
        const double t = get<double>(cfg, "t", 0.0);
        for (double s : singular_set_at_time(surf, t, positive_int(cfg, "grid", 4096, 64))) evs.push_back(make_event(surf, t, s));
    } else {
        evs = detect_events(d, positive_int(cfg, "grid", 2048, 64));
    }
    Json out = Json::array();
    for (const auto& e : evs) {
        Json j = to_json(e);
        j["kind"] = to_string(classify(surf, e));
        out.push_back(j);
    }
    ctx.write("classification.json", out.dump(2) + "\n");
}

CsvTable trace_csv(const CurveTrace& tr, const std::string& param, const std::string& value) {
    CsvTable t;
    t.header = {param, value, "residual", "speed"};
    for (size_t i = 0; i < tr.param.size(); ++i)
        t.rows.push_back({num(tr.param[i]), num(tr.value[i]), num(tr.residual[i]), num(tr.speed[i])});
    return t;
}

void cmd_local_model(const Json& cfg, RunContext& ctx) {
    const InitialData d = resolve_data(cfg);
    const Surface surf(d);
    const std::vector<SingularEvent> evs = detect_events(d, 2048);
    Json out = Json::array();
    bool curves_ok = true;
    for (size_t i = 0; i < evs.size(); ++i) {
        const SingularEvent& e = evs[i];
        Json j;
        j["event"] = to_json(e);
        try {
            const LocalModel m = local_model(surf, e);
            j["model"] = to_json(m);
            if (m.motion == MotionKind::self_similar) {
                const std::vector<int> scales = {4, 8, 16, 32, 64};
                j["self_similar_scales"] = scales;
                j["self_similar_residual"] = self_similar_residual(surf, e, scales);
            }
        } catch (const ValidationError& ex) {
            j["model"] = nullptr;
            j["model_error"] = ex.what();
        }
        const std::string tag = std::to_string(i);
        if (e.kind == SingularKind::ordinary_cusp) {
            const CurveTrace tr = propagation_curve(surf, e, get<double>(cfg, "span", 0.5), get<double>(cfg, "step", 0.01));
            ctx.write("propagation_" + tag + ".csv", trace_csv(tr, "t", "S").str());
            j["propagation"] = {{"max_residual", tr.max_residual}, {"max_null_deviation", tr.max_null_deviation},
                                {"complete", tr.complete}, {"stop_reason", tr.stop_reason}};
            curves_ok = curves_ok && tr.max_null_deviation <= 1e-6;
        } else if (e.kind == SingularKind::degenerate_43) {
            const FormationTrace fr = formation_curve(surf, e, get<double>(cfg, "span", 0.2), get<double>(cfg, "step", 1e-3));
            ctx.write("formation_" + tag + ".csv", trace_csv(fr.curve, "s", "T").str());
            j["formation"] = {{"t_second", fr.t_second}, {"t_second_numeric", fr.t_second_numeric},
                              {"future_directed", fr.future_directed}, {"max_residual", fr.curve.max_residual},
                              {"max_null_deviation", fr.curve.max_null_deviation}, {"complete", fr.curve.complete}};
            curves_ok = curves_ok && std::abs(fr.t_second - fr.t_second_numeric) <= 1e-4;
        }
        out.push_back(j);
    }
    ctx.write("local_model.json", out.dump(2) + "\n");
    ctx.check("curves_consistent", curves_ok);
}

void cmd_gauge_fix(const Json& cfg, RunContext& ctx) {
    const int modes = (cfg.contains("curve") ? 1 : 0) + (cfg.contains("patch") ? 1 : 0) +
                      ((cfg.contains("preset") || cfg.contains("data") || cfg.contains("random")) ? 1 : 0);
    if (modes != 1) throw ValidationError("gauge-fix needs exactly one of 'curve', 'patch' or a data source");
    if (cfg.contains("curve")) {
        if (!cfg.contains("normal_speed")) throw ValidationError("gauge-fix: 'curve' needs 'normal_speed'");
        const ArbitraryCurveData in{periodic_from_json(cfg["curve"]), periodic_from_json(cfg["normal_speed"])};
        const InitialData d = orthogonal_gauge_initial_data(in);
        const ValidationReport r = validate_initial_data(d);
        ctx.write("initial_data.json", to_json(d).dump(2) + "\n");
        ctx.write("validation.json", to_json(r).dump(2) + "\n");
        ctx.check("validated", r.normalization <= kRoundTripTol && r.orthogonality <= kRoundTripTol);
        return;
    }
    ArbitrarySurfacePatch patch;
    Json report;
    std::function<Vec3(double, double)> exact;
    if (cfg.contains("patch")) {
        patch = read_patch_csv(get<std::string>(cfg, "patch", ""), get<double>(cfg, "period", 2.0 * std::numbers::pi));
    } else {
        // Demonstration patch: the exact surface under a time-dependent monotone reparametrization.
        auto surf = std::make_shared<Surface>(resolve_data(cfg));
        const double A = get<double>(cfg, "reparam_amplitude", 0.3);
        if (!(std::abs(A) < 1.0)) throw ValidationError("gauge-fix: reparam_amplitude must be below 1 in magnitude");
        const double L = surf->period(), w = 2.0 * std::numbers::pi / L;
        const double tmax = get<double>(cfg, "tmax", 0.5);
        const int nt = positive_int(cfg, "nt", 129, 9), ns = positive_int(cfg, "grid", 512, 18);
        auto phi = [A, w](double t, double sg) { return sg + A * std::sin(w * sg + t) / w; };
        patch = sample_patch([surf, phi](double t, double sg) { return surf->position(t, phi(t, sg)); }, 0.0,
                             tmax / (nt - 1), nt, ns, L);
        exact = [surf](double t, double s) { return surf->position(t, s); };
    }
    const OrthogonalPatch op = reparametrize_surface(patch);
    const GaugeResiduals g = gauge_residuals(op.patch);
    report["orthogonality"] = g.orthogonality;
    report["normalization"] = g.normalization;
    report["conservation"] = g.conservation;
    report["period"] = op.patch.period;
    double haus = 0.0;
    for (int i = 0; i < patch.nt; i += std::max(1, patch.nt / 8)) {
        std::vector<Vec3> a(patch.x.begin() + static_cast<long>(i) * patch.ns, patch.x.begin() + static_cast<long>(i + 1) * patch.ns);
        std::vector<Vec3> b(op.patch.x.begin() + static_cast<long>(i) * op.patch.ns,
                            op.patch.x.begin() + static_cast<long>(i + 1) * op.patch.ns);
        haus = std::max(haus, slice_hausdorff(a, b));
    }
    report["hausdorff_to_input"] = haus;
    ctx.write("gauge_patch.csv", patch_csv(op.patch).str());
    ctx.write("gauge_residuals.json", report.dump(2) + "\n");
    ctx.check("gauge_residuals", g.orthogonality <= 1e-6 && g.normalization <= 1e-6);
    ctx.check("hausdorff", haus <= 1e-6);
}

void cmd_bound(const Json& cfg, RunContext& ctx) {
    OpenArc arc;
    if (cfg.contains("shallow")) {
        if (cfg.contains("preset") || cfg.contains("data") || cfg.contains("random"))
            throw ValidationError("bound: 'shallow' excludes a data source");
        const Json& sh = cfg["shallow"];
        for (const auto& [key, value] : sh.items()) {
            (void)value;
            if (key != "epsilon" && key != "delta" && key != "length") throw ValidationError("shallow: unknown key '" + key + "'");
        }
        const double eps = get<double>(sh, "epsilon", 0.01), delta = get<double>(sh, "delta", 0.0);
        const double len = get<double>(sh, "length", 1.0);
        // psi = eps s, psitilde = pi - eps s - delta: |beta| = |sin(eps s + delta / 2)|.
        arc = OpenArc::from_null_angles([eps](double s, int m) { return m == 0 ? eps * s : (m == 1 ? eps : 0.0); },
                                        [eps, delta](double s, int m) {
                                            return m == 0 ? std::numbers::pi - eps * s - delta : (m == 1 ? -eps : 0.0);
                                        },
                                        0.0, len);
    } else {
        const InitialData d = resolve_data(cfg);
        require_planar(d, "bound");
        arc = OpenArc::restrict(d, get<double>(cfg, "p", 0.0), get<double>(cfg, "q", 1.0));
    }
    const Certificate c = existence_guarantee(arc);
    Json out = to_json(c);
    if (c.issued) {
        const VerificationReport v = verify_guarantee(arc, c, positive_int(cfg, "grid", 1024, 2));
        out["verification"] = {{"min_speed", v.min_speed}, {"floor", v.floor}, {"t", v.t_at_min}, {"s", v.s_at_min},
                               {"passed", v.passed}, {"grid", v.grid}};
        ctx.check("certificate_sound", v.passed);
    }
    ctx.write("certificate.json", out.dump(2) + "\n");
}

PeriodicFunction scalar_field(const Json& cfg, const std::string& key, double period, double fallback) {
    if (!cfg.contains(key)) {
        PeriodicFunction f(period, 1, 0);
        f.cos(0, 0) = fallback;
        return f;
    }
    if (cfg[key].is_number()) {
        PeriodicFunction f(period, 1, 0);
        f.cos(0, 0) = cfg[key].get<double>();
        return f;
    }
    return periodic_from_json(cfg[key]);
}

void cmd_curved(const Json& cfg, RunContext& ctx) {
    ReducedBackgroundData d;
    d.period = get<double>(cfg, "period", 2.0 * std::numbers::pi);
    if (cfg.contains("homogeneous") && (cfg.contains("M0") || cfg.contains("N0")))
        throw ValidationError("curved: 'homogeneous' excludes M0/N0");
    const double m = get<double>(cfg, "homogeneous", 1.0);
    d.M0 = scalar_field(cfg, "M0", d.period, m);
    d.N0 = scalar_field(cfg, "N0", d.period, 0.0);
    d.u0 = scalar_field(cfg, "u0", d.period, 0.0);
    d.v0 = scalar_field(cfg, "v0", d.period, 0.0);
    CurvedOptions opt;
    opt.cfl = get<double>(cfg, "cfl", opt.cfl);
    opt.blow_up_threshold = get<double>(cfg, "threshold", opt.blow_up_threshold);
    opt.output_interval = get<double>(cfg, "output_interval", opt.output_interval);
    const HypothesisReport h = hypothesis_check(d);
    const CurvedTrajectory tr = evolve_u(d, get<double>(cfg, "tmax", 2.0), positive_int(cfg, "grid", 512, 64), opt);
    CsvTable t;
    t.header = {"tau", "w", "w_prime", "max_u", "min_u", "max_exp"};
    for (const auto& s : tr.states)
        t.rows.push_back({num(s.tau), num(s.w), num(s.w_prime), num(s.max_u), num(s.min_u), num(s.max_exp)});
    ctx.write("trajectory.csv", t.str());
    const MonitorReport mon = mean_monitor(tr);
    Json out;
    out["hypothesis"] = {{"a_lb", h.a_lb}, {"xi_at_min", h.xi_at_min}, {"plus_nonzero", h.plus_nonzero},
                         {"minus_nonzero", h.minus_nonzero}, {"holds", h.holds}};
    out["dtau"] = tr.dtau;
    out["time_flipped"] = tr.time_flipped;
    out["blew_up"] = tr.blew_up;
    if (tr.blew_up) out["blow_up_bracket"] = {tr.blow_up_lo, tr.blow_up_hi};
    out["monitor"] = {{"applicable", mon.applicable}, {"max_wpp_excess", mon.max_wpp_excess},
                      {"wpp_bound", mon.wpp_bound}, {"wp_decreasing", mon.wp_decreasing},
                      {"energy_nondecreasing", mon.energy_nondecreasing}, {"linear_deviation", mon.linear_deviation},
                      {"passed", mon.passed}};
    if (h.holds) {
        const CurvedState& s0 = tr.states.front();
        const double bound = blow_up_bound(h.a_lb, s0.w, s0.w_prime);
        out["tau_bound"] = bound;
        if (tr.blew_up) ctx.check("blow_up_before_bound", tr.blow_up_hi <= bound + opt.output_interval);
    }
    ctx.check("monitor", mon.passed);
    ctx.write("curved.json", out.dump(2) + "\n");
}

void cmd_r3(const Json& cfg, RunContext& ctx) {
    SpaceCurve3 curve;
    Json out;
    if (cfg.contains("vertices")) {
        if (cfg.contains("preset") || cfg.contains("data") || cfg.contains("random"))
            throw ValidationError("r3: 'vertices' excludes a data source");
        const auto v = get<std::vector<std::vector<double>>>(cfg, "vertices", {});
        if (v.size() != 4) throw ValidationError("r3: need four vertices");
        TetraSmoothingSpec spec;
        for (int k = 0; k < 4; ++k) {
            if (v[k].size() != 3) throw ValidationError("r3: vertices are 3-vectors");
            spec.vertices[k] = Vec3(v[k][0], v[k][1], v[k][2]);
        }
        spec.radius = get<double>(cfg, "radius", 0.1);
        const TetraCurve tc = build_tetra_curve(spec);
        curve = tc.curve;
        out["corners"] = Json::array();
        for (const auto& c : tc.corners)
            out["corners"].push_back({{"planarity", c.planarity}, {"min_increment", c.min_increment}, {"turn", c.turn}});
    } else {
        Json c = cfg;
        if (!c.contains("preset") && !c.contains("data") && !c.contains("random")) c["preset"] = "tetra";
        const InitialData d = resolve_data(c);
        if (d.dimension() != 3) throw ValidationError("r3: data must live in R^3");
        for (const Vec3& b : d.beta.sample(256))
            if (b.norm() > kStructuralTol) throw ValidationError("r3: initial velocity must vanish");
        curve.alpha = d.alpha;
    }
    const int grid = positive_int(cfg, "grid", 512, 8);
    const MarginResult m = antipodal_margin(curve, grid);
    const double periods = get<double>(cfg, "periods", 10.0);
    const SpeedMin sm = min_speed_search(curve, periods * curve.period(), grid);
    out["period"] = curve.period();
    out["arclength_defect"] = curve.arclength_defect();
    out["antipodal_margin"] = m.margin;
    out["s1"] = m.s1;
    out["s2"] = m.s2;
    out["regularity_margin"] = 0.5 * m.margin;
    out["min_speed"] = sm.min_speed;
    out["min_speed_t"] = sm.t;
    out["min_speed_s"] = sm.s;
    ctx.write("margin.json", out.dump(2) + "\n");
    CsvTable t;
    t.header = {"s", "x", "y", "z"};
    for (int j = 0; j < 1024; ++j) {
        const double s = curve.period() * j / 1024;
        const Vec3 x = curve.alpha.eval(s);
        t.rows.push_back({num(s), num(x.x()), num(x.y()), num(x.z())});
    }
    ctx.write("curve.csv", t.str());
    ctx.check("half_margin_identity", std::abs(sm.min_speed - 0.5 * m.margin) <= 1e-6);
}

void cmd_sweep(const Json& cfg, RunContext& ctx) {
    const int n = positive_int(cfg, "seeds", 100);
    const std::uint64_t offset = get<std::uint64_t>(cfg, "seed_offset", 0);
    const int modes = positive_int(cfg, "modes", 3);
    const double amp = get<double>(cfg, "amplitude", 0.5);
    SearchOptions opt;
    opt.grid = positive_int(cfg, "grid", 2048, 64);
    struct Result {
        Json report;
        std::vector<std::string> row;
        int error = 0;  // 0 ok, 2 validation, 3 numerical
        std::string message;
    };
    std::vector<Result> results(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const std::uint64_t seed = offset + static_cast<std::uint64_t>(i);
        Result& r = results[i];
        try {
            const InitialData d = random_initial_data(seed, modes, amp);
            const std::vector<SingularEvent> evs = first_singularities(d, opt);
            const SingularEvent& e = evs.front();
            r.report["seed"] = seed;
            r.report["period"] = d.period();
            r.report["events"] = Json::array();
            for (const auto& ev : evs) r.report["events"].push_back(to_json(ev));
            std::string p = "nan", q = "nan", k0 = "nan";
            try {
                const LocalModel m = local_model(d, e);
                r.report["model"] = to_json(m);
                p = num(m.p);
                q = num(m.q);
                k0 = num(m.k0);
            } catch (const ValidationError& ex) {
                r.report["model"] = nullptr;
            }
            r.row = {std::to_string(seed), num(e.t0), to_string(e.kind), p, q, k0};
        } catch (const ValidationError& ex) {
            r.error = 2;
            r.message = ex.what();
        } catch (const NumericalError& ex) {
            r.error = 3;
            r.message = ex.what();
        }
    }
    CsvTable agg;
    agg.header = {"seed", "t0", "kind", "p", "q", "k0"};
    int worst = 0;
    std::string first_message;
    for (int i = 0; i < n; ++i) {
        const Result& r = results[i];
        const std::uint64_t seed = offset + static_cast<std::uint64_t>(i);
        if (r.error) {
            worst = std::max(worst, r.error);
            if (first_message.empty()) first_message = "seed " + std::to_string(seed) + ": " + r.message;
            continue;
        }
        ctx.write("runs/seed_" + std::to_string(seed) + ".json", r.report.dump(2) + "\n");
        agg.rows.push_back(r.row);
    }
    ctx.write("aggregate.csv", agg.str());
    ctx.check("all_runs_found_singularity", worst == 0);
    if (worst == 2) throw ValidationError(first_message);
    if (worst == 3) throw NumericalError(first_message);
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"presets", "validate", "evolve", "slices", "detect", "classify",
                                                   "local-model", "gauge-fix", "bound", "curved", "r3", "sweep"};
    return names;
}

void check_schema(const std::string& command, const Json& config) {
    const auto it = schemas().find(command);
    if (it == schemas().end()) throw ValidationError("unknown command: " + command);
    if (!config.is_object()) throw ValidationError("config must be a JSON object");
    for (const auto& [key, value] : config.items()) {
        (void)value;
        if (key == "kind") continue;
        if (it->second.count(key)) continue;
        if (kDataKeys.count(key) && (uses_data(command) || command == "gauge-fix")) continue;
        throw ValidationError("config for '" + command + "': unknown key '" + key + "'");
    }
    if (!config.contains("kind") || !config["kind"].is_string() || config["kind"].get<std::string>() != command)
        throw ValidationError("config 'kind' must be \"" + command + "\"");
}

void run_command(const std::string& command, const Json& config, RunContext& ctx) {
    check_schema(command, config);
    if (command == "presets") return cmd_presets(config, ctx);
    if (command == "validate") return cmd_validate(config, ctx);
    if (command == "evolve") return cmd_evolve(config, ctx);
    if (command == "slices") return cmd_slices(config, ctx);
    if (command == "detect") return cmd_detect(config, ctx);
    if (command == "classify") return cmd_classify(config, ctx);
    if (command == "local-model") return cmd_local_model(config, ctx);
    if (command == "gauge-fix") return cmd_gauge_fix(config, ctx);
    if (command == "bound") return cmd_bound(config, ctx);
    if (command == "curved") return cmd_curved(config, ctx);
    if (command == "r3") return cmd_r3(config, ctx);
    if (command == "sweep") return cmd_sweep(config, ctx);
    throw ValidationError("unknown command: " + command);
}

}  // namespace wscli
