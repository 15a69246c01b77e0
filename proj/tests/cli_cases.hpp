#pragma once

#include "ws/io.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <numbers>
#include <string>
#include <vector>

// Shared wsheet invocations for the CLI tests and the acceptance determinism check.
namespace cli {

namespace fs = std::filesystem;
using ws::Json;

struct Case {
    std::string name;
    std::string command;
    Json config;
};

inline Json ellipse_gauge_config() {
    ws::PeriodicFunction c(2 * std::numbers::pi, 2, 1);
    c.cos(0, 1) = 2.0;
    c.sin(1, 1) = 1.0;
    auto normal = [](double s) {
        const ws::Vec2 n = ws::Vec2(std::cos(s), 2.0 * std::sin(s)).normalized();
        return ws::Vec3(0.2 * n.x(), 0.2 * n.y(), 0.0);
    };
    const ws::PeriodicFunction ns = ws::fit_periodic(2 * std::numbers::pi, 2, normal, 1e-14, 1024);
    return {{"kind", "gauge-fix"}, {"curve", ws::to_json(c.resized(ns.modes()))}, {"normal_speed", ws::to_json(ns)}};
}

inline std::vector<Case> cases() {
    return {
        {"presets", "presets", {{"kind", "presets"}}},
        {"validate", "validate", {{"kind", "validate"}, {"preset", "zero-index"}}},
        {"evolve", "evolve", {{"kind", "evolve"}, {"preset", "circle"}, {"tmax", 1.0}, {"nt", 9}, {"grid", 32}}},
        {"slices", "slices",
         {{"kind", "slices"}, {"random", {{"seed", 4}}}, {"times", {0.0, 0.5}}, {"grid", 64}}},
        {"detect", "detect", {{"kind", "detect"}, {"random", {{"seed", 7}}}}},
        {"classify", "classify", {{"kind", "classify"}, {"preset", "swallowtail"}, {"t", 0.03}}},
        {"local-model-cusp", "local-model", {{"kind", "local-model"}, {"preset", "rotation-l3-1"}}},
        {"local-model-43", "local-model", {{"kind", "local-model"}, {"preset", "swallowtail"}}},
        {"gauge-fix-surface", "gauge-fix",
         {{"kind", "gauge-fix"}, {"random", {{"seed", 2}}}, {"tmax", 0.25}, {"nt", 33}, {"grid", 128}}},
        {"gauge-fix-curve", "gauge-fix", ellipse_gauge_config()},
        {"bound-shallow", "bound",
         {{"kind", "bound"}, {"shallow", {{"epsilon", 0.02}, {"delta", 0.1}, {"length", 1.0}}}, {"grid", 256}}},
        {"bound-circle", "bound", {{"kind", "bound"}, {"preset", "circle"}, {"p", 0.0}, {"q", 1.0}}},
        {"curved", "curved", {{"kind", "curved"}, {"homogeneous", 1.0}, {"tmax", 2.0}, {"grid", 128}}},
        {"r3", "r3", {{"kind", "r3"}, {"preset", "tangent-wave"}, {"periods", 2.0}, {"grid", 256}}},
        {"sweep", "sweep", {{"kind", "sweep"}, {"seeds", 6}, {"modes", 3}}},
    };
}

// Runs wsheet and returns its exit status.
inline int run(const std::string& args) {
    const std::string cmd = std::string(WSHEET_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline int run_case(const Case& c, const fs::path& out) {
    fs::remove_all(out);
    fs::create_directories(out.parent_path());
    const fs::path cfg = out.string() + ".json";
    ws::write_json(cfg.string(), c.config);
    return run(c.command + " --config " + cfg.string() + " --out " + out.string());
}

// File name -> content for every output under dir; the manifest loses its wall time.
inline std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const std::string rel = fs::relative(e.path(), dir).string();
        std::string text = ws::read_text(e.path().string());
        if (rel == "manifest.json") {
            Json m = Json::parse(text);
            m.erase("wall_time_s");
            text = m.dump();
        }
        out[rel] = std::move(text);
    }
    return out;
}

}  // namespace cli
