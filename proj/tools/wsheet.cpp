#include "commands.hpp"

#include "ws/errors.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

namespace {

using wscli::Json;

struct Flags {
    std::string config, preset, out = "wsheet_out";
    std::optional<int> seeds, grid, modes;
    std::optional<double> tmax, tol, amplitude, t;
    std::optional<std::uint64_t> seed;
};

Json build_config(const std::string& command, const Flags& f) {
    Json cfg = Json::object();
    if (!f.config.empty()) {
        cfg = ws::read_json(f.config);
        if (!cfg.is_object()) throw ws::ValidationError("config must be a JSON object");
        if (!cfg.contains("kind")) throw ws::ValidationError("config needs a 'kind' key");
    }
    if (!cfg.contains("kind")) cfg["kind"] = command;
    if (!f.preset.empty()) cfg["preset"] = f.preset;
    if (f.seeds) cfg["seeds"] = *f.seeds;
    if (f.grid) cfg["grid"] = *f.grid;
    if (f.tmax) cfg["tmax"] = *f.tmax;
    if (f.tol) cfg["tol"] = *f.tol;
    if (f.t) cfg["t"] = *f.t;
    if (command == "sweep") {
        if (f.modes) cfg["modes"] = *f.modes;
        if (f.amplitude) cfg["amplitude"] = *f.amplitude;
        if (f.seed) cfg["seed_offset"] = *f.seed;
    } else if (f.seed || f.modes || f.amplitude) {
        Json& r = cfg["random"];
        if (!r.is_object()) r = Json::object();
        if (f.seed) r["seed"] = *f.seed;
        if (f.modes) r["modes"] = *f.modes;
        if (f.amplitude) r["amplitude"] = *f.amplitude;
    }
    return cfg;
}

int run(const std::string& command, const Flags& f) {
    const auto start = std::chrono::steady_clock::now();
    Json manifest;
    manifest["tool"] = "wsheet";
    manifest["version"] = WS_VERSION;
    manifest["command"] = command;
    int code = 0;
    std::string error;
    std::optional<wscli::RunContext> ctx;
    try {
        const Json cfg = build_config(command, f);
        manifest["config"] = cfg;
        manifest["config_sha256"] = ws::sha256_hex(cfg.dump());
        ctx.emplace(f.out);
        wscli::run_command(command, cfg, *ctx);
    } catch (const ws::ValidationError& e) {
        code = 2;
        error = e.what();
    } catch (const ws::NumericalError& e) {
        code = 3;
        error = e.what();
    } catch (const ws::IoError& e) {
        code = 4;
        error = e.what();
    } catch (const std::exception& e) {
        code = 1;
        error = e.what();
    }
    if (code) std::cerr << "wsheet " << command << ": " << error << "\n";
    if (!ctx) return code;
    manifest["status"] = code ? "error" : "ok";
    manifest["exit_code"] = code;
    if (code) manifest["error"] = error;
    Json outs = Json::array();
    for (const auto& o : ctx->outputs()) outs.push_back({{"file", o.name}, {"sha256", o.sha256}});
    manifest["outputs"] = outs;
    manifest["checks"] = ctx->checks();
    manifest["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
        ws::write_json((std::filesystem::path(f.out) / "manifest.json").string(), manifest);
    } catch (const ws::IoError& e) {
        std::cerr << "wsheet " << command << ": " << e.what() << "\n";
        return code ? code : 4;
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wsheet: timelike minimal surfaces in Minkowski space from closed-string initial data"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(WS_VERSION));
    Flags flags;
    std::string chosen;
    for (const std::string& name : wscli::command_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " command");
        sub->add_option("--config", flags.config, "JSON config; its 'kind' must match the command");
        sub->add_option("--out", flags.out, "output directory")->capture_default_str();
        sub->add_option("--preset", flags.preset, "named initial data");
        sub->add_option("--grid", flags.grid, "grid resolution");
        sub->add_option("--tmax", flags.tmax, "final time");
        sub->add_option("--tol", flags.tol, "tolerance");
        sub->add_option("--time", flags.t, "time slice (classify)");
        sub->add_option("--seed", flags.seed, "random data seed (sweep: first seed)");
        sub->add_option("--seeds", flags.seeds, "number of seeds (sweep)");
        sub->add_option("--modes", flags.modes, "random data modes");
        sub->add_option("--amplitude", flags.amplitude, "random data amplitude");
        sub->callback([&chosen, name] { chosen = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return run(chosen, flags);
}
