#include "ws/io.hpp"

#include "ws/errors.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ws {

Json to_json(const PeriodicFunction& f) {
    Json j;
    j["period"] = f.period();
    j["dim"] = f.dim();
    j["modes"] = f.modes();
    Json cs = Json::array(), ss = Json::array();
    for (int c = 0; c < f.dim(); ++c) {
        Json cc = Json::array(), sc = Json::array();
        for (int k = 0; k <= f.modes(); ++k) {
            cc.push_back(f.cos(c, k));
            sc.push_back(f.sin(c, k));
        }
        cs.push_back(cc);
        ss.push_back(sc);
    }
    j["cos"] = cs;
    j["sin"] = ss;
    j["drift"] = Json::array();
    for (int c = 0; c < f.dim(); ++c) j["drift"].push_back(f.drift()[c]);
    return j;
}

PeriodicFunction periodic_from_json(const Json& j) {
    try {
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (key != "period" && key != "dim" && key != "modes" && key != "cos" && key != "sin" && key != "drift")
                throw ValidationError("periodic function: unknown key '" + key + "'");
        }
        const double period = j.at("period").get<double>();
        const int dim = j.at("dim").get<int>();
        const int modes = j.at("modes").get<int>();
        if (!(period > 0.0) || dim < 1 || dim > 3 || modes < 0)
            throw ValidationError("periodic function: bad period, dim or modes");
        PeriodicFunction f(period, dim, modes);
        const Json& cs = j.at("cos");
        const Json& ss = j.at("sin");
        if (cs.size() != static_cast<size_t>(dim) || ss.size() != static_cast<size_t>(dim))
            throw ValidationError("periodic function: coefficient arrays do not match dim");
        for (int c = 0; c < dim; ++c) {
            if (cs[c].size() != static_cast<size_t>(modes + 1) || ss[c].size() != static_cast<size_t>(modes + 1))
                throw ValidationError("periodic function: coefficient arrays do not match modes");
            for (int k = 0; k <= modes; ++k) {
                f.cos(c, k) = cs[c][k].get<double>();
                f.sin(c, k) = ss[c][k].get<double>();
            }
        }
        if (j.contains("drift")) {
            if (j["drift"].size() != static_cast<size_t>(dim)) throw ValidationError("periodic function: bad drift");
            for (int c = 0; c < dim; ++c) f.drift()[c] = j["drift"][c].get<double>();
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("periodic function: ") + e.what());
    }
}

Json to_json(const InitialData& d) {
    Json j;
    j["alpha"] = to_json(d.alpha);
    j["beta"] = to_json(d.beta);
    j["singular_preset"] = d.singular_preset;
    return j;
}

InitialData initial_data_from_json(const Json& j) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "alpha" && key != "beta" && key != "singular_preset")
            throw ValidationError("initial data: unknown key '" + key + "'");
    }
    if (!j.contains("alpha") || !j.contains("beta")) throw ValidationError("initial data: alpha and beta required");
    InitialData d{periodic_from_json(j["alpha"]), periodic_from_json(j["beta"]), j.value("singular_preset", false)};
    return d;
}

Json to_json(const NullPair& p) {
    Json j;
    j["psi"] = to_json(p.psi);
    j["psitilde"] = to_json(p.psitilde);
    j["winding_a"] = p.winding_a;
    j["winding_b"] = p.winding_b;
    return j;
}

NullPair null_pair_from_json(const Json& j) {
    try {
        NullPair p;
        p.psi = periodic_from_json(j.at("psi"));
        p.psitilde = periodic_from_json(j.at("psitilde"));
        p.winding_a = j.at("winding_a").get<int>();
        p.winding_b = j.at("winding_b").get<int>();
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("null pair: ") + e.what());
    }
}

Json to_json(const SingularEvent& e) {
    Json j;
    j["t0"] = e.t0;
    j["s0"] = e.s0;
    j["u0"] = e.u0;
    j["v0"] = e.v0;
    j["zeta"] = e.zeta;
    j["eta"] = e.eta;
    j["zeta_prime"] = e.zeta_prime;
    j["eta_prime"] = e.eta_prime;
    j["position"] = {e.position.x(), e.position.y()};
    j["residual"] = e.residual;
    j["kind"] = to_string(e.kind);
    return j;
}

Json to_json(const LocalModel& m) {
    Json j;
    j["e"] = {m.e.x(), m.e.y()};
    j["p"] = m.p;
    j["q"] = m.q;
    j["u3"] = m.u3;
    j["k0"] = std::isnan(m.k0) ? Json(nullptr) : Json(m.k0);
    j["motion"] = to_string(m.motion);
    j["rotation_rate"] = m.rotation_rate;
    j["center_offset"] = m.center_offset;
    return j;
}

Json to_json(const Certificate& c) {
    Json j;
    j["issued"] = c.issued;
    j["j"] = c.j;
    j["load"] = c.load;
    j["length"] = c.length;
    j["T"] = c.T;
    j["floor"] = c.floor;
    j["omega"] = {c.omega_p, c.omega_q};
    return j;
}

Json to_json(const ValidationReport& r) {
    Json j;
    j["orthogonality"] = r.orthogonality;
    j["normalization"] = r.normalization;
    j["closure"] = r.closure;
    j["min_speed"] = r.min_speed;
    j["max_beta"] = r.max_beta;
    j["singular_preset"] = r.singular_preset;
    j["regular"] = r.regular;
    j["passed"] = r.passed;
    j["grid"] = r.grid;
    return j;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

Json read_json(const std::string& path) {
    const std::string text = read_text(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
}

std::string CsvTable::str() const {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += "\n";
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
        out += "\n";
    }
    return out;
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw IoError("sha256 failed");
    std::ostringstream ss;
    for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return ss.str();
}

ArbitrarySurfacePatch read_patch_csv(const std::string& path, double period) {
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("patch CSV: empty file");
    const bool has_z = line.find(",z") != std::string::npos;
    if (line.rfind("t,s,x,y", 0) != 0) throw ValidationError("patch CSV: header must be t,s,x,y[,z]");
    std::vector<double> ts, ss;
    std::vector<Vec3> xs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ls, cell, ',')) {
            double x = 0.0;
            const auto r = std::from_chars(cell.data(), cell.data() + cell.size(), x);
            if (r.ec != std::errc()) throw ValidationError("patch CSV: bad number '" + cell + "'");
            v.push_back(x);
        }
        if (v.size() != (has_z ? 5u : 4u)) throw ValidationError("patch CSV: wrong column count");
        ts.push_back(v[0]);
        ss.push_back(v[1]);
        xs.emplace_back(v[2], v[3], has_z ? v[4] : 0.0);
    }
    if (ts.size() < 2) throw ValidationError("patch CSV: too few rows");
    int ns = 1;
    while (ns < static_cast<int>(ts.size()) && ts[ns] == ts[0]) ++ns;
    if (ts.size() % ns != 0) throw ValidationError("patch CSV: rows do not form a rectangular grid");
    ArbitrarySurfacePatch p;
    p.ns = ns;
    p.nt = static_cast<int>(ts.size()) / ns;
    p.t0 = ts[0];
    p.dt = p.nt > 1 ? ts[ns] - ts[0] : 0.0;
    p.period = period;
    p.x = std::move(xs);
    for (int i = 0; i < p.nt; ++i)
        for (int j = 0; j < ns; ++j) {
            const size_t idx = static_cast<size_t>(i) * ns + j;
            if (std::abs(ts[idx] - p.t(i)) > 1e-9 * (1.0 + std::abs(p.t(i))) ||
                std::abs(ss[idx] - p.s(j)) > 1e-9 * (1.0 + period))
                throw ValidationError("patch CSV: grid is not uniform (t-major, s in [0, period))");
        }
    return p;
}

CsvTable patch_csv(const ArbitrarySurfacePatch& patch) {
    CsvTable t;
    t.header = {"t", "s", "x", "y"};
    for (int i = 0; i < patch.nt; ++i)
        for (int j = 0; j < patch.ns; ++j) {
            const Vec3& x = patch.at(i, j);
            t.rows.push_back({format_double(patch.t(i)), format_double(patch.s(j)), format_double(x.x()),
                              format_double(x.y())});
        }
    return t;
}

}  // namespace ws
