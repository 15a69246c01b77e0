#pragma once

#include "ws/bounds.hpp"
#include "ws/curve_core.hpp"
#include "ws/gauge.hpp"
#include "ws/singularity.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ws {

using Json = nlohmann::ordered_json;

Json to_json(const PeriodicFunction& f);
PeriodicFunction periodic_from_json(const Json& j);
Json to_json(const InitialData& d);
InitialData initial_data_from_json(const Json& j);
Json to_json(const NullPair& p);
NullPair null_pair_from_json(const Json& j);
Json to_json(const SingularEvent& e);
Json to_json(const LocalModel& m);
Json to_json(const Certificate& c);
Json to_json(const ValidationReport& r);

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

// Throws IoError on failure.
void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);
void write_json(const std::string& path, const Json& j);
Json read_json(const std::string& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string str() const;
};

std::string sha256_hex(const std::string& data);

// Patch grid CSV with header t,s,x,y (optionally z), rows t-major on a uniform grid.
ArbitrarySurfacePatch read_patch_csv(const std::string& path, double period);
CsvTable patch_csv(const ArbitrarySurfacePatch& patch);

}  // namespace ws
