#pragma once

#include "ws/curve_core.hpp"

#include <string>
#include <vector>

namespace ws {

struct PresetInfo {
    std::string name;
    int dimension = 2;
    std::string description;
};

std::vector<PresetInfo> presets();
// Throws ValidationError for an unknown name.
InitialData make_preset(const std::string& name);

}  // namespace ws
