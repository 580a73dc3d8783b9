#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdx/params.hpp"

namespace qdx {

/// Figure-reproduction preset: fully resolved physical parameters plus the
/// default time grid of that figure family.
struct Preset {
    std::string name;
    SystemParams params;
    double t_max;
    int n_steps;
    std::string note;  // non-obvious choices (e.g. fig5 uses n=1 to pin B=1)
};

const std::vector<Preset>& preset_table();

std::optional<Preset> find_preset(const std::string& name);

} // namespace qdx
