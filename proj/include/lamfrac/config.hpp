#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lamfrac/evolution.hpp"

namespace lamfrac {

// All violations found in a config file, each with line/field identification.
struct ConfigError : std::runtime_error {
    explicit ConfigError(std::vector<std::string> list);
    std::vector<std::string> issues;
};

// Flat key = value sections: [laminate], [mesh], [load], [run]. Unknown keys
// are rejected; missing keys fall back to documented defaults.
struct RunConfig {
    LaminateSpec spec;
    MeshParams mesh;

    std::string load_profile = "linear";  // linear | triangle | table
    double t_end = 1.0;
    int steps = 400;
    double peak = 1.0;
    std::vector<double> table_t, table_f;

    double l0 = -1.0;  // < 0: defaults to length/8
    double tol = 1e-10;
    std::vector<double> probes;   // empty: {0.30, 0.52, 0.71} * length
    std::vector<int> n_list = {2, 4, 8, 16};
    bool dump_mesh = false;

    std::string raw_text;  // exact file contents, hashed into the manifest

    LoadProgram make_load() const;
    double initial_tip() const { return l0 > 0.0 ? l0 : spec.length / 8.0; }
    std::vector<double> probe_points() const;
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

std::uint64_t fnv1a64(const std::string& data);

} // namespace lamfrac
