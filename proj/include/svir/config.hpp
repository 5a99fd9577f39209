#ifndef SVIR_CONFIG_HPP
#define SVIR_CONFIG_HPP

#include <string>

#include "svir/scenarios.hpp"

namespace svir {

// A full experiment description as read from a JSON config file.
struct ExperimentConfig {
    ScenarioInputs inputs;
    bool full_control_start = false; // fbs initial guess: zero or full
    std::string output_dir = "out";

    void validate() const;
};

// Parses and validates a config document. Throws std::invalid_argument with a
// field-level message on malformed input.
ExperimentConfig parse_config(const std::string& json_text);

ExperimentConfig load_config(const std::string& path);

// Canonical serialization; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& config);

} // namespace svir

#endif
