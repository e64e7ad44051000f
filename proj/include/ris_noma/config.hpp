#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ris_noma/metrics.hpp"
#include "ris_noma/montecarlo.hpp"
#include "ris_noma/system.hpp"

namespace ris_noma {

enum class CurveKind { Outage, OutageAsymptotic, Ergodic, ThroughputDL, ThroughputDT, EnergyDL, EnergyDT };

struct CurveSpec {
    CurveKind kind = CurveKind::Outage;
    User user = User::f;             // single-user curves
    Access access = Access::Noma;    // throughput and efficiency curves
    Variant variant;
    std::string name;                // metric_user_surface[_sic]
    std::string variant_label;       // surface[_sic]
};

struct RunSpec {
    std::string scenario = "custom";
    std::string axis = "P_b";
    std::vector<double> grid;
    std::optional<double> range_start, range_stop, range_step;
    std::vector<CurveSpec> curves;
    std::size_t trials = 1000000;
    std::uint64_t seed = 1;
};

struct Scenario {
    SystemConfig system;
    PowerModel power;
    RunSpec run;
};

/// Defaults with the system values in watts, baseline geometry and fading.
Scenario default_scenario();

/// Applies `key = value` lines from text on top of `base`. `origin` prefixes diagnostics,
/// which read "origin:line:column: message".
void parse_config_text(const std::string& text, const std::string& origin, Scenario& base);
void parse_config_file(const std::string& path, Scenario& base);

/// Parses "metric:user:surface[:sic]".
CurveSpec parse_curve(const std::string& spec);

/// Expands a start/stop/step range into the grid when no explicit values are given.
std::vector<double> resolve_grid(const RunSpec& run);

/// Throws ConfigError on the first invalid field of the scenario.
void validate(const Scenario& s);

/// Fixed-order serialization of every parameter; the hash is FNV-1a 64 over it.
std::string canonical_text(const Scenario& s);
std::string config_hash(const Scenario& s);

std::string format_number(double v);

/// Directory holding the shipped preset configs; RIS_NOMA_PRESETS overrides the build-time path.
std::string preset_directory();
std::string preset_path(const std::string& name);

}  // namespace ris_noma
