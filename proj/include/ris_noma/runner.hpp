#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ris_noma/config.hpp"

namespace ris_noma {

struct RunFlags {
    bool analytic_only = false;
    bool mc_only = false;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
};

struct RunManifest {
    std::string scenario;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    int laguerre_order = 0;
    int chebyshev_order = 0;
    std::string version;
    std::string timestamp;
    std::vector<std::string> files;
    std::vector<std::string> warnings;
};

std::string version_string();

/// Applies the flag overrides, validates, then writes one CSV per curve plus a JSON manifest.
/// Nothing is written when validation fails.
RunManifest run_scenario(Scenario s, const std::string& out_dir, const RunFlags& flags);

/// Guard status, derived constants and asymptote availability in readable form.
std::string validation_report(const Scenario& s);

}  // namespace ris_noma
