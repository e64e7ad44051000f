#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ris_noma/metrics.hpp"
#include "ris_noma/system.hpp"

namespace ris_noma {

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

enum class Metric { Outage, Ergodic, ThroughputDL, ThroughputDT };

/// One quantity estimated from a shared draw stream. Throughput probes use `access`, the rest `user`.
struct Probe {
    Metric metric = Metric::Outage;
    User user = User::f;
    Variant variant;
    Access access = Access::Noma;
};

inline constexpr std::size_t kMinTrials = 10000;
inline constexpr std::size_t kBlockTrials = 4096;

/// Worker count from RIS_NOMA_WORKERS, else the hardware concurrency.
unsigned worker_count();

/// Estimates every probe on the same draws. Blocks of kBlockTrials are keyed by (seed, point, block)
/// and reduced in block order, so results do not depend on the worker count.
std::vector<McEstimate> mc_probe(const SystemConfig& cfg, const std::vector<Probe>& probes, std::size_t trials,
                                 std::uint64_t seed, std::uint64_t point = 0);

McEstimate mc_outage(const SystemConfig& cfg, User u, Variant v, std::size_t trials, std::uint64_t seed);
McEstimate mc_ergodic_rate(const SystemConfig& cfg, User u, Variant v, std::size_t trials, std::uint64_t seed);

/// Closed-form counterpart of a probe.
double closed_form(const SystemConfig& cfg, const Probe& p);

/// Sweep axes: P_b (dBm), L, beta, m (all shapes), kappa (all levels), d_br (meters).
SystemConfig with_axis(SystemConfig cfg, const std::string& axis, double x);
bool is_known_axis(const std::string& axis);

struct SweepPoint {
    double x = 0.0;
    double analytic = 0.0;
    McEstimate mc;
};

struct SweepResult {
    std::string axis;
    Probe probe;
    std::vector<SweepPoint> points;
};

SweepResult mc_sweep(const SystemConfig& cfg, const std::string& axis, const std::vector<double>& grid,
                     const Probe& probe, std::size_t trials, std::uint64_t seed);

}  // namespace ris_noma
