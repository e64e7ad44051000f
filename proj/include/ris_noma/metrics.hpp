#pragma once

#include <utility>
#include <vector>

#include "ris_noma/system.hpp"

namespace ris_noma {

/// Static and dynamic power terms in watts. Defaults are placeholders: ideal amplifier, no statics.
struct PowerModel {
    double nu = 1.0;     // amplifier efficiency, the transmit power is scaled by 1/nu
    double P_BS = 0.0;   // BS static
    double P_RE = 0.0;   // per element static
    double P_U = 0.0;    // per user static
    double P_SW = 0.0;   // per element switch and control
    double P_DC = 0.0;   // per element DC bias of the active amplifier
};

enum class Access { Noma, Oma };
enum class ThroughputMode { DelayLimited, DelayTolerant };

struct ThroughputReport {
    ThroughputMode mode = ThroughputMode::DelayLimited;
    double value = 0.0;
    std::vector<double> components;
};

void validate(const PowerModel& pm);

/// (1 - P_g) R_g + (1 - P_f) R_f for NOMA, (1 - P_o) R_o for OMA.
ThroughputReport throughput_delay_limited(const SystemConfig& cfg, Variant v, Access access = Access::Noma);

/// Sum of ergodic rates of the served users.
ThroughputReport throughput_delay_tolerant(const SystemConfig& cfg, Variant v, Access access = Access::Noma);

/// Amplified output power of the surface: xi (beta P_b L eta d_br^-alpha + beta N_tn L).
double surface_output_power(const SystemConfig& cfg);

/// P_b / nu + P_BS + L P_RE + P_out + n_users P_U.
double total_power(const SystemConfig& cfg, const PowerModel& pm, Access access = Access::Noma);

double energy_efficiency(const SystemConfig& cfg, const PowerModel& pm, Variant v, ThroughputMode mode,
                         Access access = Access::Noma);

struct BudgetSplit {
    double P_BS_aris = 0.0;
    double P_BS_pris = 0.0;
};

/// BS transmit powers that make the active and passive deployments spend the same total.
BudgetSplit match_power_budget(double total, const PowerModel& pm, const SystemConfig& cfg);

/// Budget consumed by each deployment for a given BS transmit power; inverse of the matcher.
double aris_budget_consumption(double P_BS, const PowerModel& pm, const SystemConfig& cfg);
double pris_budget_consumption(double P_BS, const PowerModel& pm, const SystemConfig& cfg);

}  // namespace ris_noma
