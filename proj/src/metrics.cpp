#include "ris_noma/metrics.hpp"

#include <cmath>
#include <string>

#include "ris_noma/analytic.hpp"
#include "ris_noma/errors.hpp"

namespace ris_noma {

void validate(const PowerModel& pm)
{
    if (!(pm.nu > 0.0 && pm.nu <= 1.0)) throw ConfigError("amp_efficiency_nu: must lie in (0, 1]");
    for (double p : {pm.P_BS, pm.P_RE, pm.P_U, pm.P_SW, pm.P_DC})
        if (!(p >= 0.0)) throw ConfigError("power model: static powers must be >= 0");
}

ThroughputReport throughput_delay_limited(const SystemConfig& cfg, Variant v, Access access)
{
    ThroughputReport r;
    r.mode = ThroughputMode::DelayLimited;
    if (access == Access::Oma) {
        r.components = {(1.0 - outage_o(cfg, v)) * cfg.R_o};
    } else {
        r.components = {(1.0 - outage_g(cfg, v)) * cfg.R_g, (1.0 - outage_f(cfg, v)) * cfg.R_f};
    }
    for (double c : r.components) r.value += c;
    return r;
}

ThroughputReport throughput_delay_tolerant(const SystemConfig& cfg, Variant v, Access access)
{
    ThroughputReport r;
    r.mode = ThroughputMode::DelayTolerant;
    if (access == Access::Oma)
        r.components = {ergodic_rate_o(cfg, v)};
    else
        r.components = {ergodic_rate_g(cfg, v), ergodic_rate_f(cfg, v)};
    for (double c : r.components) r.value += c;
    return r;
}

double surface_output_power(const SystemConfig& cfg)
{
    const double amplified = cfg.P_b * cfg.beta * cfg.L * cfg.eta * std::pow(cfg.d_br, -cfg.alpha);
    return cfg.xi * (amplified + cfg.beta * cfg.N_tn * cfg.L);
}

double total_power(const SystemConfig& cfg, const PowerModel& pm, Access access)
{
    validate(pm);
    const int users = access == Access::Noma ? 2 : 1;
    return cfg.P_b / pm.nu + pm.P_BS + cfg.L * pm.P_RE + surface_output_power(cfg) + users * pm.P_U;
}

double energy_efficiency(const SystemConfig& cfg, const PowerModel& pm, Variant v, ThroughputMode mode,
                         Access access)
{
    const SystemConfig c = apply_variant(cfg, v);
    const double power = total_power(c, pm, access);
    if (!(power > 0.0)) throw DomainError("energy efficiency needs positive total power");
    const double t = mode == ThroughputMode::DelayLimited ? throughput_delay_limited(cfg, v, access).value
                                                          : throughput_delay_tolerant(cfg, v, access).value;
    return t / power;
}

static double aris_gain_factor(const SystemConfig& cfg)
{
    return cfg.xi * cfg.beta * cfg.L * cfg.eta * std::pow(cfg.d_br, -cfg.alpha);
}

BudgetSplit match_power_budget(double total, const PowerModel& pm, const SystemConfig& cfg)
{
    validate(pm);
    const double aris_floor = cfg.xi * cfg.beta * cfg.N_tn * cfg.L + cfg.L * (pm.P_SW + pm.P_DC);
    const double pris_floor = cfg.L * pm.P_SW;
    if (total < aris_floor)
        throw ConfigError("budget " + std::to_string(total) +
                          " W is below the active floor beta N_tn L + L (P_SW + P_DC) = " +
                          std::to_string(aris_floor) + " W");
    if (total < pris_floor)
        throw ConfigError("budget " + std::to_string(total) + " W is below the passive floor L P_SW = " +
                          std::to_string(pris_floor) + " W");
    return {(total - aris_floor) / (1.0 + aris_gain_factor(cfg)), total - pris_floor};
}

double aris_budget_consumption(double P_BS, const PowerModel& pm, const SystemConfig& cfg)
{
    return P_BS + P_BS * aris_gain_factor(cfg) + cfg.xi * cfg.beta * cfg.N_tn * cfg.L + cfg.L * (pm.P_SW + pm.P_DC);
}

double pris_budget_consumption(double P_BS, const PowerModel& pm, const SystemConfig& cfg)
{
    return P_BS + cfg.L * pm.P_SW;
}

}  // namespace ris_noma
