#pragma once

#include "ris_noma/config.hpp"
#include "ris_noma/system.hpp"

#ifndef RIS_NOMA_TEST_PRESETS
#define RIS_NOMA_TEST_PRESETS "presets"
#endif

namespace test_support {

// Baseline network shared by the tests: K=3, ranks 3 and 2, L=5, beta=5, m=0.5, kappa=0.1.
inline ris_noma::SystemConfig baseline(double p_b_dbm = 30.0)
{
    ris_noma::SystemConfig c = ris_noma::default_scenario().system;
    c.P_b = ris_noma::dbm_to_watts(p_b_dbm);
    c.Omega_I = 1e-4;
    return c;
}

inline ris_noma::Scenario preset(const std::string& name)
{
    ris_noma::Scenario s = ris_noma::default_scenario();
    ris_noma::parse_config_file(std::string(RIS_NOMA_TEST_PRESETS) + "/" + name + ".cfg", s);
    return s;
}

}  // namespace test_support
