#pragma once

#include <functional>
#include <string>

#include "ris_noma/channel.hpp"
#include "ris_noma/numerics.hpp"
#include "ris_noma/system.hpp"

namespace ris_noma {

/// Derived constants for one user. D folds the path loss: D = d_br^alpha d_u^alpha / eta.
struct UserConstants {
    User user = User::g;
    double gamma_th = 0.0;
    double a = 1.0;             // power fraction carried by the decoded signal
    double chi = 0.0;
    double varsigma_P = 0.0;    // varsigma * P_b, independent of P_b
    double varsigma = 0.0;
    double omega_ru = 0.0;
    double D = 0.0;
    double noise = 0.0;         // xi beta N_tn L omega_ru + sigma^2
    double phi = 0.0;
    double vartheta = 0.0;
    double vartheta_psic = 0.0;
    double tau = 0.0;           // beta P_b chi
    double varpi1 = 0.0;
    double varpi2 = 0.0;
    bool feasible = true;
    CascadeStats stats;
    OrderSpec order;
};

struct ClosedFormContext {
    SystemConfig cfg;
    Targets targets;
    UserConstants g, f, o;
    QuadratureRule laguerre;
    QuadratureRule chebyshev;
    double m_I = 1.0;
};

ClosedFormContext make_context(const SystemConfig& cfg);

struct OutageResult {
    double value = 1.0;
    bool guard_violated = false;
};

// Active-surface forms; xi, beta and varpi are read from cfg as given.
OutageResult aris_outage_g(const SystemConfig& cfg);
OutageResult aris_outage_f(const SystemConfig& cfg);
OutageResult aris_outage_o(const SystemConfig& cfg);
double aris_ergodic_rate_g(const SystemConfig& cfg);
double aris_ergodic_rate_f(const SystemConfig& cfg);
double aris_ergodic_rate_o(const SystemConfig& cfg);

// Passive-surface forms: no amplification and no surface noise; xi and beta are ignored.
OutageResult pris_outage_g(const SystemConfig& cfg);
OutageResult pris_outage_f(const SystemConfig& cfg);
OutageResult pris_outage_o(const SystemConfig& cfg);
double pris_ergodic_rate_g(const SystemConfig& cfg);
double pris_ergodic_rate_f(const SystemConfig& cfg);
double pris_ergodic_rate_o(const SystemConfig& cfg);

OutageResult outage(const SystemConfig& cfg, User u, Variant v);
double outage_g(const SystemConfig& cfg, Variant v);
double outage_f(const SystemConfig& cfg, Variant v);
double outage_o(const SystemConfig& cfg, Variant v);

/// High-SNR approximation. Throws DivergenceError when the hypergeometric constant diverges
/// (user shape not above m_r); the imperfect-SIC near user returns its floor instead.
double outage_asymptotic(const SystemConfig& cfg, User u, Variant v);

/// Per-element coefficient of the small-argument law F(y) ~ C^L y^{2 L m_r} / (2 L m_r Gamma(2 L m_r)).
double asymptotic_element_constant(double m_r, double m_u);

double diversity_order(User u, Variant v, int L, double m_r, int rank);

double ergodic_rate(const SystemConfig& cfg, User u, Variant v);
double ergodic_rate_g(const SystemConfig& cfg, Variant v);
double ergodic_rate_f(const SystemConfig& cfg, Variant v);
double ergodic_rate_o(const SystemConfig& cfg, Variant v);

/// P_b -> infinity limit of the ergodic rate; +infinity when the impairment level chi is zero.
double rate_ceiling(const SystemConfig& cfg, User u, Variant v);

double multiplexing_gain(User u, Variant v);

/// CDF of the user's SINR at threshold t under the Gamma cascade model, constant surface noise.
double sinr_cdf(const SystemConfig& cfg, User u, double t);

}  // namespace ris_noma
