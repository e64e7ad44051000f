#pragma once

#include <string>
#include <vector>

#include "ris_noma/channel.hpp"

namespace ris_noma {

enum class Surface { Active, Passive };
enum class Sic { Imperfect, Perfect };
enum class User { g, f, o };

struct Variant {
    Surface surface = Surface::Active;
    Sic sic = Sic::Perfect;
};

// How the SIC feasibility guard weighs chi_g: linear follows the SINR definition,
// printed squares it.
enum class SicGuard { Linear, Printed };
enum class LaguerreRule { Generalized, Standard };
// Constant replaces the RIS -> user norm by its mean L * omega_ru; Drawn uses the realized norm.
enum class RisNoiseMode { Constant, Drawn };

/// Every physical quantity in SI units: watts, meters.
struct SystemConfig {
    int K = 3;
    int g = 3;  // near user rank (ascending order)
    int f = 2;  // far user rank
    int L = 5;
    double beta = 5.0;
    int xi = 1;     // 1 adds the active-surface thermal noise
    int varpi = 0;  // 1 keeps the SIC residual
    double P_b = 1.0;
    double a_g = 0.25;
    double a_f = 0.75;
    double kappa_b = 0.1;
    double kappa_g = 0.1;
    double kappa_f = 0.1;
    double kappa_o = 0.1;
    double N_tn = 1e-6;
    double sigma2 = 1e-5;
    double d_br = 10.0;
    double d_rg = 10.0;
    double d_rf = 20.0;
    double d_ro = 30.0;
    double alpha = 2.2;
    double eta = 1.0;
    double m_r = 0.5;
    double m_g = 0.5;
    double m_f = 0.5;
    double m_o = 0.5;
    double m_I = 0.0;  // zero tracks m_g
    double Omega_I = 1.0;
    double R_g = 1.5;
    double R_f = 1.5;
    double R_o = 3.0;
    int U = 100;
    int N = 1000;
    SicGuard guard = SicGuard::Linear;
    LaguerreRule laguerre = LaguerreRule::Generalized;
    RisNoiseMode ris_noise = RisNoiseMode::Constant;
};

struct SinrBreakdown {
    double signal = 0.0;
    double impairment_term = 0.0;
    double residual_ipSIC = 0.0;
    double ris_noise = 0.0;
    double thermal = 0.0;
    double sinr = 0.0;
};

struct Targets {
    double gamma_th_g = 0.0;
    double gamma_th_f = 0.0;
    double gamma_th_o = 0.0;
};

struct GuardReport {
    bool g_ok = true;
    bool f_ok = true;
    bool o_ok = true;
    // True when the linear and squared readings of the near-user guard disagree.
    bool g_forms_disagree = false;
    double g_margin = 0.0;  // a_g - gamma_th_g * chi_g^p
    double f_margin = 0.0;  // a_f - gamma_th_f * chi_f
    double o_margin = 0.0;  // 1 - gamma_th_o * chi_o
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double w);
double db_to_linear(double db);

/// Throws ConfigError naming the first offending field.
void validate(const SystemConfig& cfg);

Targets derive_targets(const SystemConfig& cfg);
double residual_shape(const SystemConfig& cfg);

double user_distance(const SystemConfig& cfg, User u);
double user_shape(const SystemConfig& cfg, User u);
FadingParams fading_params(const SystemConfig& cfg, User u);

/// Per-element mean squared RIS -> user gain eta d^-alpha.
double omega_ru(const SystemConfig& cfg, User u);
/// eta d_br^-alpha d_u^-alpha, the large-scale factor multiplying Y^2.
double path_gain(const SystemConfig& cfg, User u);

double chi_g_to_f(const SystemConfig& cfg);
double chi_g(const SystemConfig& cfg);
double chi_f(const SystemConfig& cfg);
double chi_o(const SystemConfig& cfg);

/// The xi = 1 surface at cfg.beta, or the passive one at xi = 0, beta = 1; varpi from the SIC flag.
SystemConfig apply_variant(SystemConfig cfg, Variant v);

// ris_norm is ||h_ru^H Theta||^2 including path loss; the overloads without it use L * omega_ru.
SinrBreakdown sinr_g_to_f(const SystemConfig& cfg, double Y_g, double ris_norm);
SinrBreakdown sinr_g(const SystemConfig& cfg, double Y_g, double X_resid, double ris_norm);
SinrBreakdown sinr_f(const SystemConfig& cfg, double Y_f, double ris_norm);
SinrBreakdown sinr_o(const SystemConfig& cfg, double Y_o, double ris_norm);
SinrBreakdown sinr_g_to_f(const SystemConfig& cfg, double Y_g);
SinrBreakdown sinr_g(const SystemConfig& cfg, double Y_g, double X_resid);
SinrBreakdown sinr_f(const SystemConfig& cfg, double Y_f);
SinrBreakdown sinr_o(const SystemConfig& cfg, double Y_o);

GuardReport check_guards(const SystemConfig& cfg);

std::string to_string(Surface s);
std::string to_string(Sic s);
std::string to_string(User u);

}  // namespace ris_noma
