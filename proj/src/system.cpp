#include "ris_noma/system.hpp"

#include <cmath>
#include <string>

#include "ris_noma/errors.hpp"

namespace ris_noma {

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }
double watts_to_dbm(double w) { return 10.0 * std::log10(w * 1000.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

static void require(bool ok, const std::string& field, const std::string& why)
{
    if (!ok) throw ConfigError(field + ": " + why);
}

void validate(const SystemConfig& c)
{
    require(c.K >= 1 && c.K <= 20, "users_k", "must lie in [1, 20]");
    require(c.g >= 1 && c.g <= c.K, "rank_near_g", "must lie in [1, K]");
    require(c.f >= 1 && c.f <= c.K, "rank_far_f", "must lie in [1, K]");
    require(c.L >= 1, "elements_l", "must be >= 1");
    require(c.beta >= 1.0, "beta", "must be >= 1");
    require(c.xi == 0 || c.xi == 1, "xi", "must be 0 or 1");
    require(c.varpi == 0 || c.varpi == 1, "varpi", "must be 0 or 1");
    require(c.P_b >= 0.0, "p_b", "must be non-negative");
    require(c.a_g > 0.0 && c.a_f > 0.0, "a_g/a_f", "must be positive");
    require(std::abs(c.a_g + c.a_f - 1.0) <= 1e-9, "a_g/a_f", "must sum to 1");
    require(c.a_g < c.a_f, "a_g/a_f", "a_g must be smaller than a_f");
    for (double k : {c.kappa_b, c.kappa_g, c.kappa_f, c.kappa_o}) require(k >= 0.0, "kappa", "must be >= 0");
    require(c.N_tn > 0.0, "n_tn", "must be positive");
    require(c.sigma2 > 0.0, "sigma2", "must be positive");
    for (double d : {c.d_br, c.d_rg, c.d_rf, c.d_ro}) require(d > 0.0, "distance", "must be positive");
    require(c.alpha > 0.0, "alpha", "must be positive");
    require(c.eta > 0.0, "eta", "must be positive");
    for (double m : {c.m_r, c.m_g, c.m_f, c.m_o}) require(m >= 0.5, "m", "Nakagami shapes must be >= 0.5");
    require(c.m_I == 0.0 || c.m_I > 0.0, "m_i", "must be positive");
    require(c.Omega_I >= 0.0, "omega_i", "must be non-negative");
    require(c.R_g >= 0.0 && c.R_f >= 0.0 && c.R_o >= 0.0, "rate", "target rates must be non-negative");
    require(c.U >= 1 && c.U <= 256, "laguerre_order_u", "must lie in [1, 256]");
    require(c.N >= 1 && c.N <= 4096, "chebyshev_order_n", "must lie in [1, 4096]");
}

Targets derive_targets(const SystemConfig& c)
{
    return {std::exp2(c.R_g) - 1.0, std::exp2(c.R_f) - 1.0, std::exp2(c.R_o) - 1.0};
}

double residual_shape(const SystemConfig& c) { return c.m_I > 0.0 ? c.m_I : c.m_g; }

double user_distance(const SystemConfig& c, User u)
{
    switch (u) {
    case User::g: return c.d_rg;
    case User::f: return c.d_rf;
    case User::o: return c.d_ro;
    }
    return 0.0;
}

double user_shape(const SystemConfig& c, User u)
{
    switch (u) {
    case User::g: return c.m_g;
    case User::f: return c.m_f;
    case User::o: return c.m_o;
    }
    return 0.0;
}

FadingParams fading_params(const SystemConfig& c, User u) { return {c.m_r, user_shape(c, u), c.L}; }

double omega_ru(const SystemConfig& c, User u) { return c.eta * std::pow(user_distance(c, u), -c.alpha); }

double path_gain(const SystemConfig& c, User u)
{
    return c.eta * std::pow(c.d_br, -c.alpha) * std::pow(user_distance(c, u), -c.alpha);
}

double chi_g_to_f(const SystemConfig& c) { return c.a_g + c.kappa_b * c.kappa_b + c.kappa_g * c.kappa_g; }
double chi_g(const SystemConfig& c) { return c.kappa_b * c.kappa_b + c.kappa_g * c.kappa_g; }
double chi_f(const SystemConfig& c) { return c.a_g + c.kappa_b * c.kappa_b + c.kappa_f * c.kappa_f; }
double chi_o(const SystemConfig& c) { return c.kappa_b * c.kappa_b + c.kappa_o * c.kappa_o; }

SystemConfig apply_variant(SystemConfig c, Variant v)
{
    if (v.surface == Surface::Active) {
        c.xi = 1;
    } else {
        c.xi = 0;
        c.beta = 1.0;
    }
    c.varpi = v.sic == Sic::Imperfect ? 1 : 0;
    return c;
}

static SinrBreakdown assemble(double signal, double impairment, double residual, double ris, double thermal)
{
    SinrBreakdown s{signal, impairment, residual, ris, thermal, 0.0};
    const double den = impairment + residual + ris + thermal;
    s.sinr = signal > 0.0 ? signal / den : 0.0;
    return s;
}

static double received(const SystemConfig& c, User u, double Y) { return c.beta * c.P_b * path_gain(c, u) * Y * Y; }
static double ris_term(const SystemConfig& c, double norm) { return c.xi * c.beta * c.N_tn * norm; }
static double mean_norm(const SystemConfig& c, User u) { return c.L * omega_ru(c, u); }

SinrBreakdown sinr_g_to_f(const SystemConfig& c, double Y_g, double ris_norm)
{
    const double r = received(c, User::g, Y_g);
    return assemble(r * c.a_f, r * chi_g_to_f(c), 0.0, ris_term(c, ris_norm), c.sigma2);
}

SinrBreakdown sinr_g(const SystemConfig& c, double Y_g, double X_resid, double ris_norm)
{
    const double r = received(c, User::g, Y_g);
    return assemble(r * c.a_g, r * chi_g(c), c.varpi * c.P_b * c.Omega_I * X_resid, ris_term(c, ris_norm),
                    c.sigma2);
}

SinrBreakdown sinr_f(const SystemConfig& c, double Y_f, double ris_norm)
{
    const double r = received(c, User::f, Y_f);
    return assemble(r * c.a_f, r * chi_f(c), 0.0, ris_term(c, ris_norm), c.sigma2);
}

SinrBreakdown sinr_o(const SystemConfig& c, double Y_o, double ris_norm)
{
    const double r = received(c, User::o, Y_o);
    return assemble(r, r * chi_o(c), 0.0, ris_term(c, ris_norm), c.sigma2);
}

SinrBreakdown sinr_g_to_f(const SystemConfig& c, double Y_g) { return sinr_g_to_f(c, Y_g, mean_norm(c, User::g)); }
SinrBreakdown sinr_g(const SystemConfig& c, double Y_g, double X) { return sinr_g(c, Y_g, X, mean_norm(c, User::g)); }
SinrBreakdown sinr_f(const SystemConfig& c, double Y_f) { return sinr_f(c, Y_f, mean_norm(c, User::f)); }
SinrBreakdown sinr_o(const SystemConfig& c, double Y_o) { return sinr_o(c, Y_o, mean_norm(c, User::o)); }

GuardReport check_guards(const SystemConfig& c)
{
    const Targets t = derive_targets(c);
    const double xg = chi_g(c);
    const double lin = c.a_g - t.gamma_th_g * xg;
    const double sq = c.a_g - t.gamma_th_g * xg * xg;
    GuardReport r;
    r.g_margin = c.guard == SicGuard::Printed ? sq : lin;
    r.g_ok = r.g_margin > 0.0;
    r.g_forms_disagree = (lin > 0.0) != (sq > 0.0);
    r.f_margin = c.a_f - t.gamma_th_f * chi_f(c);
    r.f_ok = r.f_margin > 0.0;
    r.o_margin = 1.0 - t.gamma_th_o * chi_o(c);
    r.o_ok = r.o_margin > 0.0;
    return r;
}

std::string to_string(Surface s) { return s == Surface::Active ? "aris" : "pris"; }
std::string to_string(Sic s) { return s == Sic::Imperfect ? "ipsic" : "psic"; }

std::string to_string(User u)
{
    switch (u) {
    case User::g: return "g";
    case User::f: return "f";
    case User::o: return "o";
    }
    return "?";
}

}  // namespace ris_noma
