#include "ris_noma/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ris_noma/errors.hpp"

namespace ris_noma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

UserConstants user_constants(const SystemConfig& c, const Targets& t, User u, double m_I)
{
    UserConstants k;
    k.user = u;
    k.omega_ru = omega_ru(c, u);
    k.D = std::pow(c.d_br, c.alpha) * std::pow(user_distance(c, u), c.alpha) / c.eta;
    k.noise = c.xi * c.beta * c.N_tn * c.L * k.omega_ru + c.sigma2;
    k.stats = cascade_stats(fading_params(c, u));

    double margin = 0.0;
    switch (u) {
    case User::g:
        k.gamma_th = t.gamma_th_g;
        k.a = c.a_g;
        k.chi = chi_g(c);
        margin = c.a_g - t.gamma_th_g * (c.guard == SicGuard::Printed ? k.chi * k.chi : k.chi);
        k.order = make_order_spec(c.K, c.g);
        break;
    case User::f:
        k.gamma_th = t.gamma_th_f;
        k.a = c.a_f;
        k.chi = chi_f(c);
        margin = c.a_f - t.gamma_th_f * k.chi;
        k.order = make_order_spec(c.K, c.f);
        break;
    case User::o:
        k.gamma_th = t.gamma_th_o;
        k.a = 1.0;
        k.chi = chi_o(c);
        margin = 1.0 - t.gamma_th_o * k.chi;
        k.order = make_order_spec(1, 1);
        break;
    }
    k.feasible = margin > 0.0;
    k.varsigma_P = k.feasible ? k.gamma_th / margin : kInf;
    k.varsigma = c.P_b > 0.0 ? k.varsigma_P / c.P_b : kInf;
    k.tau = c.beta * c.P_b * k.chi;

    if (u == User::g) {
        k.phi = k.D * c.varpi * c.Omega_I * k.varsigma_P;
        k.vartheta = m_I * k.D * k.varsigma * k.noise;
        k.vartheta_psic = k.D * k.varsigma * k.noise;
        k.varpi1 = k.D * c.varpi * c.P_b * c.Omega_I;
        k.varpi2 = k.D * m_I * k.noise;
    } else {
        k.phi = c.xi * c.beta * c.N_tn * k.D * k.varsigma * c.L * k.omega_ru;
        k.vartheta = k.D * k.varsigma * c.sigma2;
        k.vartheta_psic = k.vartheta;
        k.varpi1 = c.xi * c.beta * c.N_tn * k.D * c.L * k.omega_ru;
        k.varpi2 = k.D * c.sigma2;
    }
    return k;
}

double cdf_of(const UserConstants& k, double y)
{
    return sorted_cascade_cdf(k.stats, k.order, y);
}

/// E[h(x)] for x ~ Gamma(m_I, 1), through the configured Laguerre rule.
template <class F>
double laguerre_average(const ClosedFormContext& ctx, F&& h)
{
    const auto& r = ctx.laguerre;
    CompensatedSum acc;
    if (ctx.cfg.laguerre == LaguerreRule::Generalized) {
        for (std::size_t i = 0; i < r.nodes.size(); ++i) acc.add(r.weights[i] * h(r.nodes[i]));
    } else {
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
            acc.add(r.weights[i] * std::pow(r.nodes[i], ctx.m_I - 1.0) * h(r.nodes[i]));
    }
    return acc.value() / std::exp(std::lgamma(ctx.m_I));
}

/// (a / (2 chi ln 2)) sum_n w_n 2 chi sqrt(1 - x_n^2) / (2 chi + a (x_n + 1)) (1 - F_n).
template <class F>
double chebyshev_rate(const QuadratureRule& rule, double a, double chi, F&& outage_at)
{
    CompensatedSum acc;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        const double kernel = 2.0 * chi * std::sqrt(1.0 - x * x) / (2.0 * chi + a * (x + 1.0));
        acc.add(rule.weights[i] * kernel * (1.0 - outage_at(x)));
    }
    return a / (2.0 * chi * std::numbers::ln2) * acc.value();
}

/// The Chebyshev kernel peaks within 2 chi / a of x = -1; when that is narrower than ~200 times the
/// outermost node offset the rule misses the peak and direct integration takes over.
bool chebyshev_resolves(double a, double chi, int N)
{
    if (chi <= 0.0) return false;
    const double edge = std::pow(std::numbers::pi / (2.0 * N), 2);
    return 2.0 * chi / a >= 200.0 * edge;
}

/// (1/ln 2) int_0^inf (1 - F(t)) / (1 + t) dt with u = ln(1 + t), cut where 1 - F < 1e-10.
template <class F>
double direct_rate(F&& sinr_cdf_at)
{
    double t_max = 1.0;
    for (int i = 0; i < 2000 && 1.0 - sinr_cdf_at(t_max) >= 1e-10; ++i) t_max *= 2.0;
    const double u_max = std::log1p(t_max);
    const double v = adaptive_integrate([&](double u) { return 1.0 - sinr_cdf_at(std::expm1(u)); }, 0.0, u_max, 1e-10);
    return v / std::numbers::ln2;
}

/// Squared cascade threshold for SINR target t with effective noise n_eff (already scaled by D).
double threshold_sq(double t, double scaled_noise, double beta_P, double a, double chi)
{
    const double slack = a - t * chi;
    if (slack <= 0.0) return kInf;
    return t * scaled_noise / (beta_P * slack);
}

const UserConstants& pick(const ClosedFormContext& ctx, User u)
{
    return u == User::g ? ctx.g : (u == User::f ? ctx.f : ctx.o);
}

}  // namespace

ClosedFormContext make_context(const SystemConfig& cfg)
{
    validate(cfg);
    ClosedFormContext ctx;
    ctx.cfg = cfg;
    ctx.targets = derive_targets(cfg);
    ctx.m_I = residual_shape(cfg);
    ctx.g = user_constants(cfg, ctx.targets, User::g, ctx.m_I);
    ctx.f = user_constants(cfg, ctx.targets, User::f, ctx.m_I);
    ctx.o = user_constants(cfg, ctx.targets, User::o, ctx.m_I);
    ctx.laguerre = cfg.laguerre == LaguerreRule::Generalized ? generalized_gauss_laguerre(cfg.U, ctx.m_I - 1.0)
                                                             : gauss_laguerre(cfg.U);
    ctx.chebyshev = gauss_chebyshev_nodes(cfg.N);
    return ctx;
}

// ---------------------------------------------------------------- outage, active surface

OutageResult aris_outage_g(const SystemConfig& cfg)
{
    const auto ctx = make_context(cfg);
    const auto& k = ctx.g;
    if (!k.feasible) return {1.0, true};
    if (cfg.P_b <= 0.0) return {1.0, false};
    const double beta = cfg.beta;
    if (cfg.varpi == 0) return {cdf_of(k, std::sqrt(k.vartheta_psic / beta)), false};
    const double v = laguerre_average(ctx, [&](double x) {
        return cdf_of(k, std::sqrt((k.phi * x + k.vartheta) / (beta * ctx.m_I)));
    });
    return {std::clamp(v, 0.0, 1.0), false};
}

OutageResult aris_outage_f(const SystemConfig& cfg)
{
    const auto ctx = make_context(cfg);
    const auto& k = ctx.f;
    if (!k.feasible) return {1.0, true};
    if (cfg.P_b <= 0.0) return {1.0, false};
    return {cdf_of(k, std::sqrt((k.phi + k.vartheta) / cfg.beta)), false};
}

OutageResult aris_outage_o(const SystemConfig& cfg)
{
    const auto ctx = make_context(cfg);
    const auto& k = ctx.o;
    if (!k.feasible) return {1.0, true};
    if (cfg.P_b <= 0.0) return {1.0, false};
    return {unsorted_cascade_cdf(k.stats, std::sqrt((k.phi + k.vartheta) / cfg.beta)), false};
}

// ---------------------------------------------------------------- outage, passive surface

OutageResult pris_outage_g(const SystemConfig& cfg)
{
    const auto ctx = make_context(cfg);
    const auto& k = ctx.g;
    if (!k.feasible) return {1.0, true};
    if (cfg.P_b <= 0.0) return {1.0, false};
    const double vs = k.varsigma;
    if (cfg.varpi == 0) return {cdf_of(k, std::sqrt(k.D * vs * cfg.sigma2)), false};
    const double phi = k.D * cfg.Omega_I * k.varsigma_P;
    const double theta = ctx.m_I * k.D * vs * cfg.sigma2;
    const double v = laguerre_average(ctx, [&](double x) {
        return cdf_of(k, std::sqrt((phi * x + theta) / ctx.m_I));
    });
    return {std::clamp(v, 0.0, 1.0), false};
}

OutageResult pris_outage_f(const SystemConfig& cfg)
{
    const auto ctx = make_context(cfg);
    const auto& k = ctx.f;
    if (!k.feasible) return {1.0, true};
    if (cfg.P_b <= 0.0) return {1.0, false};
    return {cdf_of(k, std::sqrt(k.D * k.varsigma * cfg.sigma2)), false};
}

OutageResult pris_outage_o(const SystemConfig& cfg)
{
    const auto ctx = make_context(cfg);
    const auto& k = ctx.o;
    if (!k.feasible) return {1.0, true};
    if (cfg.P_b <= 0.0) return {1.0, false};
    return {unsorted_cascade_cdf(k.stats, std::sqrt(k.D * k.varsigma * cfg.sigma2)), false};
}

OutageResult outage(const SystemConfig& cfg, User u, Variant v)
{
    const SystemConfig c = apply_variant(cfg, v);
    const bool active = v.surface == Surface::Active;
    switch (u) {
    case User::g: return active ? aris_outage_g(c) : pris_outage_g(c);
    case User::f: return active ? aris_outage_f(c) : pris_outage_f(c);
    case User::o: return active ? aris_outage_o(c) : pris_outage_o(c);
    }
    return {};
}

double outage_g(const SystemConfig& cfg, Variant v) { return outage(cfg, User::g, v).value; }
double outage_f(const SystemConfig& cfg, Variant v) { return outage(cfg, User::f, v).value; }
double outage_o(const SystemConfig& cfg, Variant v) { return outage(cfg, User::o, v).value; }

// ---------------------------------------------------------------- asymptotics

double asymptotic_element_constant(double m_r, double m_u)
{
    const double hyp = hyp2f1_at_unity(2.0 * m_r, m_r - m_u + 0.5, m_r + m_u + 0.5);
    const double log_upsilon = (m_r - m_u + 1.0) * std::log(4.0) + 0.5 * std::log(std::numbers::pi) +
                               m_r * std::log(m_r * m_u) + std::log(hyp);
    const double log_lambda = std::lgamma(m_r) + std::lgamma(m_u);
    return std::exp(std::lgamma(2.0 * m_r) + std::lgamma(2.0 * m_u) + log_upsilon - log_lambda -
                    std::lgamma(m_r + m_u + 0.5));
}

double outage_asymptotic(const SystemConfig& cfg_in, User u, Variant v)
{
    const SystemConfig cfg = apply_variant(cfg_in, v);
    const auto ctx = make_context(cfg);
    const auto& k = pick(ctx, u);
    if (!k.feasible) return 1.0;

    if (u == User::g && cfg.varpi == 1) {
        // Floor: the thermal term vanishes and phi carries no P_b.
        const double v_floor = laguerre_average(ctx, [&](double x) {
            return cdf_of(k, std::sqrt(k.phi * x / (cfg.beta * ctx.m_I)));
        });
        return std::clamp(v_floor, 0.0, 1.0);
    }

    const double y2 = u == User::g ? k.vartheta_psic / cfg.beta : (k.phi + k.vartheta) / cfg.beta;
    const double m_u = user_shape(cfg, u);
    const double lm = cfg.L * cfg.m_r;
    const double log_F = cfg.L * std::log(asymptotic_element_constant(cfg.m_r, m_u)) + lm * std::log(y2) -
                         std::log(2.0 * lm) - std::lgamma(2.0 * lm);
    const double F = std::exp(log_F);
    return u == User::o ? F : order_statistic_cdf(F, k.order);
}

double diversity_order(User u, Variant v, int L, double m_r, int rank)
{
    if (u == User::g && v.sic == Sic::Imperfect) return 0.0;
    if (u == User::o) return L * m_r;
    return L * m_r * rank;
}

// ---------------------------------------------------------------- ergodic rates

double sinr_cdf(const SystemConfig& cfg, User u, double t)
{
    const auto ctx = make_context(cfg);
    const auto& k = pick(ctx, u);
    if (t <= 0.0) return 0.0;
    const double bP = cfg.beta * cfg.P_b;
    if (bP <= 0.0) return 1.0;
    if (u == User::g && cfg.varpi == 1) {
        return laguerre_average(ctx, [&](double x) {
            const double n = (k.varpi1 * x + k.varpi2) / ctx.m_I;
            return cdf_of(k, std::sqrt(threshold_sq(t, n, bP, k.a, k.chi)));
        });
    }
    const double n = u == User::g ? k.D * k.noise : k.varpi1 + k.varpi2;
    const double y = std::sqrt(threshold_sq(t, n, bP, k.a, k.chi));
    return u == User::o ? unsorted_cascade_cdf(k.stats, y) : cdf_of(k, y);
}

namespace {

double fallback_rate(const SystemConfig& cfg, User u)
{
    return direct_rate([&](double t) { return sinr_cdf(cfg, u, t); });
}

double aris_rate(const SystemConfig& cfg, User u)
{
    if (cfg.P_b <= 0.0) return 0.0;
    const auto ctx = make_context(cfg);
    const auto& k = pick(ctx, u);
    if (!chebyshev_resolves(k.a, k.chi, cfg.N)) return fallback_rate(cfg, u);
    const double tau = k.tau;
    auto F = [&](double y) { return u == User::o ? unsorted_cascade_cdf(k.stats, y) : cdf_of(k, y); };
    if (u == User::g && cfg.varpi == 1) {
        return chebyshev_rate(ctx.chebyshev, k.a, k.chi, [&](double x) {
            const double s = (x + 1.0) / (ctx.m_I * tau * (1.0 - x));
            return laguerre_average(ctx, [&](double xu) { return F(std::sqrt(s * (k.varpi1 * xu + k.varpi2))); });
        });
    }
    const double num = u == User::g ? k.D * k.noise : k.varpi1 + k.varpi2;
    return chebyshev_rate(ctx.chebyshev, k.a, k.chi,
                          [&](double x) { return F(std::sqrt((x + 1.0) * num / (tau * (1.0 - x)))); });
}

double pris_rate(const SystemConfig& cfg, User u)
{
    if (cfg.P_b <= 0.0) return 0.0;
    SystemConfig passive = cfg;
    passive.xi = 0;
    passive.beta = 1.0;
    const auto ctx = make_context(passive);
    const auto& k = pick(ctx, u);
    if (!chebyshev_resolves(k.a, k.chi, cfg.N)) return fallback_rate(passive, u);
    const double tau = cfg.P_b * k.chi;
    auto F = [&](double y) { return u == User::o ? unsorted_cascade_cdf(k.stats, y) : cdf_of(k, y); };
    if (u == User::g && cfg.varpi == 1) {
        const double w1 = k.D * cfg.P_b * cfg.Omega_I;
        const double w2 = k.D * ctx.m_I * cfg.sigma2;
        return chebyshev_rate(ctx.chebyshev, k.a, k.chi, [&](double x) {
            const double s = (x + 1.0) / (ctx.m_I * tau * (1.0 - x));
            return laguerre_average(ctx, [&](double xu) { return F(std::sqrt(s * (w1 * xu + w2))); });
        });
    }
    const double num = k.D * cfg.sigma2;
    return chebyshev_rate(ctx.chebyshev, k.a, k.chi,
                          [&](double x) { return F(std::sqrt((x + 1.0) * num / (tau * (1.0 - x)))); });
}

}  // namespace

double aris_ergodic_rate_g(const SystemConfig& cfg) { return aris_rate(cfg, User::g); }
double aris_ergodic_rate_f(const SystemConfig& cfg) { return aris_rate(cfg, User::f); }
double aris_ergodic_rate_o(const SystemConfig& cfg) { return aris_rate(cfg, User::o); }
double pris_ergodic_rate_g(const SystemConfig& cfg) { return pris_rate(cfg, User::g); }
double pris_ergodic_rate_f(const SystemConfig& cfg) { return pris_rate(cfg, User::f); }
double pris_ergodic_rate_o(const SystemConfig& cfg) { return pris_rate(cfg, User::o); }

double ergodic_rate(const SystemConfig& cfg, User u, Variant v)
{
    const SystemConfig c = apply_variant(cfg, v);
    return v.surface == Surface::Active ? aris_rate(c, u) : pris_rate(c, u);
}

double ergodic_rate_g(const SystemConfig& cfg, Variant v) { return ergodic_rate(cfg, User::g, v); }
double ergodic_rate_f(const SystemConfig& cfg, Variant v) { return ergodic_rate(cfg, User::f, v); }
double ergodic_rate_o(const SystemConfig& cfg, Variant v) { return ergodic_rate(cfg, User::o, v); }

double rate_ceiling(const SystemConfig& cfg_in, User u, Variant v)
{
    const SystemConfig cfg = apply_variant(cfg_in, v);
    const auto ctx = make_context(cfg);
    const auto& k = pick(ctx, u);

    if (u == User::g && cfg.varpi == 1) {
        // Residual interference scales with P_b like the signal, so the limit keeps a fading average.
        const double w1 = k.D * cfg.Omega_I;
        if (!chebyshev_resolves(k.a, k.chi, cfg.N)) {
            if (k.chi <= 0.0 && w1 <= 0.0) return kInf;
            return direct_rate([&](double t) {
                return laguerre_average(ctx, [&](double xu) {
                    return cdf_of(k, std::sqrt(threshold_sq(t, w1 * xu / ctx.m_I, cfg.beta, k.a, k.chi)));
                });
            });
        }
        return chebyshev_rate(ctx.chebyshev, k.a, k.chi, [&](double x) {
            const double s = (x + 1.0) / (ctx.m_I * cfg.beta * k.chi * (1.0 - x));
            return laguerre_average(ctx, [&](double xu) { return cdf_of(k, std::sqrt(s * w1 * xu)); });
        });
    }
    if (k.chi <= 0.0) return kInf;
    if (!chebyshev_resolves(k.a, k.chi, cfg.N)) return std::log2(1.0 + k.a / k.chi);
    return chebyshev_rate(ctx.chebyshev, k.a, k.chi, [](double) { return 0.0; });
}

double multiplexing_gain(User, Variant) { return 0.0; }

}  // namespace ris_noma
