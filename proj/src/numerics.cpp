#include "ris_noma/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ris_noma/errors.hpp"

namespace ris_noma {

double gamma(double x)
{
    if (!(x > 0.0))
        throw DomainError("gamma: argument must be positive, got " + std::to_string(x));
    return std::tgamma(x);
}

double log_gamma(double x)
{
    if (!(x > 0.0))
        throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
    return std::lgamma(x);
}

static void check_incomplete_args(const char* who, double a, double x)
{
    if (!(a > 0.0) || !(x >= 0.0))
        throw DomainError(std::string(who) + ": need a > 0 and x >= 0");
}

double lower_incomplete_gamma(double a, double x)
{
    check_incomplete_args("lower_incomplete_gamma", a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return gamma(a);
    return boost::math::tgamma_lower(a, x);
}

double regularized_gamma_p(double a, double x)
{
    check_incomplete_args("regularized_gamma_p", a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return boost::math::gamma_p(a, x);
}

QuadratureRule generalized_gauss_laguerre(int order, double alpha)
{
    if (order < 1 || order > 256)
        throw ConfigError("Laguerre order must lie in [1, 256], got " + std::to_string(order));
    if (!(alpha > -1.0))
        throw ConfigError("Laguerre exponent must exceed -1");

    const int n = order;
    QuadratureRule rule;
    rule.kind = QuadratureKind::GaussLaguerre;
    rule.order = n;
    rule.alpha = alpha;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    // Root-finding follows the usual three-term recurrence with empirical starting guesses
    // for each root; Newton converges quadratically from them.
    const double log_norm = std::lgamma(alpha + n) - std::lgamma(static_cast<double>(n));
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            z = (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * n + 1.8 * alpha);
        } else if (i == 1) {
            z += (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * n);
        } else {
            const double ai = i - 1;
            z += ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai)) *
                 (z - rule.nodes[i - 2]) / (1.0 + 0.3 * alpha);
        }

        double p1 = 0.0, p2 = 0.0, pp = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            p1 = 1.0;
            p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0 + alpha - z) * p2 - (j - 1.0 + alpha) * p3) / j;
            }
            pp = (n * p1 - (n + alpha) * p2) / z;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-14 * std::max(1.0, z)) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw DivergenceError("Laguerre root " + std::to_string(i) + " did not converge");

        rule.nodes[i] = z;
        // w = -Gamma(alpha+n) / (Gamma(n) n L'_n L_{n-1}); the magnitude goes through logs
        const double denom = pp * n * p2;
        rule.weights[i] = std::exp(log_norm - std::log(std::abs(denom)));
        if (denom > 0.0) rule.weights[i] = -rule.weights[i];
    }
    for (int i = 1; i < n; ++i) {
        if (!(rule.nodes[i] > rule.nodes[i - 1]))
            throw DivergenceError("Laguerre nodes not strictly increasing at order " + std::to_string(n));
    }
    return rule;
}

QuadratureRule gauss_laguerre(int order)
{
    return generalized_gauss_laguerre(order, 0.0);
}

QuadratureRule gauss_chebyshev_nodes(int order)
{
    if (order < 1 || order > 4096)
        throw ConfigError("Chebyshev order must lie in [1, 4096], got " + std::to_string(order));
    QuadratureRule rule;
    rule.kind = QuadratureKind::GaussChebyshev1;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.assign(order, std::numbers::pi / order);
    // n = N first gives the smallest node
    for (int k = 0; k < order; ++k) {
        const int n = order - k;
        rule.nodes[k] = std::cos((2.0 * n - 1.0) * std::numbers::pi / (2.0 * order));
    }
    return rule;
}

double hyp2f1_at_unity(double a, double b, double c)
{
    const double s = c - a - b;
    if (!(s > 0.0))
        throw DivergenceError("2F1(a,b;c;1) diverges: c - a - b = " + std::to_string(s) + " <= 0");
    // Gamma at non-positive integers in the denominator makes the term vanish.
    auto rgamma = [](double x) {
        if (x <= 0.0 && x == std::floor(x)) return 0.0;
        return 1.0 / std::tgamma(x);
    };
    return std::tgamma(c) * std::tgamma(s) * rgamma(c - a) * rgamma(c - b);
}

double chebyshev_integrate(const std::function<double(double)>& f, double upper, const QuadratureRule& rule)
{
    CompensatedSum acc;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        acc.add(rule.weights[i] * std::sqrt(1.0 - x * x) * f(upper * (x + 1.0) / 2.0));
    }
    return 0.5 * upper * acc.value();
}

double adaptive_integrate(const std::function<double(double)>& f, double a, double b, double tol)
{
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol);
}

void CompensatedSum::add(double v)
{
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
        comp_ += (sum_ - t) + v;
    else
        comp_ += (v - t) + sum_;
    sum_ = t;
}

double binomial(int n, int k)
{
    if (k < 0 || k > n) return 0.0;
    return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

}  // namespace ris_noma
