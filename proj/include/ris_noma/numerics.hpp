#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ris_noma {

double gamma(double x);
double log_gamma(double x);
double lower_incomplete_gamma(double a, double x);
double regularized_gamma_p(double a, double x);

enum class QuadratureKind { GaussLaguerre, GaussChebyshev1 };

struct QuadratureRule {
    QuadratureKind kind = QuadratureKind::GaussLaguerre;
    int order = 0;
    // Exponent of the x^alpha factor in the Laguerre weight; zero for the classical rule.
    double alpha = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Classical rule for the weight e^{-x} on (0, inf). Nodes ascending, weights sum to 1.
QuadratureRule gauss_laguerre(int order);

/// Rule for x^alpha e^{-x}. Weights sum to Gamma(alpha + 1).
QuadratureRule generalized_gauss_laguerre(int order, double alpha);

/// First-kind Chebyshev nodes cos((2n-1)pi/(2N)), stored ascending, each weight pi/N.
QuadratureRule gauss_chebyshev_nodes(int order);

/// Gauss summation 2F1(a, b; c; 1). Throws DivergenceError unless c - a - b > 0.
double hyp2f1_at_unity(double a, double b, double c);

/// Integral of f over [0, upper] by mapping t = upper (x + 1) / 2 onto the Chebyshev nodes.
double chebyshev_integrate(const std::function<double(double)>& f, double upper, const QuadratureRule& rule);

/// Adaptive Gauss-Kronrod on [a, b]; b may be +infinity.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double binomial(int n, int k);

}  // namespace ris_noma
