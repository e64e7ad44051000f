#include "ris_noma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ris_noma/errors.hpp"
#include "ris_noma/numerics.hpp"

namespace ris_noma {

void validate(const FadingParams& fp)
{
    if (!(fp.m_r >= 0.5) || !(fp.m_u >= 0.5))
        throw ConfigError("Nakagami shapes must be >= 0.5");
    if (fp.L < 1) throw ConfigError("element count L must be >= 1");
}

CascadeStats cascade_stats(const FadingParams& fp)
{
    validate(fp);
    const double lr = std::lgamma(fp.m_r + 0.5) - std::lgamma(fp.m_r);
    const double lu = std::lgamma(fp.m_u + 0.5) - std::lgamma(fp.m_u);
    CascadeStats s;
    s.mu = std::exp(lr + lu) / std::sqrt(fp.m_r * fp.m_u);
    s.omega = 1.0 - s.mu * s.mu;
    s.b = fp.L * s.mu * s.mu / s.omega - 1.0;
    s.c = s.omega / s.mu;
    return s;
}

OrderSpec make_order_spec(int K, int rank)
{
    if (K < 1 || K > 20) throw ConfigError("user count K must lie in [1, 20], got " + std::to_string(K));
    if (rank < 1 || rank > K)
        throw ConfigError("rank " + std::to_string(rank) + " outside [1, " + std::to_string(K) + "]");
    OrderSpec spec;
    spec.K = K;
    spec.rank = rank;
    spec.Psi = std::round(std::exp(std::lgamma(K + 1.0) - std::lgamma(K - rank + 1.0) - std::lgamma(1.0 * rank)));
    return spec;
}

double order_statistic_cdf(double p, const OrderSpec& spec)
{
    p = std::clamp(p, 0.0, 1.0);
    if (p == 0.0) return 0.0;
    // Terms reach ~1e8 before the factorial scale at K = 20; extended precision keeps
    // the cancelled result below 1e-9.
    const int n = spec.K - spec.rank;
    std::vector<long double> terms;
    terms.reserve(n + 1);
    const long double lp = p;
    for (int k = 0; k <= n; ++k) {
        const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
        terms.push_back(sign * static_cast<long double>(binomial(n, k)) / (spec.rank + k) *
                        std::pow(lp, spec.rank + k));
    }
    std::sort(terms.begin(), terms.end(), [](long double a, long double b) { return std::abs(a) > std::abs(b); });
    long double sum = 0.0L, carry = 0.0L;
    for (long double t : terms) {
        const long double s = sum + t;
        carry += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
        sum = s;
    }
    return std::clamp(static_cast<double>(static_cast<long double>(spec.Psi) * (sum + carry)), 0.0, 1.0);
}

double unsorted_cascade_cdf(const CascadeStats& stats, double y)
{
    if (!(y >= 0.0)) throw DomainError("cascade CDF needs y >= 0");
    return regularized_gamma_p(stats.b + 1.0, y / stats.c);
}

double sorted_cascade_cdf(const CascadeStats& stats, const OrderSpec& spec, double y)
{
    return order_statistic_cdf(unsorted_cascade_cdf(stats, y), spec);
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CascadeSampler::CascadeSampler(std::uint64_t seed, std::uint64_t stream)
    : eng_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)))
{
}

double CascadeSampler::gamma_unit_mean(double shape)
{
    std::gamma_distribution<double> dist(shape, 1.0 / shape);
    return dist(eng_);
}

double CascadeSampler::nakagami(double m)
{
    return std::sqrt(gamma_unit_mean(m));
}

CascadeSample CascadeSampler::cascade(const FadingParams& fp)
{
    std::gamma_distribution<double> hop_r(fp.m_r, 1.0 / fp.m_r);
    std::gamma_distribution<double> hop_u(fp.m_u, 1.0 / fp.m_u);
    CascadeSample s;
    for (int l = 0; l < fp.L; ++l) {
        const double a2 = hop_r(eng_);
        const double b2 = hop_u(eng_);
        s.amplitude += std::sqrt(a2 * b2);
        s.ris_gain += b2;
    }
    return s;
}

void sample_cascade_set(const std::vector<FadingParams>& fp_per_user, double m_I, std::uint64_t seed,
                        std::size_t trials, const std::function<void(const ChannelDraw&)>& sink)
{
    if (fp_per_user.empty()) throw ConfigError("sample_cascade_set needs at least one user");
    for (const auto& fp : fp_per_user) {
        validate(fp);
        if (fp.L != fp_per_user.front().L) throw ConfigError("all users must share the element count L");
        if (fp.m_r != fp_per_user.front().m_r) throw ConfigError("all users must share m_r");
    }
    if (!(m_I > 0.0)) throw ConfigError("residual shape m_I must be positive");

    CascadeSampler sampler(seed, 0);
    ChannelDraw draw;
    draw.users.resize(fp_per_user.size());
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t u = 0; u < fp_per_user.size(); ++u) draw.users[u] = sampler.cascade(fp_per_user[u]);
        draw.residual = sampler.gamma_unit_mean(m_I);
        sink(draw);
    }
}

}  // namespace ris_noma
