#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace ris_noma {

struct FadingParams {
    double m_r = 1.0;  // BS -> RIS shape
    double m_u = 1.0;  // RIS -> user shape
    int L = 1;
};

/// Moment-matched Gamma model of one cascade sum Y = sum_l |h_br^l| |h_ru^l|.
struct CascadeStats {
    double mu = 0.0;     // mean of one product term
    double omega = 0.0;  // variance of one product term
    double b = 0.0;      // Gamma shape minus one
    double c = 0.0;      // Gamma scale
};

struct OrderSpec {
    int K = 1;
    int rank = 1;
    double Psi = 1.0;
};

void validate(const FadingParams& fp);
CascadeStats cascade_stats(const FadingParams& fp);

/// K <= 20 and 1 <= rank <= K, otherwise ConfigError.
OrderSpec make_order_spec(int K, int rank);

/// CDF of the rank-th smallest of K i.i.d. variables whose common CDF value is p.
double order_statistic_cdf(double p, const OrderSpec& spec);

double unsorted_cascade_cdf(const CascadeStats& stats, double y);
double sorted_cascade_cdf(const CascadeStats& stats, const OrderSpec& spec, double y);

struct CascadeSample {
    double amplitude = 0.0;  // sum_l a_l b_l
    double ris_gain = 0.0;   // sum_l b_l^2, the RIS -> user norm before path loss
};

std::uint64_t splitmix64(std::uint64_t x);

/// Independent sub-stream of Nakagami and Gamma draws keyed by (seed, stream).
class CascadeSampler {
public:
    CascadeSampler(std::uint64_t seed, std::uint64_t stream);

    double nakagami(double m);  // unit spread
    double gamma_unit_mean(double shape);
    CascadeSample cascade(const FadingParams& fp);

private:
    std::mt19937_64 eng_;
};

struct ChannelDraw {
    std::vector<CascadeSample> users;
    double residual = 0.0;  // Gamma(m_I, m_I), unit mean
};

/// Streams `trials` draws, one cascade per entry of fp_per_user plus one residual sample.
void sample_cascade_set(const std::vector<FadingParams>& fp_per_user, double m_I, std::uint64_t seed,
                        std::size_t trials, const std::function<void(const ChannelDraw&)>& sink);

}  // namespace ris_noma
