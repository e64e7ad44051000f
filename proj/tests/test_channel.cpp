#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ris_noma/channel.hpp"
#include "ris_noma/errors.hpp"
#include "ris_noma/numerics.hpp"

using namespace ris_noma;

namespace {

double ks_distance(std::vector<double> sample, auto cdf)
{
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double F = cdf(sample[i]);
        ks = std::max({ks, std::abs(F - i / n), std::abs(F - (i + 1) / n)});
    }
    return ks;
}

std::vector<double> cascade_sums(const FadingParams& fp, std::size_t n, std::uint64_t seed)
{
    CascadeSampler s(seed, 0);
    std::vector<double> out(n);
    for (auto& y : out) y = s.cascade(fp).amplitude;
    return out;
}

// Order statistic CDF in the binomial form: at least `rank` of K variables fall below.
double binomial_order_cdf(double p, int K, int rank)
{
    double s = 0.0;
    for (int j = rank; j <= K; ++j) s += binomial(K, j) * std::pow(p, j) * std::pow(1.0 - p, K - j);
    return s;
}

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("cascade statistics for unit Rayleigh hops")
{
    const auto s = cascade_stats({1.0, 1.0, 3});
    CHECK(s.mu == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-14));
    CHECK(s.omega == doctest::Approx(1.0 - std::numbers::pi * std::numbers::pi / 16.0).epsilon(1e-14));
    const auto s2 = cascade_stats({1.0, 1.0, 2});
    CHECK(s2.b == doctest::Approx(2.0 * 0.6168503 / 0.3831497 - 1.0).epsilon(1e-6));
    CHECK(s2.c == doctest::Approx(s2.omega / s2.mu));

    const auto big = cascade_stats({1e4, 1e4, 2});
    CHECK(big.mu == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(big.omega < 1e-4);

    for (double m : {0.5, 0.7, 1.0, 2.0, 5.0}) {
        const auto t = cascade_stats({m, m, 4});
        CHECK(t.mu > 0.0);
        CHECK(t.mu < 1.0);
        CHECK(t.omega > 0.0);
        CHECK(t.omega < 1.0);
        CHECK(t.b + 1.0 == doctest::Approx(4 * t.mu * t.mu / t.omega));
    }
    CHECK_THROWS_AS(cascade_stats({0.4, 1.0, 2}), ConfigError);
    CHECK_THROWS_AS(cascade_stats({1.0, 1.0, 0}), ConfigError);
}

TEST_CASE("unsorted cascade CDF")
{
    const auto s = cascade_stats({1.0, 1.0, 4});
    CHECK(unsorted_cascade_cdf(s, 0.0) == 0.0);
    const double at_mean = unsorted_cascade_cdf(s, 4 * s.mu);
    CHECK(at_mean > 0.3);
    CHECK(at_mean < 0.7);
    CHECK(unsorted_cascade_cdf(s, 1e3) == doctest::Approx(1.0));
    CHECK_THROWS_AS(unsorted_cascade_cdf(s, -1.0), DomainError);

    auto sample = cascade_sums({1.0, 1.0, 4}, 1000000, 7);
    const double below = std::count_if(sample.begin(), sample.end(), [&](double y) { return y <= 4 * s.mu; });
    CHECK(std::abs(below / sample.size() - at_mean) < 0.03);
}

TEST_CASE("Gamma approximation of the cascade sum against simulation")
{
    for (int L : {2, 5, 10}) {
        for (double m : {0.5, 1.0, 2.0}) {
            const FadingParams fp{m, m, L};
            const auto st = cascade_stats(fp);
            const double ks = ks_distance(cascade_sums(fp, 1000000, 11 + L),
                                          [&](double y) { return unsorted_cascade_cdf(st, y); });
            INFO("L=" << L << " m=" << m << " ks=" << ks);
            CHECK(ks <= 0.03);
        }
    }
}

TEST_CASE("order spec")
{
    const auto o = make_order_spec(5, 2);
    CHECK(o.Psi == 5.0 * 4.0 * 3.0 * 2.0 / (3.0 * 2.0));
    for (int K = 1; K <= 20; ++K)
        for (int r = 1; r <= K; ++r) {
            double f = 1.0;
            for (int i = K - r + 1; i <= K; ++i) f *= i;
            double den = 1.0;
            for (int i = 1; i <= r - 1; ++i) den *= i;
            CHECK(make_order_spec(K, r).Psi == doctest::Approx(f / den).epsilon(1e-15));
        }
    CHECK_THROWS_AS(make_order_spec(21, 1), ConfigError);
    CHECK_THROWS_AS(make_order_spec(3, 0), ConfigError);
    CHECK_THROWS_AS(make_order_spec(3, 4), ConfigError);
}

TEST_CASE("sorted CDF matches the binomial form")
{
    for (int K = 1; K <= 20; ++K)
        for (int r = 1; r <= K; ++r) {
            const auto spec = make_order_spec(K, r);
            for (double p = 0.0; p <= 1.0; p += 0.05) {
                INFO("K=" << K << " r=" << r << " p=" << p);
                CHECK(std::abs(order_statistic_cdf(p, spec) - binomial_order_cdf(p, K, r)) < 1e-9);
            }
        }
}

TEST_CASE("sorted CDF special cases")
{
    const auto st = cascade_stats({0.5, 0.5, 5});
    for (double y : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        CHECK(sorted_cascade_cdf(st, make_order_spec(1, 1), y) == unsorted_cascade_cdf(st, y));
        const double p = unsorted_cascade_cdf(st, y);
        CHECK(sorted_cascade_cdf(st, make_order_spec(3, 3), y) == doctest::Approx(p * p * p).epsilon(1e-12));
    }
}

TEST_CASE("second of three against simulation")
{
    const FadingParams fp{1.0, 1.0, 4};
    const auto st = cascade_stats(fp);
    CascadeSampler s(5, 0);
    std::vector<double> second(300000);
    for (auto& v : second) {
        double y[3];
        for (double& yi : y) yi = s.cascade(fp).amplitude;
        std::sort(y, y + 3);
        v = y[1];
    }
    const auto spec = make_order_spec(3, 2);
    CHECK(ks_distance(second, [&](double y) { return sorted_cascade_cdf(st, spec, y); }) <= 0.03);
}

TEST_CASE("order statistic densities add up to K times the parent density")
{
    const auto st = cascade_stats({0.7, 0.7, 3});
    const int K = 6;
    const double h = 1e-4;
    double worst = 0.0;
    for (double y = h; y < 8.0; y += 0.05) {
        double sum = 0.0;
        for (int r = 1; r <= K; ++r) {
            const auto spec = make_order_spec(K, r);
            sum += (sorted_cascade_cdf(st, spec, y + h) - sorted_cascade_cdf(st, spec, y - h)) / (2 * h);
        }
        const double parent = (unsorted_cascade_cdf(st, y + h) - unsorted_cascade_cdf(st, y - h)) / (2 * h);
        worst = std::max(worst, std::abs(sum - K * parent));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("sorted CDF is nonincreasing in rank and nondecreasing in y")
{
    const auto st = cascade_stats({0.5, 0.5, 5});
    for (double y = 0.0; y < 10.0; y += 0.1)
        for (int r = 2; r <= 8; ++r)
            CHECK(sorted_cascade_cdf(st, make_order_spec(8, r), y) <=
                  sorted_cascade_cdf(st, make_order_spec(8, r - 1), y) + 1e-15);
    double prev = 0.0;
    for (double y = 0.0; y < 10.0; y += 0.1) {
        const double v = sorted_cascade_cdf(st, make_order_spec(4, 2), y);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("sampler moments")
{
    CascadeSampler s(3, 9);
    const std::size_t n = 1000000;
    for (double m : {0.5, 1.0, 3.0}) {
        double s2 = 0.0, s4 = 0.0, s4sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = s.nakagami(m);
            const double a2 = a * a;
            s2 += a2;
            s4 += a2 * a2;
            s4sq += a2 * a2 * a2 * a2;
        }
        const double e2 = s2 / n, e4 = s4 / n;
        CHECK(std::abs(e2 - 1.0) < 0.005);
        const double se4 = std::sqrt((s4sq / n - e4 * e4) / n);
        // unit spread fixes E[a^2] = 1, so the fourth moment must be 1 + 1/m
        CHECK(std::abs(e4 - (1.0 + 1.0 / m)) < 3.0 * se4);
    }

    double sy = 0.0;
    const FadingParams fp{1.0, 1.0, 5};
    for (std::size_t i = 0; i < n; ++i) sy += s.cascade(fp).amplitude;
    CHECK(sy / n == doctest::Approx(5.0 * std::numbers::pi / 4.0).epsilon(0.01));

    for (double mI : {0.5, 1.0, 2.5}) {
        double sx = 0.0;
        for (std::size_t i = 0; i < n; ++i) sx += s.gamma_unit_mean(mI);
        CHECK(std::abs(sx / n - 1.0) < 0.005);
    }
}

TEST_CASE("draw streams are reproducible")
{
    const std::vector<FadingParams> users{{0.5, 0.5, 4}, {0.5, 1.0, 4}};
    std::vector<double> a, b, c;
    sample_cascade_set(users, 0.5, 99, 1000, [&](const ChannelDraw& d) {
        a.push_back(d.users[0].amplitude);
        a.push_back(d.users[1].ris_gain);
        a.push_back(d.residual);
    });
    sample_cascade_set(users, 0.5, 99, 1000, [&](const ChannelDraw& d) {
        b.push_back(d.users[0].amplitude);
        b.push_back(d.users[1].ris_gain);
        b.push_back(d.residual);
    });
    sample_cascade_set(users, 0.5, 100, 1000, [&](const ChannelDraw& d) { c.push_back(d.users[0].amplitude); });
    CHECK(a == b);
    CHECK(a[0] != c[0]);

    CHECK_THROWS_AS(sample_cascade_set({{0.5, 0.5, 4}, {0.5, 0.5, 5}}, 1.0, 1, 10, [](const ChannelDraw&) {}),
                    ConfigError);
    CHECK_THROWS_AS(sample_cascade_set({{0.5, 0.5, 4}, {1.0, 0.5, 4}}, 1.0, 1, 10, [](const ChannelDraw&) {}),
                    ConfigError);
}

TEST_CASE("small-argument law of one element against the exact product density")
{
    // Exact density of a b with a, b unit-spread Nakagami(m_r), Nakagami(m_u).
    const double mr = 0.5, mu = 1.0;
    auto pdf = [&](double t) {
        return 4.0 * std::pow(mr * mu, (mr + mu) / 2.0) * std::pow(t, mr + mu - 1.0) /
               (std::tgamma(mr) * std::tgamma(mu)) * std::cyl_bessel_k(mu - mr, 2.0 * std::sqrt(mr * mu) * t);
    };
    double prev_gap = 1.0;
    for (double z : {1e-2, 1e-3, 1e-4}) {
        const double exact = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(pdf, 0.0, z, 20, 1e-13);
        const double C = 2.0 * std::tgamma(mu - mr) * std::pow(mr * mu, mr) * std::tgamma(2 * mr) /
                         (std::tgamma(mr) * std::tgamma(mu));
        const double law = C * std::pow(z, 2 * mr) / (2 * mr * std::tgamma(2 * mr));
        const double gap = std::abs(exact / law - 1.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-3);
}

}
