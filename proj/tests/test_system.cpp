#include <doctest.h>

#include <array>
#include <cmath>

#include "ris_noma/errors.hpp"
#include "ris_noma/system.hpp"
#include "support.hpp"

using namespace ris_noma;

namespace {

SystemConfig clean(SystemConfig c)
{
    c.kappa_b = c.kappa_g = c.kappa_f = c.kappa_o = 0.0;
    c.xi = 0;
    c.beta = 1.0;
    c.varpi = 0;
    return c;
}

}  // namespace

TEST_SUITE("system") {

TEST_CASE("target SINRs")
{
    SystemConfig c = test_support::baseline();
    c.R_g = 1.0;
    c.R_f = 1.5;
    c.R_o = 0.0;
    const auto t = derive_targets(c);
    CHECK(t.gamma_th_g == 1.0);
    CHECK(t.gamma_th_f == doctest::Approx(1.828427).epsilon(1e-6));
    CHECK(t.gamma_th_o == 0.0);
}

TEST_CASE("unit conversions")
{
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
    CHECK(dbm_to_watts(-20.0) == doctest::Approx(1e-5));
    CHECK(watts_to_dbm(1e-3) == doctest::Approx(0.0));
    CHECK(db_to_linear(-40.0) == doctest::Approx(1e-4));
    for (double d : {-84.0, -30.0, 0.0, 17.5, 40.0}) CHECK(watts_to_dbm(dbm_to_watts(d)) == doctest::Approx(d));
}

TEST_CASE("zero cascade gives zero SINR")
{
    const auto c = test_support::baseline();
    CHECK(sinr_g_to_f(c, 0.0).sinr == 0.0);
    CHECK(sinr_g(c, 0.0, 1.0).sinr == 0.0);
    CHECK(sinr_f(c, 0.0).sinr == 0.0);
    CHECK(sinr_o(c, 0.0).sinr == 0.0);
}

TEST_CASE("breakdown adds up")
{
    auto c = test_support::baseline();
    c.varpi = 1;
    for (const auto& s : {sinr_g_to_f(c, 2.0), sinr_g(c, 2.0, 0.7), sinr_f(c, 2.0), sinr_o(c, 2.0)}) {
        CHECK(s.signal >= 0.0);
        CHECK(s.impairment_term >= 0.0);
        CHECK(s.residual_ipSIC >= 0.0);
        CHECK(s.ris_noise >= 0.0);
        CHECK(s.thermal >= 0.0);
        CHECK(s.sinr == doctest::Approx(s.signal / (s.impairment_term + s.residual_ipSIC + s.ris_noise + s.thermal))
                            .epsilon(1e-15));
    }
}

TEST_CASE("impairment-free links reduce to textbook SNRs")
{
    auto c = clean(test_support::baseline());
    const double Y = 1.7;
    const double rho = c.P_b / c.sigma2;
    const double gain_g = path_gain(c, User::g) * Y * Y;
    const double gain_f = path_gain(c, User::f) * Y * Y;
    const double gain_o = path_gain(c, User::o) * Y * Y;

    CHECK(sinr_g(c, Y, 5.0).sinr == doctest::Approx(rho * gain_g * c.a_g).epsilon(1e-14));
    CHECK(sinr_g(c, Y, 5.0).residual_ipSIC == 0.0);
    CHECK(sinr_f(c, Y).sinr == doctest::Approx(c.a_f * rho * gain_f / (c.a_g * rho * gain_f + 1.0)).epsilon(1e-14));
    CHECK(sinr_o(c, Y).sinr == doctest::Approx(rho * gain_o).epsilon(1e-14));

    auto one = c;
    one.a_f = 1.0;
    one.a_g = 0.0;
    CHECK(sinr_g_to_f(one, Y).sinr == doctest::Approx(rho * gain_g).epsilon(1e-14));
}

TEST_CASE("interference-limited ceilings")
{
    auto c = test_support::baseline();
    const double Y = 1e9;
    CHECK(sinr_g_to_f(c, Y).sinr == doctest::Approx(c.a_f / chi_g_to_f(c)).epsilon(1e-9));
    CHECK(sinr_g(c, Y, 1.0).sinr == doctest::Approx(c.a_g / chi_g(c)).epsilon(1e-9));
    CHECK(sinr_f(c, Y).sinr == doctest::Approx(c.a_f / chi_f(c)).epsilon(1e-9));
    CHECK(sinr_o(c, Y).sinr == doctest::Approx(1.0 / chi_o(c)).epsilon(1e-9));

    // Without impairments the imperfect-SIC near user keeps growing.
    auto k0 = c;
    k0.kappa_b = k0.kappa_g = 0.0;
    k0.varpi = 1;
    CHECK(sinr_g(k0, 1e3, 1.0).sinr < sinr_g(k0, 1e4, 1.0).sinr);
    CHECK(sinr_g(k0, 1e4, 1.0).sinr > 1e3 * c.a_g / chi_g(c));
}

TEST_CASE("SINR monotone in the cascade and in every noise source")
{
    auto base = test_support::baseline();
    base.varpi = 1;
    auto all = [](const SystemConfig& c, double Y) {
        return std::array<double, 4>{sinr_g_to_f(c, Y).sinr, sinr_g(c, Y, 0.5).sinr, sinr_f(c, Y).sinr,
                                     sinr_o(c, Y).sinr};
    };
    for (double Y = 0.0; Y < 20.0; Y += 0.25) {
        const auto lo = all(base, Y), hi = all(base, Y + 0.25);
        for (int i = 0; i < 4; ++i) CHECK(hi[i] >= lo[i]);
    }
    const double Y = 3.0;
    const auto ref = all(base, Y);
    auto worse = [&](auto edit) {
        auto c = base;
        edit(c);
        const auto v = all(c, Y);
        for (int i = 0; i < 4; ++i) CHECK(v[i] <= ref[i]);
    };
    worse([](SystemConfig& c) { c.kappa_b = 0.2; });
    worse([](SystemConfig& c) { c.kappa_g = c.kappa_f = c.kappa_o = 0.2; });
    worse([](SystemConfig& c) { c.sigma2 *= 10.0; });
    worse([](SystemConfig& c) { c.N_tn *= 10.0; });
}

TEST_CASE("passive variant")
{
    auto c = test_support::baseline();
    c.beta = 7.0;
    const auto p = apply_variant(c, {Surface::Passive, Sic::Imperfect});
    CHECK(p.xi == 0);
    CHECK(p.beta == 1.0);
    CHECK(p.varpi == 1);
    CHECK(sinr_f(p, 2.0).ris_noise == 0.0);
    const auto a = apply_variant(c, {Surface::Active, Sic::Perfect});
    CHECK(a.xi == 1);
    CHECK(a.beta == 7.0);
    CHECK(a.varpi == 0);

    // Setting xi = 0 and beta = 1 by hand lands on exactly the passive numbers.
    auto manual = c;
    manual.xi = 0;
    manual.beta = 1.0;
    manual.varpi = 1;
    for (double Y : {0.1, 1.0, 4.0}) {
        CHECK(sinr_f(manual, Y).sinr == sinr_f(p, Y).sinr);
        CHECK(sinr_g(manual, Y, 0.3).sinr == sinr_g(p, Y, 0.3).sinr);
        CHECK(sinr_o(manual, Y).sinr == sinr_o(p, Y).sinr);
    }
}

TEST_CASE("drawn surface-noise norm")
{
    const auto c = test_support::baseline();
    const double mean = c.L * omega_ru(c, User::f);
    CHECK(sinr_f(c, 2.0, mean).sinr == sinr_f(c, 2.0).sinr);
    CHECK(sinr_f(c, 2.0, 2.0 * mean).ris_noise == doctest::Approx(2.0 * sinr_f(c, 2.0).ris_noise));
    CHECK(omega_ru(c, User::f) == doctest::Approx(std::pow(20.0, -2.2)));
}

TEST_CASE("guards on the baseline")
{
    const auto c = test_support::baseline();
    const auto g = check_guards(c);
    CHECK(g.g_ok);
    CHECK(g.f_ok);
    CHECK(g.o_ok);
    CHECK(g.f_margin == doctest::Approx(0.75 - 1.828427 * 0.27).epsilon(1e-6));

    auto bad = c;
    bad.kappa_b = bad.kappa_g = 0.3;  // chi_g = 0.18, 1.83 * 0.18 > 0.25 but 1.83 * 0.0324 < 0.25
    const auto lin = check_guards(bad);
    CHECK_FALSE(lin.g_ok);
    CHECK(lin.g_forms_disagree);
    bad.guard = SicGuard::Printed;
    CHECK(check_guards(bad).g_ok);

    auto far = c;
    far.R_f = 3.0;
    CHECK_FALSE(check_guards(far).f_ok);
}

TEST_CASE("validation names the offending field")
{
    auto c = test_support::baseline();
    CHECK_NOTHROW(validate(c));
    auto split = c;
    split.a_g = 0.6;
    split.a_f = 0.4;
    CHECK_THROWS_WITH_AS(validate(split), doctest::Contains("a_g"), ConfigError);
    auto sum = c;
    sum.a_f = 0.7;
    CHECK_THROWS_AS(validate(sum), ConfigError);
    auto beta = c;
    beta.beta = 0.5;
    CHECK_THROWS_WITH_AS(validate(beta), doctest::Contains("beta"), ConfigError);
    auto kap = c;
    kap.kappa_o = -0.1;
    CHECK_THROWS_AS(validate(kap), ConfigError);
    auto rank = c;
    rank.g = 4;
    CHECK_THROWS_AS(validate(rank), ConfigError);
    auto shape = c;
    shape.m_f = 0.3;
    CHECK_THROWS_AS(validate(shape), ConfigError);
    auto dist = c;
    dist.d_rf = 0.0;
    CHECK_THROWS_AS(validate(dist), ConfigError);
}

}
