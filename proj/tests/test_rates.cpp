/*
   Copyright 2026 The srma Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "srma/distfit.hpp"
#include "srma/montecarlo.hpp"
#include "srma/rates.hpp"

using namespace srma;
namespace sf = srma::specfun;

namespace {

const ScenarioParams base = default_scenario();
const sf::QuadratureSpec quad{};

McConfig mc_trials(std::uint64_t n, std::uint64_t seed = 1)
{
    McConfig mc;
    mc.trials = n;
    mc.seed = seed;
    return mc;
}

ChannelRealization fixed_realization(std::vector<double> z)
{
    ChannelRealization r;
    r.h0 = {1e-6, 0.0};
    for (const double v : z) {
        r.h.emplace_back(std::sqrt(v), 0.0);
        r.g.emplace_back(1.0, 0.0);
        r.z.push_back(v);
        r.lambda_sum += v;
    }
    return r;
}

}  // namespace

TEST_CASE("high-SNR cellular rate limits")
{
    const double h0 = base.lambda0;
    CHECK(high_snr_cellular_rate(h0, 0.0, base) == doctest::Approx(std::log2(base.p_watts * h0 / base.sigma2_watts)));
    CHECK(high_snr_cellular_rate(h0, 1e-30 * h0, base) ==
          doctest::Approx(std::log2(base.p_watts * h0 / base.sigma2_watts)).epsilon(1e-15));
    const double unit = base.sigma2_watts / base.p_watts;
    CHECK(std::abs(high_snr_cellular_rate(unit, 1e-40, base)) < 1e-12);
    // for h0 / B beyond ~35 the E1 term drops under one ulp of the direct term
    double prev = high_snr_cellular_rate(h0, 0.1 * h0, base);
    for (double b = 0.17 * h0; b < 1e3 * h0; b *= 1.7) {
        const double r = high_snr_cellular_rate(h0, b, base);
        CHECK(r > prev);
        prev = r;
    }
    CHECK_THROWS_AS(high_snr_cellular_rate(0.0, h0, base), DomainError);
}

TEST_CASE("high-SNR cellular rate against nested sampling of the symbols")
{
    // E over w ~ CN(0, B) of log2(1 + p |h0 + w|^2 / sigma^2) with |h0|^2 = lambda0
    const auto p = base.with_k(16);
    const double b = p.k_devices * p.alpha * p.alpha * p.lambda_prod;
    auto s = stream_for_trial(77, 0);
    constexpr int n = 1000000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto y = std::complex<double>(std::sqrt(p.lambda0), 0.0) + s.complex_normal(b);
        sum += std::log2(1.0 + p.p_watts * std::norm(y) / p.sigma2_watts);
    }
    CHECK(std::abs(high_snr_cellular_rate(p.lambda0, b, p) - sum / n) < 0.05);
}

TEST_CASE("SA IoT sum rate and SIC chain")
{
    const auto p = base.with_k(4);
    const auto zero = fixed_realization({0.0, 0.0, 0.0, 0.0});
    CHECK(sa_iot_sum_rate_realized(zero, p) == 0.0);

    for (std::uint64_t t = 0; t < 5000; ++t) {
        auto s = stream_for_trial(5, t);
        const auto r = draw_realization(p, s);
        double chain = 0.0;
        for (const double g : sa_iot_sinr_chain(r, p)) {
            chain += std::log2(1.0 + g) / p.n_spread;
        }
        CHECK(chain == doctest::Approx(sa_iot_sum_rate_realized(r, p)).epsilon(1e-12));
    }

    auto s = stream_for_trial(2024, 0);
    const auto r = draw_realization(p.with_k(16), s);
    double lambda_sum = 0.0;
    for (std::size_t k = 0; k < r.g.size(); ++k) {
        lambda_sum += std::norm(r.g[k] * r.h[k]);
    }
    const double want = std::log(1.0 + 64.0 * 1.0 * lambda_sum / 1e-14) / std::log(2.0) / 64.0;
    CHECK(sa_iot_sum_rate_realized(r, p.with_k(16)) == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("SA cellular ergodic rate")
{
    auto tiny = base;
    tiny.alpha = 1e-9;
    CHECK(sa_cellular_ergodic(tiny) ==
          doctest::Approx(std::log2(base.p_watts * base.lambda0 / base.sigma2_watts) - sf::euler_gamma * sf::log2_e)
              .epsilon(1e-12));
    double prev_k = sa_cellular_ergodic(base.with_k(1));
    for (const int k : {2, 4, 8, 64, 1024}) {
        const double v = sa_cellular_ergodic(base.with_k(k));
        CHECK(v > prev_k);
        prev_k = v;
    }
    double prev_p = sa_cellular_ergodic(base.with_power(dbm_to_watts(0.0)));
    for (double dbm = 5.0; dbm <= 50.0; dbm += 5.0) {
        const double v = sa_cellular_ergodic(base.with_power(dbm_to_watts(dbm)));
        CHECK(v > prev_p);
        prev_p = v;
    }
}

TEST_CASE("SA cellular K = 64 minus K = 16 matches Monte Carlo")
{
    const auto a = mc_ergodic_rates(base.with_k(64), mc_trials(100000, 64), Scheme::sa)[0];
    const auto b = mc_ergodic_rates(base.with_k(16), mc_trials(100000, 16), Scheme::sa)[0];
    const double analytic = sa_cellular_ergodic(base.with_k(64)) - sa_cellular_ergodic(base.with_k(16));
    const double se = std::hypot(a.std_error, b.std_error);
    CHECK(std::abs(analytic - (a.value - b.value)) <= 2.0 * se);
}

TEST_CASE("SA IoT ergodic rate")
{
    CHECK(sa_iot_ergodic(base.with_power(1e-20)) < 1e-8);
    const auto mc = mc_ergodic_rates(base.with_k(16), mc_trials(100000), Scheme::sa)[1];
    CHECK(sa_iot_ergodic(base.with_k(16)) == doctest::Approx(mc.value).epsilon(0.02));

    // at high SNR, N R ~ log2 N + const
    std::vector<double> x;
    std::vector<double> y;
    for (const int n : {32, 64, 128}) {
        auto p = base.with_power(dbm_to_watts(50.0));
        p.n_spread = n;
        x.push_back(std::log2(static_cast<double>(n)));
        y.push_back(n * sa_iot_ergodic(p));
    }
    const auto fit = stats::linear_regression(x, y);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(0.01));
    CHECK(fit.r_squared > 0.9999);
}

TEST_CASE("SDA cellular ergodic rate")
{
    const auto one = sda_cellular_ergodic(base.with_k(1), quad);
    const auto mc = mc_ergodic_rates(base.with_k(1), mc_trials(100000), Scheme::sa)[0];
    CHECK(one.value == doctest::Approx(mc.value).epsilon(0.02));
    for (const int k : {1, 4, 16, 64, 512}) {
        const auto p = base.with_k(k);
        const double coarse = sda_cellular_ergodic(p, {1000.0, 1000.0, 128}).value;
        const double fine = sda_cellular_ergodic(p, {1000.0, 1000.0, 256}).value;
        INFO("K = " << k);
        CHECK(std::abs(coarse - fine) < 1e-3 * std::abs(fine));
        CHECK(sda_cellular_ergodic(p, quad).converged);
    }
}

TEST_CASE("SDA IoT exact ergodic rate")
{
    const auto one = sda_iot_ergodic_exact(base.with_k(1), quad);
    const auto mc = mc_ergodic_rates(base.with_k(1), mc_trials(100000), Scheme::sda)[1];
    CHECK(one.value == doctest::Approx(mc.value).epsilon(0.02));
    CHECK(sda_iot_ergodic_exact(base.with_k(4), quad).value == doctest::Approx(0.1731).epsilon(0.01 / 0.1731));
    CHECK(sda_iot_ergodic_exact(base.with_k(32), quad).value > sda_iot_ergodic_exact(base.with_k(8), quad).value);
    for (const int k : {4, 16, 64, 512}) {
        const auto p = base.with_k(k);
        const double coarse = sda_iot_ergodic_exact(p, {1000.0, 1000.0, 128}).value;
        const double fine = sda_iot_ergodic_exact(p, {1000.0, 1000.0, 256}).value;
        CHECK(std::abs(coarse - fine) < 1e-3 * fine);
    }
}

TEST_CASE("closed forms reject single fading")
{
    auto p = base;
    p.fading_mode = FadingMode::single_rayleigh;
    CHECK_THROWS_AS(sa_cellular_ergodic(p), DomainError);
    CHECK_THROWS_AS(sda_iot_ergodic_exact(p, quad), DomainError);
}

TEST_CASE("extreme-value normalizers")
{
    double prev = 0.0;
    for (const int k : {2, 4, 16, 64, 1024}) {
        const auto g = gumbel_normalizers(base.with_k(k));
        CHECK(g.b_k > 0.0);
        CHECK(g.a_k > prev);
        CHECK(g.b_bar > 0.0);
        CHECK(g.a_bar == doctest::Approx(std::log2(1.0 + 64.0 / 1e-14 * g.a_k) / 64.0).epsilon(1e-9));
        prev = g.a_k;
    }
    auto huge = base;
    huge.lambda_h = 10.0;
    huge.lambda_g = 10.0;
    huge.lambda_prod = 100.0;
    CHECK_THROWS_AS(gumbel_normalizers(huge.with_k(1)), DomainError);
}

TEST_CASE("closed-form location constant is the 1 - 1/K quantile")
{
    for (const int k : {64, 128, 256, 512, 1024}) {
        const auto g = gumbel_normalizers(base.with_k(k));
        const double tail = z_ccdf(g.a_k, base.lambda_prod);
        INFO("K = " << k << ", K P(Z > a_K) = " << k * tail);
        CHECK(std::abs(tail - 1.0 / k) <= 0.15 / k);
    }
}

TEST_CASE("quantile-based normalizers")
{
    for (const int k : {4, 64, 1024}) {
        const auto g = gumbel_normalizers_exact(base.with_k(k));
        CHECK(z_ccdf(g.a_k, base.lambda_prod) == doctest::Approx(1.0 / k).epsilon(1e-9));
        CHECK(z_ccdf(g.a_k + g.b_k, base.lambda_prod) == doctest::Approx(1.0 / (k * std::exp(1.0))).epsilon(1e-9));
    }
    CHECK_THROWS_AS(z_tail_quantile(1.0), DomainError);
    CHECK_THROWS_AS(z_tail_quantile(0.0), DomainError);
    CHECK_THROWS_AS(gumbel_normalizers_exact(base.with_k(1)), DomainError);
}

TEST_CASE("SDA IoT asymptotic rate")
{
    const auto gap = [](int k) {
        const auto p = base.with_k(k);
        return std::abs(sda_iot_ergodic_asymptotic(p) - sda_iot_ergodic_exact(p, quad).value);
    };
    CHECK(gap(512) < gap(8));

    std::vector<double> x;
    std::vector<double> y;
    for (const int k : {64, 128, 256, 512, 1024}) {
        x.push_back(std::log(std::log(static_cast<double>(k))));
        y.push_back(sda_iot_ergodic_asymptotic(base.with_k(k)));
    }
    CHECK(stats::linear_regression(x, y).r_squared > 0.99);
}

TEST_CASE("SA dominates SDA analytically")
{
    for (const int k : {2, 4, 8, 16, 64, 256}) {
        for (double dbm = 0.0; dbm <= 50.0; dbm += 5.0) {
            const auto p = base.with_k(k).with_power(dbm_to_watts(dbm));
            INFO("K = " << k << ", p = " << dbm << " dBm");
            CHECK(sa_cellular_ergodic(p) >= sda_cellular_ergodic(p, quad).value);
            CHECK(sa_iot_ergodic(p) >= sda_iot_ergodic_exact(p, quad).value);
        }
    }
}

TEST_CASE("high-SNR slopes")
{
    const double per_db = 1.0 / (10.0 * std::log10(2.0));
    const auto slope = [](auto&& rate) {
        return (rate(base.with_power(dbm_to_watts(50.0))) - rate(base.with_power(dbm_to_watts(40.0)))) / 10.0;
    };
    CHECK(slope([](const ScenarioParams& p) { return sa_cellular_ergodic(p); }) == doctest::Approx(per_db).epsilon(0.05));
    CHECK(slope([](const ScenarioParams& p) { return sda_cellular_ergodic(p, quad).value; }) ==
          doctest::Approx(per_db).epsilon(0.05));
    CHECK(slope([](const ScenarioParams& p) { return sa_iot_ergodic(p); }) ==
          doctest::Approx(per_db / 64.0).epsilon(0.05));
    CHECK(slope([](const ScenarioParams& p) { return sda_iot_ergodic_exact(p, quad).value; }) ==
          doctest::Approx(per_db / 64.0).epsilon(0.05));
}

TEST_CASE("SA rates grow affinely in ln K")
{
    std::vector<double> x;
    std::vector<double> cell;
    std::vector<double> iot;
    for (int k = 8; k <= 1024; k *= 2) {
        x.push_back(std::log(static_cast<double>(k)));
        cell.push_back(sa_cellular_ergodic(base.with_k(k)));
        iot.push_back(sa_iot_ergodic(base.with_k(k)));
    }
    CHECK(stats::linear_regression(x, cell).r_squared > 0.99);
    CHECK(stats::linear_regression(x, iot).r_squared > 0.99);
}

TEST_CASE("analytic rates are nondecreasing in p and K")
{
    const std::vector<int> ks = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
    for (double dbm = 0.0; dbm <= 50.0; dbm += 5.0) {
        double prev[4] = {-1e300, -1e300, -1e300, -1e300};
        for (const int k : ks) {
            const auto p = base.with_k(k).with_power(dbm_to_watts(dbm));
            const double v[4] = {sa_cellular_ergodic(p), sa_iot_ergodic(p), sda_cellular_ergodic(p, quad).value,
                                 sda_iot_ergodic_exact(p, quad).value};
            for (int i = 0; i < 4; ++i) {
                INFO("rate " << i << ", K = " << k << ", p = " << dbm << " dBm");
                CHECK(v[i] >= prev[i]);
                prev[i] = v[i];
            }
        }
    }
    for (const int k : ks) {
        double prev[4] = {-1e300, -1e300, -1e300, -1e300};
        for (double dbm = 0.0; dbm <= 50.0; dbm += 5.0) {
            const auto p = base.with_k(k).with_power(dbm_to_watts(dbm));
            const double v[4] = {sa_cellular_ergodic(p), sa_iot_ergodic(p), sda_cellular_ergodic(p, quad).value,
                                 sda_iot_ergodic_exact(p, quad).value};
            for (int i = 0; i < 4; ++i) {
                CHECK(v[i] >= prev[i]);
                prev[i] = v[i];
            }
        }
    }
}

TEST_CASE("analytic rates agree with Monte Carlo at p = 1 W")
{
    for (const int k : {2, 4, 8, 16, 64}) {
        const auto p = base.with_k(k);
        const auto mc = run_monte_carlo(p, mc_trials(100000, static_cast<std::uint64_t>(k)));
        const double rel = k >= 8 ? 0.02 : 0.06;
        const auto agree = [&](double analytic, const MetricEstimate& e) {
            return std::abs(analytic - e.value) <= std::max(rel * std::abs(e.value), 3.0 * e.std_error);
        };
        INFO("K = " << k);
        CHECK(agree(sa_cellular_ergodic(p), mc[Metric::sa_cellular_rate]));
        CHECK(agree(sa_iot_ergodic(p), mc[Metric::sa_iot_rate]));
        CHECK(agree(sda_cellular_ergodic(p, quad).value, mc[Metric::sda_cellular_rate]));
        CHECK(agree(sda_iot_ergodic_exact(p, quad).value, mc[Metric::sda_iot_rate]));
    }
}
