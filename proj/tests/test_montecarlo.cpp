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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "srma/distfit.hpp"
#include "srma/montecarlo.hpp"
#include "srma/outage.hpp"

using namespace srma;

namespace {

const ScenarioParams base = default_scenario();

McConfig mc_trials(std::uint64_t n, std::uint64_t seed, unsigned workers = 0)
{
    McConfig mc;
    mc.trials = n;
    mc.seed = seed;
    mc.workers = workers;
    return mc;
}

bool same_bits(const McSummary& a, const McSummary& b)
{
    for (std::size_t i = 0; i < metric_count; ++i) {
        if (std::memcmp(&a.metrics[i].value, &b.metrics[i].value, sizeof(double)) != 0 ||
            std::memcmp(&a.metrics[i].std_error, &b.metrics[i].std_error, sizeof(double)) != 0 ||
            a.metrics[i].trials != b.metrics[i].trials) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("config validation")
{
    CHECK_THROWS(mc_trials(0, 1).validate());
    auto mc = mc_trials(10, 1);
    mc.inner_c_samples = -1;
    CHECK_THROWS(mc.validate());
    CHECK_NOTHROW(mc_trials(1, 0).validate());
}

TEST_CASE("moments merge matches a single pass")
{
    Moments all;
    Moments left;
    Moments right;
    for (int i = 0; i < 1000; ++i) {
        const double x = std::sin(i * 0.37) * 10.0 + i * 0.01;
        all.add(x);
        (i < 313 ? left : right).add(x);
    }
    left.merge(right);
    CHECK(left.mean == doctest::Approx(all.mean).epsilon(1e-13));
    CHECK(left.m2 == doctest::Approx(all.m2).epsilon(1e-12));
    CHECK(left.n == all.n);
    Moments empty;
    empty.merge(all);
    CHECK(empty.mean == all.mean);
}

TEST_CASE("bit-identical results for any worker count")
{
    for (const int k : {1, 16}) {
        const auto p = base.with_k(k);
        const auto ref = run_monte_carlo(p, mc_trials(20000, 9, 1));
        for (const unsigned w : {4u, 16u}) {
            INFO("K = " << k << ", workers = " << w);
            CHECK(same_bits(ref, run_monte_carlo(p, mc_trials(20000, 9, w))));
        }
    }
    // a trial count that is not a multiple of the chunk size
    const auto ref = run_monte_carlo(base.with_k(4), mc_trials(5003, 2, 1));
    CHECK(same_bits(ref, run_monte_carlo(base.with_k(4), mc_trials(5003, 2, 16))));
    CHECK_FALSE(same_bits(ref, run_monte_carlo(base.with_k(4), mc_trials(5003, 3, 1))));
}

TEST_CASE("K = 1 makes the schemes coincide")
{
    const auto s = run_monte_carlo(base.with_k(1), mc_trials(20000, 4));
    CHECK(s[Metric::sa_cellular_rate].value == s[Metric::sda_cellular_rate].value);
    CHECK(s[Metric::sa_iot_rate].value == s[Metric::sda_iot_rate].value);
    CHECK(s[Metric::sa_cellular_outage].value == s[Metric::sda_cellular_outage].value);
    CHECK(s[Metric::sa_iot_outage].value == s[Metric::sda_iot_outage].value);
}

TEST_CASE("nested symbol sampling agrees with the per-realization closed form")
{
    const auto p = base.with_k(16);
    auto nested = mc_trials(20000, 6);
    nested.inner_c_samples = 256;
    const auto exact = mc_ergodic_rates(p, nested, Scheme::sa)[0];
    const auto closed = mc_ergodic_rates(p, mc_trials(20000, 6), Scheme::sa)[0];
    CHECK(std::abs(exact.value - closed.value) < 0.01 * closed.value);
    const auto exact_sda = mc_ergodic_rates(p, nested, Scheme::sda)[0];
    const auto closed_sda = mc_ergodic_rates(p, mc_trials(20000, 6), Scheme::sda)[0];
    CHECK(std::abs(exact_sda.value - closed_sda.value) < 0.01 * closed_sda.value);
}

TEST_CASE("zero IoT target never goes into outage")
{
    auto p = base.with_k(8).with_power(dbm_to_watts(-20.0));
    p.target_rate_c = 0.0;
    const auto s = run_monte_carlo(p, mc_trials(5000, 1));
    CHECK(s[Metric::sa_iot_outage].value == 0.0);
    CHECK(s[Metric::sda_iot_outage].value == 0.0);
}

TEST_CASE("SA outage does not exceed SDA outage for matched seeds")
{
    for (const int k : {1, 2, 4, 8, 16, 64}) {
        for (double dbm = 0.0; dbm <= 45.0; dbm += 5.0) {
            const auto p = base.with_k(k).with_power(dbm_to_watts(dbm));
            const auto s = run_monte_carlo(p, mc_trials(20000, 8), CellularOutageRule::high_snr);
            INFO("K = " << k << ", p = " << dbm << " dBm");
            CHECK(s[Metric::sa_cellular_outage].value <= s[Metric::sda_cellular_outage].value);
            CHECK(s[Metric::sa_iot_outage].value <= s[Metric::sda_iot_outage].value);
            CHECK(s[Metric::sa_cellular_rate].value >= s[Metric::sda_cellular_rate].value);
            CHECK(s[Metric::sa_iot_rate].value >= s[Metric::sda_iot_rate].value);
        }
    }
}

TEST_CASE("outage estimates against closed forms")
{
    for (const int k : {2, 4, 8}) {
        for (double dbm = 0.0; dbm <= 45.0; dbm += 5.0) {
            const auto p = base.with_k(k).with_power(dbm_to_watts(dbm));
            const auto in = OutageInputs::from(p);
            const auto s = run_monte_carlo(p, mc_trials(100000, 12));
            // the plug-in stderr is 0 when every trial lands on the same side, so the
            // binomial stderr at the closed-form value is admitted as well
            const auto near = [](double analytic, const MetricEstimate& e) {
                const double null_se = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(e.trials));
                const bool ok = std::abs(analytic - e.value) <= 3.0 * std::max(e.std_error, null_se);
                if (!ok) {
                    MESSAGE("closed form " << analytic << ", MC " << e.value << " +/- " << e.std_error);
                }
                return ok;
            };
            INFO("K = " << k << ", p = " << dbm << " dBm");
            if (s[Metric::sa_cellular_outage].value >= 1e-2) {
                CHECK(near(sa_cellular_outage(in).value, s[Metric::sa_cellular_outage]));
            }
            CHECK(near(sda_cellular_outage(in).value, s[Metric::sda_cellular_outage]));
            CHECK(near(sa_iot_outage(in).value, s[Metric::sa_iot_outage]));
            CHECK(near(sda_iot_outage(in).value, s[Metric::sda_iot_outage]));
        }
    }
}

TEST_CASE("strength samples")
{
    const auto p = base.with_k(64);
    const auto mc = mc_trials(50000, 21);
    const auto sums = mc_strength_samples(p, mc, Strength::lambda_sum);
    const auto maxes = mc_strength_samples(p, mc, Strength::z_max);
    REQUIRE(sums.size() == 50000);
    CHECK(stats::mean(sums) == doctest::Approx(64 * base.lambda_prod / strength_unit).epsilon(0.01));
    for (std::size_t i = 0; i < sums.size(); ++i) {
        REQUIRE(maxes[i] >= sums[i] / 64.0 * (1.0 - 1e-15));
    }

    auto single = base.with_k(500);
    single.fading_mode = FadingMode::single_rayleigh;
    const auto light = mc_strength_samples(single, mc_trials(20000, 5), Strength::z_max);
    const auto heavy = mc_strength_samples(base.with_k(500), mc_trials(20000, 5), Strength::z_max);
    CHECK(stats::quantile(light, 0.999) < stats::quantile(heavy, 0.999));
}

TEST_CASE("standardized maxima at K = 1024 follow the Gumbel law")
{
    const auto p = base.with_k(1024);
    auto maxes = mc_strength_samples(p, mc_trials(10000, 1024), Strength::z_max);
    const auto gumbel = [](double x) { return std::exp(-std::exp(-x)); };

    const auto g = gumbel_normalizers(p);
    std::vector<double> closed;
    for (const double s : maxes) {
        closed.push_back((s * strength_unit - g.a_k) / g.b_k);
    }
    const double d = stats::ks_statistic(closed, gumbel);
    INFO("KS distance " << d);
    CHECK(stats::kolmogorov_pvalue(d, closed.size()) >= 0.01);

    const auto q = gumbel_normalizers_exact(p);
    std::vector<double> quant;
    for (const double s : maxes) {
        quant.push_back((s * strength_unit - q.a_k) / q.b_k);
    }
    // diagnostic only: separates the constants' error from pre-asymptotic shape error
    const double dq = stats::ks_statistic(quant, gumbel);
    MESSAGE("quantile constants: KS distance " << dq << ", p-value " << stats::kolmogorov_pvalue(dq, quant.size()));
}

TEST_CASE("standard error shrinks as 1 / sqrt(trials)")
{
    const auto p = base.with_k(8);
    const auto se = [&](std::uint64_t n) { return mc_ergodic_rates(p, mc_trials(n, 33), Scheme::sa)[0].std_error; };
    const double s3 = se(1000);
    const double s4 = se(10000);
    const double s5 = se(100000);
    CHECK(s3 / s4 == doctest::Approx(std::sqrt(10.0)).epsilon(0.2));
    CHECK(s4 / s5 == doctest::Approx(std::sqrt(10.0)).epsilon(0.2));
}

TEST_CASE("SIC telescoping on simulated realizations")
{
    const auto p = base.with_k(32);
    for (std::uint64_t t = 0; t < 2000; ++t) {
        auto s = stream_for_trial(99, t);
        const auto r = draw_realization(p, s);
        double chain = 0.0;
        for (const double g : sa_iot_sinr_chain(r, p)) {
            chain += std::log2(1.0 + g);
        }
        const double direct = std::log2(1.0 + p.n_spread * p.p_watts * p.alpha * p.alpha * r.lambda_sum / p.sigma2_watts);
        REQUIRE(chain == doctest::Approx(direct).epsilon(1e-12));
    }
}
