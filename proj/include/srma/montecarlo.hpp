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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "srma/channel.hpp"
#include "srma/rates.hpp"

namespace srma {

struct McConfig {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    /// 0: high-SNR closed form per realization; > 0: average the exact cellular
    /// rate over this many draws of the IoT symbols.
    int inner_c_samples = 0;
    /// Thread count; 0 picks the hardware concurrency. Never changes results.
    unsigned workers = 0;

    void validate() const;
};

struct MetricEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    Source source = Source::monte_carlo;
};

/// Which per-realization cellular rate is compared against the target:
/// the first-order bound (cellular_rate_bound) or the high-SNR closed form
/// with the E1 term (high_snr_cellular_rate).
enum class CellularOutageRule { first_order_bound, high_snr };

enum class Metric : std::size_t {
    sa_cellular_rate,
    sda_cellular_rate,
    sa_iot_rate,
    sda_iot_rate,
    sa_cellular_outage,
    sda_cellular_outage,
    sa_iot_outage,
    sda_iot_outage,
    count
};

inline constexpr std::size_t metric_count = static_cast<std::size_t>(Metric::count);

struct McSummary {
    std::array<MetricEstimate, metric_count> metrics;

    const MetricEstimate& operator[](Metric m) const { return metrics[static_cast<std::size_t>(m)]; }
};

/// Running mean / sum of squared deviations; merged with Chan's update.
struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x);
    void merge(const Moments& other);
    MetricEstimate estimate() const;
};

/// All eight metrics from one pass over the same realizations.
McSummary run_monte_carlo(const ScenarioParams& params, const McConfig& mc,
                          CellularOutageRule rule = CellularOutageRule::first_order_bound);

/// Cellular and IoT ergodic rate estimates for one scheme.
std::array<MetricEstimate, 2> mc_ergodic_rates(const ScenarioParams& params, const McConfig& mc, Scheme scheme);

/// Cellular and IoT outage estimates for one scheme.
std::array<MetricEstimate, 2> mc_outage(const ScenarioParams& params, const McConfig& mc, Scheme scheme,
                                        CellularOutageRule rule = CellularOutageRule::first_order_bound);

enum class Strength { lambda_sum, z_max };

/// Per-trial strength samples divided by 1e-12, in trial order.
std::vector<double> mc_strength_samples(const ScenarioParams& params, const McConfig& mc, Strength which);

inline constexpr double strength_unit = 1e-12;

/// Exact cellular rate for one realization averaged over `samples` draws of
/// the IoT symbols c_k ~ CN(0, 1); `selected` < 0 means all devices backscatter.
double cellular_rate_inner(const ChannelRealization& realization, const ScenarioParams& params,
                           TrialStream& stream, int samples, int selected);

}  // namespace srma
