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

#include "srma/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <thread>

namespace srma {

namespace {

// Trials per work item. Each chunk is reduced in trial order and chunks are
// combined by a fixed pairwise tree, so the result never depends on threading.
constexpr std::uint64_t chunk_size = 1024;

unsigned resolve_workers(unsigned requested, std::size_t chunks)
{
    unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(chunks, 1)));
}

// Runs body(chunk_index) for every chunk on `workers` threads.
template <class Body>
void for_each_chunk(std::size_t chunks, unsigned workers, Body&& body)
{
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            body(c);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
                body(c);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

using MetricRow = std::array<double, metric_count>;
using MomentRow = std::array<Moments, metric_count>;

MomentRow tree_reduce(std::vector<MomentRow>& parts)
{
    if (parts.empty()) {
        return {};
    }
    for (std::size_t stride = 1; stride < parts.size(); stride *= 2) {
        for (std::size_t i = 0; i + stride < parts.size(); i += 2 * stride) {
            for (std::size_t m = 0; m < metric_count; ++m) {
                parts[i][m].merge(parts[i + stride][m]);
            }
        }
    }
    return parts.front();
}

MetricRow trial_metrics(const ScenarioParams& params, const McConfig& mc, CellularOutageRule rule,
                        std::uint64_t trial)
{
    auto stream = stream_for_trial(mc.seed, trial);
    const auto r = draw_realization(params, stream);
    const double h0_sq = std::norm(r.h0);
    const double a2 = params.alpha * params.alpha;

    double sa_cell = 0.0;
    double sda_cell = 0.0;
    if (mc.inner_c_samples > 0) {
        sa_cell = cellular_rate_inner(r, params, stream, mc.inner_c_samples, -1);
        sda_cell = cellular_rate_inner(r, params, stream, mc.inner_c_samples, static_cast<int>(r.argmax_index));
    } else {
        sa_cell = high_snr_cellular_rate(h0_sq, a2 * r.lambda_sum, params);
        sda_cell = high_snr_cellular_rate(h0_sq, a2 * r.z_max, params);
    }

    double sa_cell_test = 0.0;
    double sda_cell_test = 0.0;
    if (rule == CellularOutageRule::first_order_bound) {
        sa_cell_test = cellular_rate_bound(h0_sq, r.lambda_sum, params);
        sda_cell_test = cellular_rate_bound(h0_sq, r.z_max, params);
    } else {
        sa_cell_test = high_snr_cellular_rate(h0_sq, a2 * r.lambda_sum, params);
        sda_cell_test = high_snr_cellular_rate(h0_sq, a2 * r.z_max, params);
    }

    const double sa_iot = sa_iot_sum_rate_realized(r, params);
    const double sda_iot = sda_iot_rate_realized(r, params);

    MetricRow row{};
    row[static_cast<std::size_t>(Metric::sa_cellular_rate)] = sa_cell;
    row[static_cast<std::size_t>(Metric::sda_cellular_rate)] = sda_cell;
    row[static_cast<std::size_t>(Metric::sa_iot_rate)] = sa_iot;
    row[static_cast<std::size_t>(Metric::sda_iot_rate)] = sda_iot;
    row[static_cast<std::size_t>(Metric::sa_cellular_outage)] = sa_cell_test < params.target_rate_s ? 1.0 : 0.0;
    row[static_cast<std::size_t>(Metric::sda_cellular_outage)] = sda_cell_test < params.target_rate_s ? 1.0 : 0.0;
    row[static_cast<std::size_t>(Metric::sa_iot_outage)] = sa_iot < params.target_rate_c ? 1.0 : 0.0;
    row[static_cast<std::size_t>(Metric::sda_iot_outage)] = sda_iot < params.target_rate_c ? 1.0 : 0.0;
    return row;
}

}  // namespace

void McConfig::validate() const
{
    if (trials < 1) {
        throw DomainError("McConfig: trials must be >= 1");
    }
    if (inner_c_samples < 0) {
        throw DomainError("McConfig: inner_c_samples must be >= 0");
    }
}

void Moments::add(double x)
{
    n += 1.0;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
}

void Moments::merge(const Moments& other)
{
    if (other.n == 0.0) {
        return;
    }
    if (n == 0.0) {
        *this = other;
        return;
    }
    const double total = n + other.n;
    const double d = other.mean - mean;
    mean += d * other.n / total;
    m2 += other.m2 + d * d * n * other.n / total;
    n = total;
}

MetricEstimate Moments::estimate() const
{
    MetricEstimate e;
    e.value = mean;
    e.trials = static_cast<std::uint64_t>(n);
    e.std_error = n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0;
    return e;
}

double cellular_rate_inner(const ChannelRealization& r, const ScenarioParams& params, TrialStream& stream,
                           int samples, int selected)
{
    const double snr = params.p_watts / params.sigma2_watts;
    double sum = 0.0;
    for (int s = 0; s < samples; ++s) {
        std::complex<double> y = r.h0;
        if (selected >= 0) {
            const auto l = static_cast<std::size_t>(selected);
            y += params.alpha * r.g[l] * r.h[l] * stream.complex_normal(1.0);
        } else {
            for (std::size_t k = 0; k < r.z.size(); ++k) {
                y += params.alpha * r.g[k] * r.h[k] * stream.complex_normal(1.0);
            }
        }
        sum += std::log2(1.0 + snr * std::norm(y));
    }
    return sum / samples;
}

McSummary run_monte_carlo(const ScenarioParams& params, const McConfig& mc, CellularOutageRule rule)
{
    params.validate();
    mc.validate();
    const std::size_t chunks = static_cast<std::size_t>((mc.trials + chunk_size - 1) / chunk_size);
    std::vector<MomentRow> parts(chunks);
    for_each_chunk(chunks, resolve_workers(mc.workers, chunks), [&](std::size_t c) {
        const std::uint64_t begin = c * chunk_size;
        const std::uint64_t end = std::min(mc.trials, begin + chunk_size);
        MomentRow acc{};
        for (std::uint64_t t = begin; t < end; ++t) {
            const auto row = trial_metrics(params, mc, rule, t);
            for (std::size_t m = 0; m < metric_count; ++m) {
                acc[m].add(row[m]);
            }
        }
        parts[c] = acc;
    });
    const auto total = tree_reduce(parts);
    McSummary summary;
    for (std::size_t m = 0; m < metric_count; ++m) {
        summary.metrics[m] = total[m].estimate();
    }
    return summary;
}

std::array<MetricEstimate, 2> mc_ergodic_rates(const ScenarioParams& params, const McConfig& mc, Scheme scheme)
{
    const auto s = run_monte_carlo(params, mc);
    if (scheme == Scheme::sa) {
        return {s[Metric::sa_cellular_rate], s[Metric::sa_iot_rate]};
    }
    return {s[Metric::sda_cellular_rate], s[Metric::sda_iot_rate]};
}

std::array<MetricEstimate, 2> mc_outage(const ScenarioParams& params, const McConfig& mc, Scheme scheme,
                                        CellularOutageRule rule)
{
    const auto s = run_monte_carlo(params, mc, rule);
    if (scheme == Scheme::sa) {
        return {s[Metric::sa_cellular_outage], s[Metric::sa_iot_outage]};
    }
    return {s[Metric::sda_cellular_outage], s[Metric::sda_iot_outage]};
}

std::vector<double> mc_strength_samples(const ScenarioParams& params, const McConfig& mc, Strength which)
{
    params.validate();
    mc.validate();
    std::vector<double> out(static_cast<std::size_t>(mc.trials));
    const std::size_t chunks = static_cast<std::size_t>((mc.trials + chunk_size - 1) / chunk_size);
    for_each_chunk(chunks, resolve_workers(mc.workers, chunks), [&](std::size_t c) {
        const std::uint64_t begin = c * chunk_size;
        const std::uint64_t end = std::min(mc.trials, begin + chunk_size);
        for (std::uint64_t t = begin; t < end; ++t) {
            auto stream = stream_for_trial(mc.seed, t);
            const auto r = draw_realization(params, stream);
            out[static_cast<std::size_t>(t)] =
                (which == Strength::lambda_sum ? r.lambda_sum : r.z_max) / strength_unit;
        }
    });
    return out;
}

}  // namespace srma
