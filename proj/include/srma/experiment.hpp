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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "srma/channel.hpp"
#include "srma/montecarlo.hpp"
#include "srma/specfun.hpp"

namespace srma {

/// Malformed configuration, unknown key, or out-of-range value. what() names the key.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class ExperimentKind {
    rate_vs_k,
    rate_vs_power,
    outage_vs_power,
    outage_vs_k,
    pdf_compare,
    asymptotic_check,
    validate
};

const char* to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(const std::string& name);
const std::vector<ExperimentKind>& all_kinds();

struct SweepSpec {
    double from = 0.0;
    double to = 0.0;
    int points = 0;  // 0: dyadic count for log sweeps, 10 for linear ones
    bool log_scale = false;

    /// Grid values; integer sweeps are rounded and deduplicated.
    std::vector<double> grid(bool integer) const;
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::rate_vs_k;
    Geometry geometry;
    int k_devices = 2;
    int n_spread = 64;
    double p_watts = 1.0;
    double sigma2_watts = 1e-14;
    double alpha = 1.0;
    FadingMode fading = FadingMode::double_rayleigh;
    TargetRates targets;
    specfun::QuadratureSpec quad;
    McConfig mc;
    CellularOutageRule outage_rule = CellularOutageRule::first_order_bound;
    /// Unset fields fall back to the per-kind default sweep.
    std::optional<double> sweep_from;
    std::optional<double> sweep_to;
    std::optional<int> sweep_points;
    std::optional<bool> sweep_log_scale;

    ScenarioParams scenario() const;
    /// Resolved sweep for this kind: over k_devices or p_dbm.
    SweepSpec sweep() const;
    /// "k_devices" or "p_dbm"
    std::string sweep_param() const;
};

/// Flat `key = value` lines; `#` starts a comment. Tuples are comma separated.
ExperimentSpec parse_config(const std::string& text, ExperimentKind kind = ExperimentKind::rate_vs_k);
ExperimentSpec load_config(const std::string& path, ExperimentKind kind);

struct ResultRow {
    std::string scheme;
    std::string metric;
    std::string sweep_param;
    double sweep_value = 0.0;
    std::string source;
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    bool operator==(const ResultRow&) const = default;
};

struct ResultTable {
    std::vector<ResultRow> rows;
    /// Quadrature or clamping warnings, one line each, naming the sweep point.
    std::vector<std::string> warnings;
    /// validate kind only: number of failed checks
    int failures = 0;

    /// (metric, scheme, sweep_value, source)
    void sort();
};

ResultTable run_experiment(const ExperimentSpec& spec);

void write_csv(const ResultTable& table, std::ostream& out);
void write_csv(const ResultTable& table, const std::string& path);
ResultTable read_csv(std::istream& in);
void write_json(const ResultTable& table, std::ostream& out);

/// printf %.9g
std::string format_number(double value);

}  // namespace srma
