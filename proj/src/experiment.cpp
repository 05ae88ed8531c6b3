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

#include "srma/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "srma/distfit.hpp"
#include "srma/outage.hpp"
#include "srma/rates.hpp"

namespace srma {

namespace {

// ---- config parsing -------------------------------------------------------

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s)
{
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

double parse_double(const std::string& key, const std::string& text)
{
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    }
    return value;
}

template <class Int>
Int parse_integer(const std::string& key, const std::string& text)
{
    Int value = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    }
    return value;
}

bool parse_bool(const std::string& key, const std::string& text)
{
    if (text == "true" || text == "yes" || text == "1") {
        return true;
    }
    if (text == "false" || text == "no" || text == "0") {
        return false;
    }
    throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::vector<double> parse_triple(const std::string& key, std::string text)
{
    if (!text.empty() && (text.front() == '(' || text.front() == '[')) {
        const char close = text.front() == '(' ? ')' : ']';
        if (text.back() != close) {
            throw ConfigError(key + ": unbalanced brackets in '" + text + "'");
        }
        text = text.substr(1, text.size() - 2);
    }
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(key, trim(item)));
    }
    if (out.size() != 3) {
        throw ConfigError(key + ": expected three comma-separated values");
    }
    return out;
}

void range_check(bool ok, const std::string& key, const std::string& rule)
{
    if (!ok) {
        throw ConfigError(key + ": value out of range (" + rule + ")");
    }
}

using Setter = std::function<void(ExperimentSpec&, const std::string& key, const std::string& value)>;

double positive(const std::string& key, const std::string& v)
{
    const double x = parse_double(key, v);
    range_check(x > 0.0, key, "must be > 0");
    return x;
}

double exponent(const std::string& key, const std::string& v)
{
    const double x = parse_double(key, v);
    range_check(x >= 2.0, key, "must be >= 2");
    return x;
}

double nonnegative(const std::string& key, const std::string& v)
{
    const double x = parse_double(key, v);
    range_check(x >= 0.0, key, "must be >= 0");
    return x;
}

int positive_int(const std::string& key, const std::string& v)
{
    const int x = parse_integer<int>(key, v);
    range_check(x >= 1, key, "must be >= 1");
    return x;
}

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = {
        {"scenario.k_devices", [](ExperimentSpec& s, const auto& k, const auto& v) { s.k_devices = positive_int(k, v); }},
        {"scenario.n_spread", [](ExperimentSpec& s, const auto& k, const auto& v) { s.n_spread = positive_int(k, v); }},
        {"scenario.p_dbm", [](ExperimentSpec& s, const auto& k, const auto& v) { s.p_watts = dbm_to_watts(parse_double(k, v)); }},
        {"scenario.p_watts", [](ExperimentSpec& s, const auto& k, const auto& v) { s.p_watts = positive(k, v); }},
        {"scenario.sigma2_dbm",
         [](ExperimentSpec& s, const auto& k, const auto& v) { s.sigma2_watts = dbm_to_watts(parse_double(k, v)); }},
        {"scenario.sigma2_watts", [](ExperimentSpec& s, const auto& k, const auto& v) { s.sigma2_watts = positive(k, v); }},
        {"scenario.alpha",
         [](ExperimentSpec& s, const auto& k, const auto& v) {
             s.alpha = parse_double(k, v);
             range_check(s.alpha > 0.0 && s.alpha <= 1.0, k, "must lie in (0, 1]");
         }},
        {"scenario.fading",
         [](ExperimentSpec& s, const auto& k, const auto& v) {
             if (v == "double") {
                 s.fading = FadingMode::double_rayleigh;
             } else if (v == "single") {
                 s.fading = FadingMode::single_rayleigh;
             } else {
                 throw ConfigError(k + ": expected double or single, got '" + v + "'");
             }
         }},
        {"scenario.target_rate_s", [](ExperimentSpec& s, const auto& k, const auto& v) { s.targets.cellular = nonnegative(k, v); }},
        {"scenario.target_rate_c", [](ExperimentSpec& s, const auto& k, const auto& v) { s.targets.iot = nonnegative(k, v); }},
        {"geometry.d0_m", [](ExperimentSpec& s, const auto& k, const auto& v) { s.geometry.d0_m = positive(k, v); }},
        {"geometry.dg_m", [](ExperimentSpec& s, const auto& k, const auto& v) { s.geometry.dg_m = positive(k, v); }},
        {"geometry.dh_m", [](ExperimentSpec& s, const auto& k, const auto& v) { s.geometry.dh_m = positive(k, v); }},
        {"geometry.nu0", [](ExperimentSpec& s, const auto& k, const auto& v) { s.geometry.nu0 = exponent(k, v); }},
        {"geometry.nuh", [](ExperimentSpec& s, const auto& k, const auto& v) { s.geometry.nuh = exponent(k, v); }},
        {"geometry.nug", [](ExperimentSpec& s, const auto& k, const auto& v) { s.geometry.nug = exponent(k, v); }},
        {"geometry.wavelength_m",
         [](ExperimentSpec& s, const auto& k, const auto& v) { s.geometry.carrier_wavelength_m = positive(k, v); }},
        {"geometry.gains_db",
         [](ExperimentSpec& s, const auto& k, const auto& v) {
             const auto g = parse_triple(k, v);
             s.geometry.gain_bs = std::pow(10.0, g[0] / 10.0);
             s.geometry.gain_device = std::pow(10.0, g[1] / 10.0);
             s.geometry.gain_receiver = std::pow(10.0, g[2] / 10.0);
         }},
        {"geometry.eta_vars",
         [](ExperimentSpec& s, const auto& k, const auto& v) {
             const auto e = parse_triple(k, v);
             range_check(e[0] > 0.0 && e[1] > 0.0 && e[2] > 0.0, k, "variances must be > 0");
             s.geometry.eta0_var = e[0];
             s.geometry.etah_var = e[1];
             s.geometry.etag_var = e[2];
         }},
        {"quad.m1", [](ExperimentSpec& s, const auto& k, const auto& v) { s.quad.m1_bound = positive(k, v); }},
        {"quad.m2", [](ExperimentSpec& s, const auto& k, const auto& v) { s.quad.m2_bound = positive(k, v); }},
        {"quad.n_nodes", [](ExperimentSpec& s, const auto& k, const auto& v) { s.quad.n_nodes = positive_int(k, v); }},
        {"mc.trials",
         [](ExperimentSpec& s, const auto& k, const auto& v) {
             s.mc.trials = parse_integer<std::uint64_t>(k, v);
             range_check(s.mc.trials >= 1, k, "must be >= 1");
         }},
        {"mc.seed", [](ExperimentSpec& s, const auto& k, const auto& v) { s.mc.seed = parse_integer<std::uint64_t>(k, v); }},
        {"mc.inner_c_samples",
         [](ExperimentSpec& s, const auto& k, const auto& v) {
             s.mc.inner_c_samples = parse_integer<int>(k, v);
             range_check(s.mc.inner_c_samples >= 0, k, "must be >= 0");
         }},
        {"mc.workers", [](ExperimentSpec& s, const auto& k, const auto& v) { s.mc.workers = parse_integer<unsigned>(k, v); }},
        {"mc.cellular_outage_rule",
         [](ExperimentSpec& s, const auto& k, const auto& v) {
             if (v == "bound") {
                 s.outage_rule = CellularOutageRule::first_order_bound;
             } else if (v == "high_snr") {
                 s.outage_rule = CellularOutageRule::high_snr;
             } else {
                 throw ConfigError(k + ": expected bound or high_snr, got '" + v + "'");
             }
         }},
        {"sweep.from", [](ExperimentSpec& s, const auto& k, const auto& v) { s.sweep_from = parse_double(k, v); }},
        {"sweep.to", [](ExperimentSpec& s, const auto& k, const auto& v) { s.sweep_to = parse_double(k, v); }},
        {"sweep.points",
         [](ExperimentSpec& s, const auto& k, const auto& v) {
             s.sweep_points = parse_integer<int>(k, v);
             range_check(*s.sweep_points >= 2, k, "must be >= 2");
         }},
        {"sweep.log_scale", [](ExperimentSpec& s, const auto& k, const auto& v) { s.sweep_log_scale = parse_bool(k, v); }},
    };
    return table;
}

// ---- sweeps ---------------------------------------------------------------

bool sweeps_k(ExperimentKind kind)
{
    return kind != ExperimentKind::rate_vs_power && kind != ExperimentKind::outage_vs_power;
}

SweepSpec default_sweep(ExperimentKind kind)
{
    switch (kind) {
    case ExperimentKind::rate_vs_k:
        return {1.0, 512.0, 0, true};
    case ExperimentKind::rate_vs_power:
        return {0.0, 50.0, 11, false};
    case ExperimentKind::outage_vs_power:
        return {0.0, 45.0, 10, false};
    case ExperimentKind::outage_vs_k:
        return {1.0, 64.0, 0, true};
    case ExperimentKind::pdf_compare:
        return {5.0, 500.0, 3, true};
    case ExperimentKind::asymptotic_check:
        return {2.0, 1024.0, 0, true};
    case ExperimentKind::validate:
        break;
    }
    return {};
}

// ---- rows -----------------------------------------------------------------

struct PointContext {
    std::string sweep_param;
    double sweep_value;
    std::uint64_t seed;
};

void add_analytic(ResultTable& t, const PointContext& at, const char* scheme, const std::string& metric,
                  Source source, double value)
{
    t.rows.push_back({scheme, metric, at.sweep_param, at.sweep_value, to_string(source), value, 0.0, 0, at.seed});
}

void add_estimate(ResultTable& t, const PointContext& at, const char* scheme, const std::string& metric,
                  const MetricEstimate& e)
{
    t.rows.push_back(
        {scheme, metric, at.sweep_param, at.sweep_value, to_string(e.source), e.value, e.std_error, e.trials, at.seed});
}

std::string point_label(const PointContext& at)
{
    return at.sweep_param + "=" + format_number(at.sweep_value);
}

void warn_if(ResultTable& t, bool flagged, const PointContext& at, const std::string& what)
{
    if (flagged) {
        t.warnings.push_back(point_label(at) + ": " + what);
    }
}

void rate_point(ResultTable& t, const ExperimentSpec& spec, const ScenarioParams& params, const PointContext& at,
                bool asymptotic_only)
{
    const bool analytic = params.fading_mode == FadingMode::double_rayleigh;
    if (analytic) {
        if (!asymptotic_only) {
            add_analytic(t, at, "SA", "cellular_rate", Source::analytic, sa_cellular_ergodic(params));
            add_analytic(t, at, "SA", "iot_rate", Source::analytic, sa_iot_ergodic(params));
            const auto c = sda_cellular_ergodic(params, spec.quad);
            warn_if(t, !c.converged, at, "SDA cellular rate quadrature did not converge");
            add_analytic(t, at, "SDA", "cellular_rate", Source::analytic, c.value);
        }
        const auto i = sda_iot_ergodic_exact(params, spec.quad);
        warn_if(t, !i.converged, at, "SDA IoT rate quadrature did not converge");
        add_analytic(t, at, "SDA", "iot_rate", Source::analytic, i.value);
        try {
            add_analytic(t, at, "SDA", "iot_rate", Source::asymptotic, sda_iot_ergodic_asymptotic(params));
        } catch (const DomainError& e) {
            t.warnings.push_back(point_label(at) + ": asymptotic rate undefined: " + e.what());
        }
    }
    const auto mc = run_monte_carlo(params, spec.mc, spec.outage_rule);
    if (!asymptotic_only) {
        add_estimate(t, at, "SA", "cellular_rate", mc[Metric::sa_cellular_rate]);
        add_estimate(t, at, "SDA", "cellular_rate", mc[Metric::sda_cellular_rate]);
        add_estimate(t, at, "SA", "iot_rate", mc[Metric::sa_iot_rate]);
    }
    add_estimate(t, at, "SDA", "iot_rate", mc[Metric::sda_iot_rate]);
}

void outage_point(ResultTable& t, const ExperimentSpec& spec, const ScenarioParams& params, const PointContext& at)
{
    if (params.fading_mode == FadingMode::double_rayleigh) {
        const auto in = OutageInputs::from(params, spec.quad);
        const auto emit = [&](const char* scheme, const char* metric, Source source, const Probability& p) {
            warn_if(t, !p.converged, at, std::string(scheme) + " " + metric + " failed its accuracy check");
            add_analytic(t, at, scheme, metric, source, p.value);
        };
        emit("SA", "cellular_outage", Source::analytic, sa_cellular_outage(in));
        emit("SA", "iot_outage", Source::analytic, sa_iot_outage(in));
        emit("SA", "iot_outage", Source::asymptotic, sa_iot_outage_asymptotic(in));
        emit("SDA", "cellular_outage", Source::analytic, sda_cellular_outage(in));
        emit("SDA", "iot_outage", Source::analytic, sda_iot_outage(in));
    }
    const auto mc = run_monte_carlo(params, spec.mc, spec.outage_rule);
    add_estimate(t, at, "SA", "cellular_outage", mc[Metric::sa_cellular_outage]);
    add_estimate(t, at, "SDA", "cellular_outage", mc[Metric::sda_cellular_outage]);
    add_estimate(t, at, "SA", "iot_outage", mc[Metric::sa_iot_outage]);
    add_estimate(t, at, "SDA", "iot_outage", mc[Metric::sda_iot_outage]);
}

void histogram_rows(ResultTable& t, const std::vector<double>& samples, const char* scheme, const std::string& metric,
                    const std::string& axis, std::uint64_t seed, const stats::Histogram& hist)
{
    const double n = static_cast<double>(samples.size());
    for (std::size_t b = 0; b < hist.density.size(); ++b) {
        const double count = hist.density[b] * n * hist.bin_width;
        t.rows.push_back({scheme, metric, axis, hist.center(b), "monte_carlo", hist.density[b],
                          std::sqrt(count) / (n * hist.bin_width), static_cast<std::uint64_t>(n), seed});
    }
}

void pdf_point(ResultTable& t, const ExperimentSpec& spec, const ScenarioParams& params, const PointContext& at)
{
    const int k = params.k_devices;
    const std::string suffix = "_k" + std::to_string(k);
    const bool analytic = params.fading_mode == FadingMode::double_rayleigh;

    const auto lambda_samples = mc_strength_samples(params, spec.mc, Strength::lambda_sum);
    const auto lambda_hist = stats::freedman_diaconis(lambda_samples);
    histogram_rows(t, lambda_samples, "SA", "lambda_pdf" + suffix, "lambda_bar", at.seed, lambda_hist);

    const auto z_samples = mc_strength_samples(params, spec.mc, Strength::z_max);
    const auto z_hist = stats::freedman_diaconis(z_samples);
    histogram_rows(t, z_samples, "SDA", "zmax_pdf" + suffix, "zmax_bar", at.seed, z_hist);

    if (!analytic) {
        return;
    }
    for (const auto& family : fit_families(k, params.lambda_prod)) {
        const auto pdf = [&](double x) { return approx_pdf(family, x * strength_unit) * strength_unit; };
        for (std::size_t b = 0; b < lambda_hist.density.size(); ++b) {
            const double x = lambda_hist.center(b);
            t.rows.push_back({"SA", "lambda_pdf" + suffix, "lambda_bar", x, family_name(family), pdf(x), 0.0, 0, at.seed});
        }
        t.rows.push_back({"SA", "lambda_sup_distance", at.sweep_param, at.sweep_value, family_name(family),
                          stats::sup_distance(lambda_hist, pdf), 0.0, static_cast<std::uint64_t>(lambda_samples.size()),
                          at.seed});
    }
    const auto zpdf = [&](double x) { return maxz_pdf(x * strength_unit, params.lambda_prod, k) * strength_unit; };
    for (std::size_t b = 0; b < z_hist.density.size(); ++b) {
        const double x = z_hist.center(b);
        t.rows.push_back({"SDA", "zmax_pdf" + suffix, "zmax_bar", x, "analytic", zpdf(x), 0.0, 0, at.seed});
    }
    t.rows.push_back({"SDA", "zmax_sup_distance", at.sweep_param, at.sweep_value, "analytic",
                      stats::sup_distance(z_hist, zpdf), 0.0, static_cast<std::uint64_t>(z_samples.size()), at.seed});
}

// ---- validate kind ----------------------------------------------------------

void check_row(ResultTable& t, const ExperimentSpec& spec, const std::string& name, bool ok)
{
    t.rows.push_back({"all", "check_" + name, "k_devices", static_cast<double>(spec.k_devices), "analytic",
                      ok ? 1.0 : 0.0, 0.0, 0, spec.mc.seed});
    if (!ok) {
        ++t.failures;
    }
}

void run_validate(ResultTable& t, const ExperimentSpec& spec)
{
    namespace sf = specfun;
    const auto params = spec.scenario();

    bool ok = true;
    for (const double x : {0.5, 1.0, 2.0, 5.0}) {
        const double h = 1e-5 * x;
        const double d = (sf::bessel_k0(x + h) - sf::bessel_k0(x - h)) / (2.0 * h);
        ok = ok && std::abs(d + sf::bessel_k1(x)) <= 1e-6 * sf::bessel_k1(x);
    }
    check_row(t, spec, "k0_derivative", ok);

    ok = true;
    for (int i = 1; i <= 100; ++i) {
        const double x = 0.5 * i;
        const double e1 = sf::exp_integral_e1(x);
        ok = ok && std::exp(-x) / (x + 1.0) < e1 && e1 < std::exp(-x) / x;
    }
    check_row(t, spec, "e1_envelope", ok);

    if (params.fading_mode == FadingMode::double_rayleigh) {
        const double mass = sf::integrate_adaptive([](double s) { return s == 0.0 ? 0.0 : 4.0 * s * sf::bessel_k0(2.0 * s); }, 0.0, 40.0,
                                                   1e-12, 256);
        check_row(t, spec, "z_pdf_normalized", std::abs(mass - 1.0) <= 1e-6);
        const auto genk = fit_genk(params.k_devices, params.lambda_prod);
        check_row(t, spec, "genk_cdf_tail", genk_cdf(50.0 * genk.omega, genk) > 1.0 - 1e-6);
    }

    const std::uint64_t trials = std::min<std::uint64_t>(spec.mc.trials, 20000);
    bool telescoping = true;
    bool rate_dominance = true;
    bool outage_dominance = true;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        auto stream = stream_for_trial(spec.mc.seed, trial);
        const auto r = draw_realization(params, stream);
        double chain = 0.0;
        for (const double g : sa_iot_sinr_chain(r, params)) {
            chain += std::log2(1.0 + g) / params.n_spread;
        }
        const double sum_rate = sa_iot_sum_rate_realized(r, params);
        telescoping = telescoping && std::abs(chain - sum_rate) <= 1e-12 * std::max(1.0, sum_rate);
        const double h0 = std::norm(r.h0);
        const double a2 = params.alpha * params.alpha;
        const double sa_c = high_snr_cellular_rate(h0, a2 * r.lambda_sum, params);
        const double sda_c = high_snr_cellular_rate(h0, a2 * r.z_max, params);
        const double sda_i = sda_iot_rate_realized(r, params);
        rate_dominance = rate_dominance && sa_c >= sda_c && sum_rate >= sda_i;
        // an SA outage on either link implies an SDA outage on that link
        outage_dominance = outage_dominance && (sa_c >= params.target_rate_s || sda_c < params.target_rate_s) &&
                           (sum_rate >= params.target_rate_c || sda_i < params.target_rate_c);
    }
    check_row(t, spec, "sic_telescoping", telescoping);
    check_row(t, spec, "rate_dominance", rate_dominance);
    check_row(t, spec, "outage_dominance", outage_dominance);

    McConfig one = spec.mc;
    one.trials = trials;
    one.workers = 1;
    McConfig many = one;
    many.workers = 4;
    const auto a = run_monte_carlo(params, one);
    const auto b = run_monte_carlo(params, many);
    bool identical = true;
    for (std::size_t m = 0; m < metric_count; ++m) {
        identical = identical && a.metrics[m].value == b.metrics[m].value &&
                    a.metrics[m].std_error == b.metrics[m].std_error;
    }
    check_row(t, spec, "worker_determinism", identical);

    if (params.fading_mode == FadingMode::double_rayleigh) {
        const auto mc = run_monte_carlo(params, spec.mc);
        const double rel = params.k_devices >= 8 ? 0.02 : 0.06;
        const auto agree = [&](double analytic, const MetricEstimate& e) {
            return std::abs(analytic - e.value) <= std::max(rel * std::abs(e.value), 3.0 * e.std_error);
        };
        check_row(t, spec, "sa_cellular_rate_vs_mc", agree(sa_cellular_ergodic(params), mc[Metric::sa_cellular_rate]));
        check_row(t, spec, "sa_iot_rate_vs_mc", agree(sa_iot_ergodic(params), mc[Metric::sa_iot_rate]));
        check_row(t, spec, "sda_cellular_rate_vs_mc",
                  agree(sda_cellular_ergodic(params, spec.quad).value, mc[Metric::sda_cellular_rate]));
        check_row(t, spec, "sda_iot_rate_vs_mc",
                  agree(sda_iot_ergodic_exact(params, spec.quad).value, mc[Metric::sda_iot_rate]));
    }
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

constexpr const char* csv_header = "scheme,metric,sweep_param,sweep_value,source,value,stderr,trials,seed";

}  // namespace

const char* to_string(ExperimentKind kind)
{
    switch (kind) {
    case ExperimentKind::rate_vs_k:
        return "rate_vs_k";
    case ExperimentKind::rate_vs_power:
        return "rate_vs_power";
    case ExperimentKind::outage_vs_power:
        return "outage_vs_power";
    case ExperimentKind::outage_vs_k:
        return "outage_vs_k";
    case ExperimentKind::pdf_compare:
        return "pdf_compare";
    case ExperimentKind::asymptotic_check:
        return "asymptotic_check";
    case ExperimentKind::validate:
        return "validate";
    }
    return "unknown";
}

const std::vector<ExperimentKind>& all_kinds()
{
    static const std::vector<ExperimentKind> kinds = {
        ExperimentKind::rate_vs_k,   ExperimentKind::rate_vs_power, ExperimentKind::outage_vs_power,
        ExperimentKind::outage_vs_k, ExperimentKind::pdf_compare,   ExperimentKind::asymptotic_check,
        ExperimentKind::validate};
    return kinds;
}

std::optional<ExperimentKind> parse_kind(const std::string& name)
{
    for (const auto kind : all_kinds()) {
        if (name == to_string(kind)) {
            return kind;
        }
    }
    return std::nullopt;
}

std::vector<double> SweepSpec::grid(bool integer) const
{
    if (!(from < to)) {
        throw ConfigError("sweep: from must be less than to");
    }
    if (log_scale && !(from > 0.0)) {
        throw ConfigError("sweep.from: log-scale sweeps need a positive start");
    }
    int n = points;
    if (n == 0) {
        n = log_scale ? std::max(2, static_cast<int>(std::lround(std::log2(to / from))) + 1) : 10;
    }
    if (n < 2) {
        throw ConfigError("sweep.points: must be >= 2");
    }
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / (n - 1);
        double v = log_scale ? from * std::pow(to / from, f) : from + (to - from) * f;
        if (integer) {
            v = std::round(v);
        }
        if (out.empty() || v != out.back()) {
            out.push_back(v);
        }
    }
    return out;
}

ScenarioParams ExperimentSpec::scenario() const
{
    return build_scenario(geometry, k_devices, n_spread, p_watts, sigma2_watts, alpha, fading, targets);
}

SweepSpec ExperimentSpec::sweep() const
{
    SweepSpec s = default_sweep(kind);
    if (sweep_from || sweep_to || sweep_points || sweep_log_scale) {
        s.from = sweep_from.value_or(s.from);
        s.to = sweep_to.value_or(s.to);
        const bool spacing_changed = sweep_log_scale.value_or(s.log_scale) != s.log_scale;
        s.points = sweep_points.value_or(spacing_changed ? 0 : s.points);
        s.log_scale = sweep_log_scale.value_or(s.log_scale);
    }
    return s;
}

std::string ExperimentSpec::sweep_param() const
{
    return sweeps_k(kind) ? "k_devices" : "p_dbm";
}

ExperimentSpec parse_config(const std::string& text, ExperimentKind kind)
{
    ExperimentSpec spec;
    spec.kind = kind;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ConfigError(key + ": unknown key (line " + std::to_string(line_no) + ")");
        }
        if (!seen.insert(key).second) {
            throw ConfigError(key + ": given more than once");
        }
        if (value.empty()) {
            throw ConfigError(key + ": missing value");
        }
        it->second(spec, key, value);
    }
    if (seen.count("scenario.p_dbm") && seen.count("scenario.p_watts")) {
        throw ConfigError("scenario.p_dbm: conflicts with scenario.p_watts; give one");
    }
    if (seen.count("scenario.sigma2_dbm") && seen.count("scenario.sigma2_watts")) {
        throw ConfigError("scenario.sigma2_dbm: conflicts with scenario.sigma2_watts; give one");
    }
    if (kind != ExperimentKind::validate) {
        spec.sweep().grid(sweeps_k(kind));
    }
    return spec;
}

ExperimentSpec load_config(const std::string& path, ExperimentKind kind)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open config file");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), kind);
}

void ResultTable::sort()
{
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.metric, a.scheme, a.sweep_value, a.source) <
               std::tie(b.metric, b.scheme, b.sweep_value, b.source);
    });
}

ResultTable run_experiment(const ExperimentSpec& spec)
{
    ResultTable table;
    if (spec.kind == ExperimentKind::validate) {
        run_validate(table, spec);
        table.sort();
        return table;
    }
    const auto base = spec.scenario();
    const bool by_k = sweeps_k(spec.kind);
    for (const double value : spec.sweep().grid(by_k)) {
        const PointContext at{spec.sweep_param(), value, spec.mc.seed};
        try {
            const auto params = by_k ? base.with_k(static_cast<int>(value)) : base.with_power(dbm_to_watts(value));
            switch (spec.kind) {
            case ExperimentKind::rate_vs_k:
            case ExperimentKind::rate_vs_power:
                rate_point(table, spec, params, at, false);
                break;
            case ExperimentKind::asymptotic_check:
                rate_point(table, spec, params, at, true);
                break;
            case ExperimentKind::outage_vs_power:
            case ExperimentKind::outage_vs_k:
                outage_point(table, spec, params, at);
                break;
            case ExperimentKind::pdf_compare:
                pdf_point(table, spec, params, at);
                break;
            case ExperimentKind::validate:
                break;
            }
        } catch (const DomainError& e) {
            throw DomainError(point_label(at) + ": " + e.what());
        }
    }
    table.sort();
    return table;
}

std::string format_number(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

void write_csv(const ResultTable& table, std::ostream& out)
{
    out << csv_header << '\n';
    for (const auto& r : table.rows) {
        out << r.scheme << ',' << r.metric << ',' << r.sweep_param << ',' << format_number(r.sweep_value) << ','
            << r.source << ',' << format_number(r.value) << ',' << format_number(r.std_error) << ',' << r.trials
            << ',' << r.seed << '\n';
    }
}

void write_csv(const ResultTable& table, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    write_csv(table, out);
    if (!out) {
        throw std::runtime_error(path + ": write failed");
    }
}

ResultTable read_csv(std::istream& in)
{
    ResultTable table;
    std::string line;
    if (!std::getline(in, line) || line != csv_header) {
        throw ConfigError("csv: missing or unexpected header");
    }
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 9) {
            throw ConfigError("csv line " + std::to_string(line_no) + ": expected 9 fields");
        }
        const std::string where = "csv line " + std::to_string(line_no);
        table.rows.push_back({f[0], f[1], f[2], parse_double(where, f[3]), f[4], parse_double(where, f[5]),
                              parse_double(where, f[6]), parse_integer<std::uint64_t>(where, f[7]),
                              parse_integer<std::uint64_t>(where, f[8])});
    }
    return table;
}

void write_json(const ResultTable& table, std::ostream& out)
{
    auto rows = nlohmann::ordered_json::array();
    // numbers go through the same 9-digit rounding as the CSV
    const auto rounded = [](double v) { return std::stod(format_number(v)); };
    for (const auto& r : table.rows) {
        nlohmann::ordered_json o;
        o["scheme"] = r.scheme;
        o["metric"] = r.metric;
        o["sweep_param"] = r.sweep_param;
        o["sweep_value"] = rounded(r.sweep_value);
        o["source"] = r.source;
        o["value"] = rounded(r.value);
        o["stderr"] = rounded(r.std_error);
        o["trials"] = r.trials;
        o["seed"] = r.seed;
        rows.push_back(std::move(o));
    }
    out << rows.dump(2) << '\n';
}

}  // namespace srma
