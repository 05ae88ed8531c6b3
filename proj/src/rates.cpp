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

#include "srma/rates.hpp"

#include <cmath>
#include <string>

namespace srma {

namespace sf = specfun;

namespace {

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw DomainError(message);
    }
}

void require_double_fading(const ScenarioParams& params, const char* who)
{
    params.validate();
    require(params.fading_mode == FadingMode::double_rayleigh,
            std::string(who) + ": closed forms assume double fading");
}

double iot_snr_gain(const ScenarioParams& params)
{
    return params.n_spread * params.p_watts * params.alpha * params.alpha / params.sigma2_watts;
}

// max-of-K density of u = z / lambda, without the leading 2K factor:
// F(u)^{K-1} K0(2 sqrt u), F(u) = 1 - 2 sqrt(u) K1(2 sqrt(u))
double max_kernel(double u, int k)
{
    const double x = 2.0 * std::sqrt(u);
    const double k0 = sf::bessel_k0(x);
    if (k == 1 || k0 == 0.0) {
        return k0;
    }
    return std::pow(sf::one_minus_x_k1(x), k - 1) * k0;
}

}  // namespace

const char* to_string(Scheme scheme)
{
    return scheme == Scheme::sa ? "SA" : "SDA";
}

const char* to_string(Source source)
{
    switch (source) {
    case Source::analytic:
        return "analytic";
    case Source::monte_carlo:
        return "monte_carlo";
    default:
        return "asymptotic";
    }
}

double high_snr_cellular_rate(double h0_sq, double backscatter_power, const ScenarioParams& params)
{
    require(h0_sq > 0.0, "high_snr_cellular_rate: |h0|^2 must be positive");
    require(backscatter_power >= 0.0, "high_snr_cellular_rate: backscatter power must be nonnegative");
    const double direct = std::log2(params.p_watts * h0_sq / params.sigma2_watts);
    if (backscatter_power == 0.0) {
        return direct;
    }
    const double x = h0_sq / backscatter_power;
    // E1 underflows to 0 long before x reaches 750
    const double e1 = x > 750.0 ? 0.0 : sf::exp_integral_e1(x);
    return direct + e1 * sf::log2_e;
}

double cellular_rate_bound(double h0_sq, double strength, const ScenarioParams& params)
{
    require(h0_sq >= 0.0, "cellular_rate_bound: |h0|^2 must be nonnegative");
    require(strength > 0.0, "cellular_rate_bound: strength must be positive");
    const double a2 = params.alpha * params.alpha;
    return h0_sq / (a2 * strength) * sf::log2_e +
           std::log2(params.p_watts * a2 * strength / params.sigma2_watts) - sf::euler_gamma * sf::log2_e;
}

std::vector<double> sa_iot_sinr_chain(const ChannelRealization& realization, const ScenarioParams& params)
{
    const double gain = iot_snr_gain(params);
    const std::size_t k = realization.z.size();
    std::vector<double> sinr(k);
    // devices after j are still undecoded and act as interference
    double later = 0.0;
    for (std::size_t j = k; j-- > 0;) {
        sinr[j] = gain * realization.z[j] / (1.0 + gain * later);
        later += realization.z[j];
    }
    return sinr;
}

double sa_iot_sum_rate_realized(const ChannelRealization& realization, const ScenarioParams& params)
{
    return std::log2(1.0 + iot_snr_gain(params) * realization.lambda_sum) / params.n_spread;
}

double sda_iot_rate_realized(const ChannelRealization& realization, const ScenarioParams& params)
{
    return std::log2(1.0 + iot_snr_gain(params) * realization.z_max) / params.n_spread;
}

double sa_cellular_ergodic(const ScenarioParams& params)
{
    require_double_fading(params, "sa_cellular_ergodic");
    const double k = params.k_devices;
    const double lam = params.lambda_prod;
    const double a2 = params.alpha * params.alpha;
    const double l0 = params.lambda0;
    const double denom = l0 + k * a2 * lam;
    const double bracket = std::log1p(k * a2 * lam / l0) - 3.0 * k * lam * lam * a2 * a2 / (2.0 * denom * denom) -
                           sf::euler_gamma;
    return std::log2(params.p_watts * l0 / params.sigma2_watts) + bracket * sf::log2_e;
}

double sa_iot_ergodic(const ScenarioParams& params)
{
    require_double_fading(params, "sa_iot_ergodic");
    const double k = params.k_devices;
    const double lam = params.lambda_prod;
    const double c = iot_snr_gain(params);
    const double mean_snr = k * lam * c;
    const double bracket = std::log1p(mean_snr) - 3.0 * k * lam * lam * c * c / (2.0 * (1.0 + mean_snr) * (1.0 + mean_snr));
    return bracket * sf::log2_e / params.n_spread;
}

sf::QuadValue sda_cellular_ergodic(const ScenarioParams& params, const sf::QuadratureSpec& quad)
{
    require_double_fading(params, "sda_cellular_ergodic");
    quad.validate();
    const int k = params.k_devices;
    const double ratio = params.alpha * params.alpha * params.lambda_prod / params.lambda0;
    const auto integrand = [&](double u) { return std::log1p(ratio * u) * max_kernel(u, k); };
    auto q = sf::integrate_gc_checked(integrand, quad.m1_bound, quad.n_nodes);
    const double base = std::log2(params.p_watts * params.lambda0 / params.sigma2_watts) - sf::euler_gamma * sf::log2_e;
    q.value = base + sf::log2_e * 2.0 * k * q.value;
    return q;
}

sf::QuadValue sda_iot_ergodic_exact(const ScenarioParams& params, const sf::QuadratureSpec& quad)
{
    require_double_fading(params, "sda_iot_ergodic_exact");
    quad.validate();
    const int k = params.k_devices;
    const double c = iot_snr_gain(params) * params.lambda_prod;
    const auto integrand = [&](double u) { return std::log2(1.0 + c * u) * max_kernel(u, k); };
    auto q = sf::integrate_gc_checked(integrand, quad.m2_bound, quad.n_nodes);
    q.value *= 2.0 * k / params.n_spread;
    return q;
}

namespace {

GumbelNormalization rate_domain(double a_k, double b_k, const ScenarioParams& params)
{
    const double c = iot_snr_gain(params);
    const double n = params.n_spread;
    GumbelNormalization g;
    g.a_k = a_k;
    g.b_k = b_k;
    g.a_bar = std::log2(1.0 + c * a_k) / n;
    g.b_bar = std::log2((1.0 + c * (a_k + b_k)) / (1.0 + c * a_k)) / n;
    return g;
}

}  // namespace

GumbelNormalization gumbel_normalizers(const ScenarioParams& params)
{
    require_double_fading(params, "gumbel_normalizers");
    const double k = params.k_devices;
    const double lam = params.lambda_prod;
    const double inner = std::log(k * std::sqrt(sf::pi) * std::pow(lam, -0.25));
    require(inner > 0.0, "gumbel_normalizers: K = " + std::to_string(params.k_devices) +
                             " is outside the asymptotic regime (inner logarithm is nonpositive)");
    const double root = std::log(k * std::sqrt(0.5 * sf::pi)) + 0.5 * std::log(inner);
    return rate_domain(0.25 * lam * root * root, 0.5 * lam * inner, params);
}

double z_tail_quantile(double tail)
{
    require(tail > 0.0 && tail < 1.0, "z_tail_quantile: tail probability must lie in (0, 1)");
    // x K1(x) is decreasing from 1 to 0; solve x K1(x) = tail in x = 2 sqrt(u)
    double lo = 1e-300;
    double hi = 1.0;
    while (hi * sf::bessel_k1(hi) > tail) {
        hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid * sf::bessel_k1(mid) > tail) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double x = 0.5 * (lo + hi);
    return 0.25 * x * x;
}

GumbelNormalization gumbel_normalizers_exact(const ScenarioParams& params)
{
    require_double_fading(params, "gumbel_normalizers_exact");
    require(params.k_devices >= 2, "gumbel_normalizers_exact: K must be >= 2");
    const double k = params.k_devices;
    const double lam = params.lambda_prod;
    const double a = z_tail_quantile(1.0 / k);
    const double a_e = z_tail_quantile(1.0 / (k * std::exp(1.0)));
    return rate_domain(lam * a, lam * (a_e - a), params);
}

double sda_iot_ergodic_asymptotic(const ScenarioParams& params)
{
    const auto g = gumbel_normalizers(params);
    return sf::euler_gamma * g.b_bar + g.a_bar;
}

double truncation_integrand(double x, double eps, double zeta, int k)
{
    require(x > 0.0 && eps > 0.0 && zeta > 0.0 && k >= 1, "truncation_integrand: arguments must be positive");
    const double y = 2.0 * zeta * std::sqrt(x);
    const double k0 = sf::bessel_k0(y);
    if (k0 == 0.0) {
        return 0.0;
    }
    return std::log1p(eps * x) * std::pow(sf::one_minus_x_k1(y), k - 1) * k0;
}

}  // namespace srma
