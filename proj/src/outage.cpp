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

#include "srma/outage.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srma/distfit.hpp"

namespace srma {

namespace sf = specfun;

namespace {

// Largest node count tried when the requested rule fails its n/2n check.
constexpr int max_nodes = 1 << 14;

void require_double_fading(const ScenarioParams& params, const char* who)
{
    if (params.fading_mode != FadingMode::double_rayleigh) {
        throw DomainError(std::string(who) + ": closed forms assume double fading");
    }
}

Probability clamp_probability(double raw, bool converged)
{
    const double clamped = std::clamp(raw, 0.0, 1.0);
    return {clamped, converged && std::abs(clamped - raw) <= 1e-4};
}

// Gauss-Chebyshev with node doubling until the n/2n check passes or max_nodes is reached.
template <class F>
sf::QuadValue integrate_gc_refined(F&& f, double upper, int n)
{
    auto q = sf::integrate_gc_checked(f, upper, n);
    while (!q.converged && 2 * n <= max_nodes) {
        n *= 2;
        q = sf::integrate_gc_checked(f, upper, n);
    }
    return q;
}

// P{ a1 H / B + log2 B < a2 } with H ~ Exp(lambda0) and B of density `pdf` and CDF `cdf`:
// cdf(2^a2) - int_0^{2^a2} exp(-y (a2 - log2 y) / (a1 lambda0)) pdf(y) dy.
// The integral runs in y / scale to keep the node arguments O(1).
template <class Pdf, class Cdf>
Probability bound_outage(const OutageInputs& in, double scale, Pdf&& pdf, Cdf&& cdf)
{
    const double threshold = std::exp2(in.a2);
    const double upper = threshold / scale;
    const double rate = 1.0 / (in.a1 * in.params.lambda0);
    const auto integrand = [&](double v) {
        const double y = v * scale;
        return std::exp(-y * (in.a2 - std::log2(y)) * rate) * pdf(y) * scale;
    };
    const auto q = integrate_gc_refined(integrand, upper, in.quad.n_nodes);
    return clamp_probability(cdf(threshold) - q.value, q.converged);
}

}  // namespace

OutageInputs OutageInputs::from(const ScenarioParams& params, const sf::QuadratureSpec& quad)
{
    params.validate();
    quad.validate();
    OutageInputs in;
    in.params = params;
    in.quad = quad;
    const double a2sq = params.alpha * params.alpha;
    in.a1 = sf::log2_e / a2sq;
    in.a2 = params.target_rate_s - std::log2(params.p_watts * a2sq / params.sigma2_watts) +
            sf::euler_gamma * sf::log2_e;
    in.delta = params.sigma2_watts * std::expm1(params.n_spread * params.target_rate_c * std::log(2.0)) /
               (params.n_spread * params.p_watts * a2sq);
    return in;
}

Probability sa_cellular_outage(const OutageInputs& in)
{
    require_double_fading(in.params, "sa_cellular_outage");
    const auto genk = fit_genk(in.params.k_devices, in.params.lambda_prod);
    return bound_outage(
        in, genk.omega, [&](double y) { return genk_pdf(y, genk); },
        [&](double y) { return genk_cdf(y, genk); });
}

Probability sa_iot_outage(const OutageInputs& in)
{
    require_double_fading(in.params, "sa_iot_outage");
    const auto genk = fit_genk(in.params.k_devices, in.params.lambda_prod);
    return clamp_probability(genk_cdf(in.delta, genk), true);
}

Probability sa_iot_outage_asymptotic(const OutageInputs& in)
{
    require_double_fading(in.params, "sa_iot_outage_asymptotic");
    if (in.delta == 0.0) {
        return {0.0, true};
    }
    const auto genk = fit_genk(in.params.k_devices, in.params.lambda_prod);
    const double m = genk.m1;
    // 4 m^{2m} (delta / omega)^m / (Gamma(m)^2 2m)
    const double log_p = std::log(4.0) + 2.0 * m * std::log(m) + m * std::log(in.delta / genk.omega) -
                         2.0 * sf::ln_gamma(m) - std::log(2.0 * m);
    return {std::exp(log_p), true};
}

Probability sda_cellular_outage(const OutageInputs& in)
{
    require_double_fading(in.params, "sda_cellular_outage");
    const double lam = in.params.lambda_prod;
    const int k = in.params.k_devices;
    return bound_outage(
        in, lam, [&](double y) { return maxz_pdf(y, lam, k); }, [&](double y) { return maxz_cdf(y, lam, k); });
}

Probability sda_iot_outage(const OutageInputs& in)
{
    require_double_fading(in.params, "sda_iot_outage");
    return clamp_probability(maxz_cdf(in.delta, in.params.lambda_prod, in.params.k_devices), true);
}

}  // namespace srma
