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

#include <vector>

#include "srma/channel.hpp"
#include "srma/specfun.hpp"

namespace srma {

enum class Scheme { sa, sda };
enum class Source { analytic, monte_carlo, asymptotic };

const char* to_string(Scheme scheme);
const char* to_string(Source source);

struct RatePair {
    double cellular_rate = 0.0;
    double iot_sum_rate = 0.0;
    Scheme scheme = Scheme::sa;
    Source source = Source::analytic;
};

/// High-SNR cellular rate for one realization:
///   log2(p h0_sq / sigma^2) + E1(h0_sq / B) log2 e,
/// where B is the alpha-scaled backscatter power seen by the receiver.
double high_snr_cellular_rate(double h0_sq, double backscatter_power, const ScenarioParams& params);

/// First-order bound on the high-SNR rate (E1(x) ~ -ln x - gamma for small x), with
/// B the alpha-free strength (Lambda or Z):
///   h0_sq log2 e / (alpha^2 B) + log2(p alpha^2 B / sigma^2) - gamma log2 e.
/// Outage of the cellular link is defined against this expression.
double cellular_rate_bound(double h0_sq, double strength, const ScenarioParams& params);

/// SINR of each device along the SIC chain (device 1 decoded first, the rest
/// treated as interference), MRC gain N included.
std::vector<double> sa_iot_sinr_chain(const ChannelRealization& realization, const ScenarioParams& params);

/// (1/N) log2(1 + N p alpha^2 Lambda / sigma^2)
double sa_iot_sum_rate_realized(const ChannelRealization& realization, const ScenarioParams& params);

/// (1/N) log2(1 + N p alpha^2 Z / sigma^2) for the selected (strongest) device
double sda_iot_rate_realized(const ChannelRealization& realization, const ScenarioParams& params);

double sa_cellular_ergodic(const ScenarioParams& params);
double sa_iot_ergodic(const ScenarioParams& params);

/// Gauss-Chebyshev evaluation over the strength measured in multiples of lambda,
/// truncated at quad.m1_bound / quad.m2_bound.
specfun::QuadValue sda_cellular_ergodic(const ScenarioParams& params, const specfun::QuadratureSpec& quad);
specfun::QuadValue sda_iot_ergodic_exact(const ScenarioParams& params, const specfun::QuadratureSpec& quad);

struct GumbelNormalization {
    double a_k = 0.0;
    double b_k = 0.0;
    double a_bar = 0.0;
    double b_bar = 0.0;
};

/// Closed-form extreme-value constants for the largest Z_k:
///   a_K = (lambda/4) (ln(K sqrt(pi/2)) + ln ln(K sqrt(pi) lambda^{-1/4}) / 2)^2
///   b_K = (lambda/2) ln(K sqrt(pi) lambda^{-1/4})
/// and the rate-domain pair a_bar, b_bar. Throws DomainError when the inner
/// logarithm is nonpositive.
GumbelNormalization gumbel_normalizers(const ScenarioParams& params);

/// Same constants from exact quantiles of Z_k: a_K = F^{-1}(1 - 1/K),
/// b_K = F^{-1}(1 - 1/(K e)) - a_K.
GumbelNormalization gumbel_normalizers_exact(const ScenarioParams& params);

/// gamma b_bar + a_bar with the closed-form normalizers.
double sda_iot_ergodic_asymptotic(const ScenarioParams& params);

/// ln(1 + eps x) (1 - 2 zeta sqrt(x) K1(2 zeta sqrt(x)))^{K-1} K0(2 zeta sqrt(x))
double truncation_integrand(double x, double eps, double zeta, int k);

/// Smallest u with P(Z_k > u lambda) <= tail, u in multiples of lambda.
double z_tail_quantile(double tail);

}  // namespace srma
