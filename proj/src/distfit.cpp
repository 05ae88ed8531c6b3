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

#include "srma/distfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "srma/specfun.hpp"

namespace srma {

namespace sf = specfun;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw DomainError(message);
    }
}

void check_z_args(double z, double lambda_prod, const char* who)
{
    require(z >= 0.0, std::string(who) + ": z must be nonnegative");
    require(lambda_prod > 0.0 && std::isfinite(lambda_prod), std::string(who) + ": lambda must be positive");
}

// Generalized-K density of s = x / omega written in t = sqrt(s):
//   4 m^{2m} t^{2m-1} K0(2 m t) / Gamma(m)^2, finite at t = 0 for m > 1/2.
double genk_density_in_t(double t, double m, double log_norm)
{
    if (t <= 0.0) {
        return 0.0;
    }
    const double y = 2.0 * m * t;
    const double log_k0 = std::log(sf::bessel_k0_scaled(y)) - y;
    return std::exp(log_norm + (2.0 * m - 1.0) * std::log(t) + log_k0);
}

}  // namespace

double z_pdf(double z, double lambda_prod)
{
    check_z_args(z, lambda_prod, "z_pdf");
    if (z == 0.0) {
        return inf;
    }
    return 2.0 / lambda_prod * sf::bessel_k0(2.0 * std::sqrt(z / lambda_prod));
}

double z_cdf(double z, double lambda_prod)
{
    check_z_args(z, lambda_prod, "z_cdf");
    return sf::one_minus_x_k1(2.0 * std::sqrt(z / lambda_prod));
}

double z_ccdf(double z, double lambda_prod)
{
    check_z_args(z, lambda_prod, "z_ccdf");
    if (z == 0.0) {
        return 1.0;
    }
    const double x = 2.0 * std::sqrt(z / lambda_prod);
    return x * sf::bessel_k1(x);
}

double maxz_cdf(double z, double lambda_prod, int k)
{
    require(k >= 1, "maxz_cdf: K must be >= 1");
    return std::pow(z_cdf(z, lambda_prod), k);
}

double maxz_pdf(double z, double lambda_prod, int k)
{
    require(k >= 1, "maxz_pdf: K must be >= 1");
    if (k == 1) {
        return z_pdf(z, lambda_prod);
    }
    if (z == 0.0) {
        check_z_args(z, lambda_prod, "maxz_pdf");
        return 0.0;
    }
    return k * std::pow(z_cdf(z, lambda_prod), k - 1) * z_pdf(z, lambda_prod);
}

void GenKParams::validate() const
{
    require(m1 > 0.5 && std::isfinite(m1), "GenKParams: shape must exceed 1/2");
    require(m1 == m2, "GenKParams: only the symmetric case m1 == m2 is supported");
    require(omega > 0.0 && std::isfinite(omega), "GenKParams: omega must be positive");
}

GenKParams fit_genk(int k, double lambda_prod, GenKShape shape)
{
    require(k >= 1, "fit_genk: K must be >= 1");
    const double kk = k;
    double m = 0.0;
    switch (shape.rule) {
    case GenKShape::Rule::moment_matched:
        m = (kk + std::sqrt(kk * kk + 3.0 * kk)) / 3.0;
        break;
    case GenKShape::Rule::k:
        m = kk;
        break;
    case GenKShape::Rule::k_plus_epsilon:
        m = kk + shape.epsilon;
        break;
    }
    GenKParams params{m, m, kk * lambda_prod};
    params.validate();
    return params;
}

double genk_pdf(double x, const GenKParams& params)
{
    params.validate();
    if (x < 0.0) {
        return 0.0;
    }
    const double m = params.m1;
    if (x == 0.0) {
        return m > 1.0 ? 0.0 : inf;
    }
    const double y = 2.0 * std::sqrt(m * m * x / params.omega);
    const double log_f = std::log(2.0) + m * std::log(m * m / params.omega) + (m - 1.0) * std::log(x) +
                         std::log(sf::bessel_k0_scaled(y)) - y - 2.0 * sf::ln_gamma(m);
    return std::exp(log_f);
}

double genk_cdf(double x, const GenKParams& params)
{
    params.validate();
    if (x <= 0.0) {
        return 0.0;
    }
    const double m = params.m1;
    const double log_norm = std::log(4.0) + 2.0 * m * std::log(m) - 2.0 * sf::ln_gamma(m);
    // beyond t_hi the remaining mass is far below double resolution
    const double t_hi = 1.0 + 20.0 / m + 40.0 / std::sqrt(m);
    const double t = std::sqrt(x / params.omega);
    if (t >= t_hi) {
        return 1.0;
    }
    const auto density = [&](double s) { return genk_density_in_t(s, m, log_norm); };
    // past the bulk (E t^2 = 1) integrate the upper tail so values near 1 stay monotone
    const double value = t < 1.0 ? sf::integrate_adaptive(density, 0.0, t, 1e-10, 24)
                                 : 1.0 - sf::integrate_adaptive(density, t, t_hi, 1e-10, 24);
    return std::clamp(value, 0.0, 1.0);
}

std::string family_name(const ApproxFamily& family)
{
    switch (family.index()) {
    case 0:
        return "gaussian";
    case 1:
        return "gamma";
    default:
        return "generalized_k";
    }
}

double approx_pdf(const ApproxFamily& family, double x)
{
    if (const auto* g = std::get_if<GaussianFamily>(&family)) {
        const double d = x - g->mean;
        return std::exp(-0.5 * d * d / g->variance) / std::sqrt(2.0 * sf::pi * g->variance);
    }
    if (const auto* g = std::get_if<GammaFamily>(&family)) {
        if (x < 0.0) {
            return 0.0;
        }
        if (x == 0.0) {
            return g->shape > 1.0 ? 0.0 : (g->shape == 1.0 ? 1.0 / g->scale : inf);
        }
        return std::exp((g->shape - 1.0) * std::log(x) - x / g->scale - sf::ln_gamma(g->shape) -
                        g->shape * std::log(g->scale));
    }
    return genk_pdf(x, std::get<GenKFamily>(family).params);
}

double approx_mean(const ApproxFamily& family)
{
    if (const auto* g = std::get_if<GaussianFamily>(&family)) {
        return g->mean;
    }
    if (const auto* g = std::get_if<GammaFamily>(&family)) {
        return g->shape * g->scale;
    }
    return std::get<GenKFamily>(family).params.omega;
}

std::vector<ApproxFamily> fit_families(int k, double lambda_prod, GenKShape shape)
{
    require(k >= 1, "fit_families: K must be >= 1");
    require(lambda_prod > 0.0, "fit_families: lambda must be positive");
    const double kk = k;
    return {GaussianFamily{kk * lambda_prod, 3.0 * kk * lambda_prod * lambda_prod},
            GammaFamily{kk / 3.0, 3.0 * lambda_prod}, GenKFamily{fit_genk(k, lambda_prod, shape)}};
}

namespace stats {

double mean(const std::vector<double>& v)
{
    require(!v.empty(), "mean: empty sample");
    double s = 0.0;
    for (const double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

double quantile(std::vector<double> v, double q)
{
    require(!v.empty(), "quantile: empty sample");
    require(q >= 0.0 && q <= 1.0, "quantile: q must lie in [0, 1]");
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] + frac * (v[hi] - v[lo]);
}

Histogram freedman_diaconis(std::vector<double> samples, std::size_t max_bins)
{
    require(samples.size() >= 2, "freedman_diaconis: need at least two samples");
    require(max_bins >= 1, "freedman_diaconis: max_bins must be >= 1");
    std::sort(samples.begin(), samples.end());
    const double lo = samples.front();
    const double hi = samples.back();
    const double n = static_cast<double>(samples.size());
    const double iqr = quantile(samples, 0.75) - quantile(samples, 0.25);
    double width = 2.0 * iqr / std::cbrt(n);
    std::size_t bins = 1;
    if (width > 0.0 && hi > lo) {
        bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
        bins = std::clamp<std::size_t>(bins, 1, max_bins);
    }
    width = hi > lo ? (hi - lo) / static_cast<double>(bins) : 1.0;

    Histogram hist;
    hist.lo = lo;
    hist.bin_width = width;
    hist.density.assign(bins, 0.0);
    for (const double x : samples) {
        auto idx = static_cast<std::size_t>((x - lo) / width);
        hist.density[std::min(idx, bins - 1)] += 1.0;
    }
    for (double& d : hist.density) {
        d /= n * width;
    }
    return hist;
}

double kolmogorov_pvalue(double d, std::size_t n)
{
    require(n >= 1, "kolmogorov_pvalue: n must be >= 1");
    const double rn = std::sqrt(static_cast<double>(n));
    const double lam = (rn + 0.12 + 0.11 / rn) * d;
    if (lam <= 0.0) {
        return 1.0;
    }
    double sum = 0.0;
    if (lam < 1.18) {
        // P(K <= lam) = sqrt(2 pi) / lam sum_j exp(-(2j - 1)^2 pi^2 / (8 lam^2))
        const double c = sf::pi * sf::pi / (8.0 * lam * lam);
        for (int j = 1; j <= 100; ++j) {
            const double odd = 2.0 * j - 1.0;
            const double term = std::exp(-odd * odd * c);
            sum += term;
            if (term < 1e-17 * sum) {
                break;
            }
        }
        return std::clamp(1.0 - std::sqrt(2.0 * sf::pi) / lam * sum, 0.0, 1.0);
    }
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lam * lam);
        sum += (j % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-17) {
            break;
        }
    }
    return std::clamp(sum, 0.0, 1.0);
}

LinearFit linear_regression(const std::vector<double>& x, const std::vector<double>& y)
{
    require(x.size() == y.size() && x.size() >= 2, "linear_regression: need two or more paired points");
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    require(sxx > 0.0, "linear_regression: x values are all equal");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace stats

}  // namespace srma
