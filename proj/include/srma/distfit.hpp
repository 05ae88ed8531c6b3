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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace srma {

/// Density and CDF of Z_k = |g_k h_k|^2 when g_k and h_k are independent
/// circular Gaussians; lambda_prod = E Z_k.
double z_pdf(double z, double lambda_prod);
double z_cdf(double z, double lambda_prod);
/// 1 - z_cdf, accurate in the far tail.
double z_ccdf(double z, double lambda_prod);

/// Largest of K independent copies of Z_k.
double maxz_pdf(double z, double lambda_prod, int k);
double maxz_cdf(double z, double lambda_prod, int k);

/// Generalized-K law restricted to m1 == m2 (the kernel order m1 - m2 is 0).
struct GenKParams {
    double m1 = 1.0;
    double m2 = 1.0;
    double omega = 1.0;

    void validate() const;
};

/// Shape choice for fitting the aggregate strength Lambda = sum_k Z_k.
struct GenKShape {
    enum class Rule { moment_matched, k, k_plus_epsilon };
    Rule rule = Rule::moment_matched;
    double epsilon = 0.0;

    static GenKShape k_plus_epsilon(double eps) { return {Rule::k_plus_epsilon, eps}; }
};

/// m = (K + sqrt(K^2 + 3K)) / 3 (default rule), omega = K lambda.
GenKParams fit_genk(int k, double lambda_prod, GenKShape shape = {});

double genk_pdf(double x, const GenKParams& params);
double genk_cdf(double x, const GenKParams& params);

struct GaussianFamily {
    double mean;
    double variance;
};

struct GammaFamily {
    double shape;  // beta1
    double scale;  // beta2
};

struct GenKFamily {
    GenKParams params;
};

using ApproxFamily = std::variant<GaussianFamily, GammaFamily, GenKFamily>;

std::string family_name(const ApproxFamily& family);
double approx_pdf(const ApproxFamily& family, double x);
double approx_mean(const ApproxFamily& family);

/// Gaussian (K lambda, 3 K lambda^2), Gamma (K/3, 3 lambda), generalized-K; in that order.
std::vector<ApproxFamily> fit_families(int k, double lambda_prod, GenKShape shape = {});

namespace stats {

struct Histogram {
    double lo = 0.0;
    double bin_width = 0.0;
    std::vector<double> density;  // normalized so sum(density) * bin_width = 1

    double center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * bin_width; }
};

/// Freedman-Diaconis bin width 2 IQR / n^(1/3) over [min, max]; bins capped at max_bins.
Histogram freedman_diaconis(std::vector<double> samples, std::size_t max_bins = 1000);

/// Largest |density - pdf(center)| over the histogram bins.
template <class Pdf>
double sup_distance(const Histogram& hist, Pdf&& pdf)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < hist.density.size(); ++i) {
        worst = std::max(worst, std::abs(hist.density[i] - pdf(hist.center(i))));
    }
    return worst;
}

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF. Sorts in place.
template <class Cdf>
double ks_statistic(std::vector<double>& samples, Cdf&& cdf);

/// Asymptotic p-value for sqrt(n) D (Kolmogorov distribution).
double kolmogorov_pvalue(double d, std::size_t n);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit linear_regression(const std::vector<double>& x, const std::vector<double>& y);

double mean(const std::vector<double>& v);
double quantile(std::vector<double> v, double q);

}  // namespace stats

}  // namespace srma

#include "srma/detail/ks_impl.hpp"
