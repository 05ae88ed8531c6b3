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

#include "srma/specfun.hpp"

#include <array>
#include <limits>

namespace srma::specfun {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// Below this point K0/K1 use the ascending series; above it Steed's
// continued fraction. Both are accurate to a few ulp at the switch.
constexpr double series_limit = 2.0;

void require_positive(double x, const char* name)
{
    if (!(x > 0.0) || std::isnan(x)) {
        throw DomainError(std::string(name) + ": argument must be positive, got " + std::to_string(x));
    }
}

// K0(x) = sum_k (x^2/4)^k / (k!)^2 * (H_k - gamma - ln(x/2))
double k0_series(double x)
{
    const double t = 0.25 * x * x;
    const double log_half = std::log(0.5 * x);
    double term = 1.0;
    double harmonic = 0.0;
    double sum = -(euler_gamma + log_half);
    for (int k = 1; k < 60; ++k) {
        term *= t / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        const double add = term * (harmonic - euler_gamma - log_half);
        sum += add;
        if (std::abs(add) < eps * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

// Pieces of the K1 ascending series:
//   x K1(x) = 1 + x ln(x/2) I1(x) - (x^2/4) S(x)
//   S(x)    = sum_k (psi(k+1) + psi(k+2)) (x^2/4)^k / (k! (k+1)!)
struct K1SeriesParts {
    double x_log_i1;  // x ln(x/2) I1(x)
    double quarter_x2_s;  // (x^2/4) S(x)
};

K1SeriesParts k1_series_parts(double x)
{
    const double t = 0.25 * x * x;
    double term = 1.0;  // t^k / (k! (k+1)!)
    double psi_k1 = -euler_gamma;  // psi(k+1)
    double psi_k2 = 1.0 - euler_gamma;  // psi(k+2)
    double i1_sum = 1.0;
    double s_sum = psi_k1 + psi_k2;
    for (int k = 1; k < 60; ++k) {
        term *= t / (static_cast<double>(k) * (k + 1));
        psi_k1 = psi_k2;
        psi_k2 += 1.0 / (k + 1);
        i1_sum += term;
        const double add = term * (psi_k1 + psi_k2);
        s_sum += add;
        if (term < eps * i1_sum && std::abs(add) < eps * std::abs(s_sum)) {
            break;
        }
    }
    const double i1 = 0.5 * x * i1_sum;
    return {x * std::log(0.5 * x) * i1, t * s_sum};
}

// Steed's method (CF2) for K0 and K1 without the exp(-x) factor, x > 2.
struct ScaledPair {
    double k0;
    double k1;
};

ScaledPair k01_scaled_cf(double x)
{
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 10000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) {
            break;
        }
    }
    h *= a1;
    const double k0 = std::sqrt(pi / (2.0 * x)) / s;
    return {k0, k0 * (x + 0.5 - h) / x};
}

}  // namespace

void QuadratureSpec::validate() const
{
    if (!(m1_bound > 0.0) || !(m2_bound > 0.0)) {
        throw DomainError("QuadratureSpec: truncation bounds must be positive");
    }
    if (n_nodes < 1) {
        throw DomainError("QuadratureSpec: n_nodes must be >= 1");
    }
}

namespace {

// zeta(k) for k = 2..max_zeta_order by Euler-Maclaurin with N = 40.
constexpr int max_zeta_order = 64;

std::array<double, max_zeta_order + 1> zeta_table()
{
    std::array<double, max_zeta_order + 1> z{};
    constexpr double n_cut = 40.0;
    for (int k = 2; k <= max_zeta_order; ++k) {
        double sum = 0.0;
        for (int n = 39; n >= 1; --n) {
            sum += std::pow(static_cast<double>(n), -k);
        }
        const double nk = std::pow(n_cut, -k);
        // B2/2!, B4/4!, B6/6!, B8/8! terms with the rising factorials of k
        const double r1 = k / n_cut;
        const double r3 = r1 * (k + 1.0) * (k + 2.0) / (n_cut * n_cut);
        const double r5 = r3 * (k + 3.0) * (k + 4.0) / (n_cut * n_cut);
        const double r7 = r5 * (k + 5.0) * (k + 6.0) / (n_cut * n_cut);
        sum += n_cut * nk / (k - 1.0) + 0.5 * nk +
               nk * (r1 / 12.0 - r3 / 720.0 + r5 / 30240.0 - r7 / 1209600.0);
        z[static_cast<std::size_t>(k)] = sum;
    }
    return z;
}

// ln Gamma(1 + z) = -gamma z + sum_{k>=2} (-1)^k zeta(k) z^k / k, |z| <= 1/2
double ln_gamma_1p_series(double z)
{
    static const auto zeta = zeta_table();
    double sum = 0.0;
    double power = -z;  // (-z)^k
    for (int k = 2; k <= max_zeta_order; ++k) {
        power *= -z;
        const double add = zeta[static_cast<std::size_t>(k)] * power / k;
        sum += add;
        if (std::abs(add) < 0.25 * eps * std::abs(sum)) {
            break;
        }
    }
    return -euler_gamma * z + sum;
}

}  // namespace

double ln_gamma(double x)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("ln_gamma: argument must be positive and finite, got " + std::to_string(x));
    }
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return std::log(pi / std::sin(pi * x)) - ln_gamma(1.0 - x);
    }
    // near the zeros at 1 and 2 the series keeps full relative accuracy
    if (x < 1.5) {
        return ln_gamma_1p_series(x - 1.0);
    }
    if (x < 2.5) {
        return std::log1p(x - 2.0) + ln_gamma_1p_series(x - 2.0);
    }
    // Lanczos, g = 7, n = 9
    static constexpr std::array<double, 9> coef = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    const double z = x - 1.0;
    double series = coef[0];
    for (std::size_t i = 1; i < coef.size(); ++i) {
        series += coef[i] / (z + static_cast<double>(i));
    }
    const double t = z + 7.5;
    return 0.91893853320467274178 + (z + 0.5) * std::log(t) - t + std::log(series);
}

double bessel_k0(double x)
{
    require_positive(x, "bessel_k0");
    if (x <= series_limit) {
        return k0_series(x);
    }
    return k01_scaled_cf(x).k0 * std::exp(-x);
}

double bessel_k1(double x)
{
    require_positive(x, "bessel_k1");
    if (x <= series_limit) {
        const auto parts = k1_series_parts(x);
        return (1.0 + parts.x_log_i1 - parts.quarter_x2_s) / x;
    }
    return k01_scaled_cf(x).k1 * std::exp(-x);
}

double bessel_k0_scaled(double x)
{
    require_positive(x, "bessel_k0_scaled");
    if (x <= series_limit) {
        return k0_series(x) * std::exp(x);
    }
    return k01_scaled_cf(x).k0;
}

double bessel_k1_scaled(double x)
{
    require_positive(x, "bessel_k1_scaled");
    if (x <= series_limit) {
        return bessel_k1(x) * std::exp(x);
    }
    return k01_scaled_cf(x).k1;
}

double one_minus_x_k1(double x)
{
    if (x == 0.0) {
        return 0.0;
    }
    require_positive(x, "one_minus_x_k1");
    if (x <= series_limit) {
        const auto parts = k1_series_parts(x);
        return parts.quarter_x2_s - parts.x_log_i1;
    }
    return 1.0 - x * bessel_k1(x);
}

double exp_integral_e1(double x)
{
    require_positive(x, "exp_integral_e1");
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 100; ++k) {
            term *= -x / k;
            const double add = term / k;
            sum += add;
            if (std::abs(add) < eps * std::abs(sum)) {
                break;
            }
        }
        return -euler_gamma - std::log(x) - sum;
    }
    // modified Lentz on the continued fraction for e^x E1(x)
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < eps) {
            break;
        }
    }
    return h * std::exp(-x);
}

std::vector<double> chebyshev_nodes(int n)
{
    if (n < 1) {
        throw DomainError("chebyshev_nodes: n must be >= 1");
    }
    const auto count = static_cast<std::size_t>(n);
    std::vector<double> nodes(count, 0.0);
    // upper half computed, lower half mirrored so phi_i = -phi_{n+1-i} holds exactly;
    // the middle node of an odd rule stays exactly 0
    for (std::size_t i = 0; i < count / 2; ++i) {
        nodes[i] = std::cos((2.0 * static_cast<double>(i) + 1.0) * pi / (2.0 * n));
        nodes[count - 1 - i] = -nodes[i];
    }
    return nodes;
}

}  // namespace srma::specfun
