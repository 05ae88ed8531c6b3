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
#include <stdexcept>
#include <string>
#include <vector>

namespace srma {

/// Raised when an argument lies outside an operation's domain.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

namespace specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double log2_e = 1.44269504088896340735992468100189214;
inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Truncation bounds and node count for the Gauss-Chebyshev rate integrals.
/// Bounds are expressed in multiples of the backscatter product variance
/// lambda (see rates.hpp).
struct QuadratureSpec {
    double m1_bound = 1000.0;
    double m2_bound = 1000.0;
    int n_nodes = 128;

    void validate() const;
};

double ln_gamma(double x);

double bessel_k0(double x);
double bessel_k1(double x);

/// e^x K0(x) and e^x K1(x); finite for all x > 0.
double bessel_k0_scaled(double x);
double bessel_k1_scaled(double x);

/// 1 - x K1(x), accurate for small x where the difference cancels.
double one_minus_x_k1(double x);

/// E1(x) = -Ei(-x).
double exp_integral_e1(double x);

/// phi_i = cos((2i - 1) pi / (2n)), i = 1..n.
std::vector<double> chebyshev_nodes(int n);

/// Gauss-Chebyshev estimate of the integral of f over [0, upper]:
/// (upper pi / 2n) sum f((upper phi_i + upper) / 2) sqrt(1 - phi_i^2).
template <class F>
double integrate_gc(F&& f, double upper, int n)
{
    if (!(upper > 0.0) || !std::isfinite(upper)) {
        throw DomainError("integrate_gc: upper bound must be positive and finite");
    }
    if (n < 1) {
        throw DomainError("integrate_gc: node count must be >= 1");
    }
    double sum = 0.0;
    for (const double phi : chebyshev_nodes(n)) {
        sum += f(0.5 * (upper * phi + upper)) * std::sqrt(1.0 - phi * phi);
    }
    return upper * pi / (2.0 * n) * sum;
}

struct QuadValue {
    double value = 0.0;
    /// false when the n-node and 2n-node estimates differ by more than 1e-3 relative
    bool converged = true;
};

template <class F>
QuadValue integrate_gc_checked(F&& f, double upper, int n)
{
    const double coarse = integrate_gc(f, upper, n);
    const double fine = integrate_gc(f, upper, 2 * n);
    const double scale = std::max(std::abs(fine), 1e-300);
    return {coarse, std::abs(coarse - fine) <= 1e-3 * scale};
}

namespace detail {

template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson over [a, b]. The interval is first cut into `panels`
/// equal pieces so narrow peaks cannot slip between the initial samples.
/// f must be finite on the closed interval.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-10, int panels = 64)
{
    if (!(b >= a)) {
        throw DomainError("integrate_adaptive: expected a <= b");
    }
    if (b == a) {
        return 0.0;
    }
    const double width = (b - a) / panels;
    const double tol = abs_tol / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == panels) ? b : lo + width;
        const double flo = f(lo);
        const double fhi = f(hi);
        const double fmid = f(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += detail::simpson_step(f, lo, hi, flo, fmid, fhi, whole, tol, 40);
    }
    return total;
}

}  // namespace specfun
}  // namespace srma
