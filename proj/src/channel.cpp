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

#include "srma/channel.hpp"

#include <cmath>
#include <string>

#include "srma/specfun.hpp"

namespace srma {

namespace {

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw DomainError(message);
    }
}

bool positive(double x)
{
    return x > 0.0 && std::isfinite(x);
}

}  // namespace

const char* to_string(FadingMode mode)
{
    return mode == FadingMode::double_rayleigh ? "double" : "single";
}

void Geometry::validate() const
{
    require(positive(d0_m) && positive(dh_m) && positive(dg_m), "Geometry: distances must be positive");
    require(nu0 >= 2.0 && nuh >= 2.0 && nug >= 2.0, "Geometry: path-loss exponents must be >= 2");
    require(positive(carrier_wavelength_m), "Geometry: carrier wavelength must be positive");
    require(positive(gain_bs) && positive(gain_device) && positive(gain_receiver),
            "Geometry: antenna gains must be positive");
    require(positive(eta0_var) && positive(etah_var) && positive(etag_var),
            "Geometry: small-scale variances must be positive");
}

void ScenarioParams::validate() const
{
    require(k_devices >= 1, "ScenarioParams: k_devices must be >= 1");
    require(n_spread >= 1, "ScenarioParams: n_spread must be >= 1");
    require(positive(p_watts), "ScenarioParams: p_watts must be positive");
    require(positive(sigma2_watts), "ScenarioParams: sigma2_watts must be positive");
    require(alpha > 0.0 && alpha <= 1.0, "ScenarioParams: alpha must lie in (0, 1]");
    require(positive(lambda0) && positive(lambda_h) && positive(lambda_g),
            "ScenarioParams: channel variances must be positive");
    require(lambda_prod == lambda_h * lambda_g, "ScenarioParams: lambda_prod must equal lambda_h * lambda_g");
    require(target_rate_s >= 0.0 && target_rate_c >= 0.0, "ScenarioParams: target rates must be nonnegative");
}

ScenarioParams ScenarioParams::with_k(int k) const
{
    ScenarioParams out = *this;
    out.k_devices = k;
    out.validate();
    return out;
}

ScenarioParams ScenarioParams::with_power(double p_watts_new) const
{
    ScenarioParams out = *this;
    out.p_watts = p_watts_new;
    out.validate();
    return out;
}

double path_loss(double wavelength, double gain_a, double gain_b, double distance, double exponent)
{
    require(positive(wavelength) && positive(gain_a) && positive(gain_b) && positive(distance) &&
                positive(exponent),
            "path_loss: all inputs must be positive");
    const double four_pi = 4.0 * specfun::pi;
    return wavelength * wavelength * gain_a * gain_b / (four_pi * four_pi * std::pow(distance, exponent));
}

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts)
{
    require(positive(watts), "watts_to_dbm: power must be positive");
    return 10.0 * std::log10(watts) + 30.0;
}

ScenarioParams build_scenario(const Geometry& geometry, int k, int n_spread, double p_watts,
                              double sigma2_watts, double alpha, FadingMode mode, TargetRates targets)
{
    geometry.validate();
    const double wl = geometry.carrier_wavelength_m;
    const double l0 = path_loss(wl, geometry.gain_bs, geometry.gain_receiver, geometry.d0_m, geometry.nu0);
    const double lh = path_loss(wl, geometry.gain_bs, geometry.gain_device, geometry.dh_m, geometry.nuh);
    const double lg = path_loss(wl, geometry.gain_device, geometry.gain_receiver, geometry.dg_m, geometry.nug);

    ScenarioParams params;
    params.k_devices = k;
    params.n_spread = n_spread;
    params.p_watts = p_watts;
    params.sigma2_watts = sigma2_watts;
    params.alpha = alpha;
    params.lambda0 = geometry.eta0_var * l0;
    params.lambda_h = geometry.etah_var * lh;
    params.lambda_g = geometry.etag_var * lg;
    params.lambda_prod = params.lambda_h * params.lambda_g;
    params.fading_mode = mode;
    params.target_rate_s = targets.cellular;
    params.target_rate_c = targets.iot;
    params.validate();
    return params;
}

ScenarioParams default_scenario()
{
    return build_scenario(Geometry::defaults(), 16, 64, dbm_to_watts(30.0), dbm_to_watts(-110.0), 1.0,
                          FadingMode::double_rayleigh);
}

ChannelRealization draw_realization(const ScenarioParams& params, TrialStream& stream)
{
    const auto k = static_cast<std::size_t>(params.k_devices);
    ChannelRealization r;
    r.h0 = stream.complex_normal(params.lambda0);
    r.h.resize(k);
    r.g.resize(k);
    r.z.resize(k);
    const double g_fixed = std::sqrt(params.lambda_g);
    for (std::size_t i = 0; i < k; ++i) {
        r.h[i] = stream.complex_normal(params.lambda_h);
        r.g[i] = params.fading_mode == FadingMode::double_rayleigh
                     ? stream.complex_normal(params.lambda_g)
                     : std::complex<double>(g_fixed, 0.0);
        r.z[i] = std::norm(r.g[i]) * std::norm(r.h[i]);
        r.lambda_sum += r.z[i];
        if (i == 0 || r.z[i] > r.z_max) {
            r.z_max = r.z[i];
            r.argmax_index = i;
        }
    }
    return r;
}

}  // namespace srma
