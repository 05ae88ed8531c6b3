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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "srma/rng.hpp"

namespace srma {

enum class FadingMode { double_rayleigh, single_rayleigh };

const char* to_string(FadingMode mode);

/// Link geometry and antenna parameters used to derive the channel variances.
struct Geometry {
    double d0_m = 162.0;
    double dh_m = 162.0;
    double dg_m = 10.0;
    double nu0 = 4.0;
    double nuh = 2.0;
    double nug = 2.0;
    double carrier_wavelength_m = 0.33;
    double gain_bs = 1.0;
    double gain_device = 1.0;
    double gain_receiver = 1.0;
    double eta0_var = 1.0;
    double etah_var = 0.8;
    double etag_var = 1.0;

    static Geometry defaults() { return {}; }
    void validate() const;
};

struct ScenarioParams {
    int k_devices = 16;
    int n_spread = 64;
    double p_watts = 1.0;
    double sigma2_watts = 1e-14;
    double alpha = 1.0;
    double lambda0 = 0.0;
    double lambda_h = 0.0;
    double lambda_g = 0.0;
    double lambda_prod = 0.0;
    FadingMode fading_mode = FadingMode::double_rayleigh;
    double target_rate_s = 5.0;
    double target_rate_c = 0.2;

    void validate() const;

    ScenarioParams with_k(int k) const;
    ScenarioParams with_power(double p_watts_new) const;
};

struct TargetRates {
    double cellular = 5.0;
    double iot = 0.2;
};

/// lambda_c^2 G_a G_b / ((4 pi)^2 d^nu)
double path_loss(double wavelength, double gain_a, double gain_b, double distance, double exponent);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

ScenarioParams build_scenario(const Geometry& geometry, int k, int n_spread, double p_watts,
                              double sigma2_watts, double alpha, FadingMode mode,
                              TargetRates targets = {});

/// Default geometry, K = 16, N = 64, p = 30 dBm, sigma^2 = -110 dBm, alpha = 1.
ScenarioParams default_scenario();

struct ChannelRealization {
    std::complex<double> h0;
    std::vector<std::complex<double>> h;
    std::vector<std::complex<double>> g;
    std::vector<double> z;
    double lambda_sum = 0.0;
    double z_max = 0.0;
    std::size_t argmax_index = 0;
};

ChannelRealization draw_realization(const ScenarioParams& params, TrialStream& stream);

}  // namespace srma
