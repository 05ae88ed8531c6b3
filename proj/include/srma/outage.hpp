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

#include "srma/channel.hpp"
#include "srma/specfun.hpp"

namespace srma {

struct OutageInputs {
    ScenarioParams params;
    specfun::QuadratureSpec quad;
    double a1 = 0.0;     // log2 e / alpha^2
    double a2 = 0.0;     // R_s - log2(p alpha^2 / sigma^2) + gamma log2 e
    double delta = 0.0;  // sigma^2 (2^{N R_c} - 1) / (N p alpha^2)

    static OutageInputs from(const ScenarioParams& params, const specfun::QuadratureSpec& quad = {});
};

struct Probability {
    double value = 0.0;
    /// false when the quadrature failed its n/2n check or clamping moved the value by more than 1e-4
    bool converged = true;
};

/// Cellular outage is taken against the first-order high-SNR bound
/// (cellular_rate_bound); Lambda follows the fitted generalized-K law.
Probability sa_cellular_outage(const OutageInputs& in);
Probability sa_iot_outage(const OutageInputs& in);
/// Small-delta expansion of the generalized-K CDF.
Probability sa_iot_outage_asymptotic(const OutageInputs& in);
Probability sda_cellular_outage(const OutageInputs& in);
Probability sda_iot_outage(const OutageInputs& in);

}  // namespace srma
