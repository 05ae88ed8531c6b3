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

#include <array>
#include <complex>
#include <cstdint>

namespace srma {

/// Philox4x32-10 counter-based generator.
///
/// The key carries the run seed and the counter carries (trial index, block
/// index), so every trial owns an independent stream that depends on nothing
/// but (seed, trial). Streams never share state and can be created in any
/// order on any thread.
class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t trial);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();

    /// Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal();

    /// Circularly-symmetric complex Gaussian with E|w|^2 = variance.
    std::complex<double> complex_normal(double variance);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> block_{};
    int used_ = 4;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

TrialStream stream_for_trial(std::uint64_t seed, std::uint64_t trial_index);

/// One Philox4x32-10 block; exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

}  // namespace srma
