// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Seeded random channel ensembles. Every trial draws from its own engine,
// derived from (seed, trial index), so results do not depend on how trials
// are scheduled across threads.

#pragma once

#include "diamond/core.hpp"
#include "diamond/mimo.hpp"

#include <cstdint>
#include <random>

namespace diamond {

using Engine = std::mt19937_64;

// SplitMix64-mixed seed for substream `stream` of `seed`.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) noexcept;
Engine substream(std::uint64_t seed, std::uint64_t stream);

// Circularly symmetric complex Gaussian with E|z|^2 = 1.
Complex standard_complex_normal(Engine& rng);

ComplexMatrix random_complex_matrix(Eigen::Index rows, Eigen::Index cols, Engine& rng);

// Log-uniform on [10^lo_exp, 10^hi_exp].
double log_uniform(Engine& rng, double lo_exp, double hi_exp);

struct MimoEnsemble {
    std::size_t min_relays = 1;
    std::size_t max_relays = 4;
    std::size_t max_antennas = 3;
    double min_snr_exp = -2.0;
    double max_snr_exp = 4.0;
};

// Uniform relay count in [min_relays, max_relays], uniform antenna counts in
// [1, max_antennas] with n_s, n_d capped at M, i.i.d. unit-variance complex
// Gaussian entries and log-uniform SNR.
MimoDiamond random_mimo_diamond(Engine& rng, const MimoEnsemble& ensemble);

// Same construction restricted to single antennas and exactly `relays` relays.
ScalarDiamond random_rayleigh_diamond(Engine& rng, std::size_t relays, double snr);

}  // namespace diamond
