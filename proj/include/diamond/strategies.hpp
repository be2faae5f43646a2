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

// Comparison relaying schemes for the scalar diamond network and the
// superposition-coding broadcast rate calculator.

#pragma once

#include "diamond/core.hpp"
#include "diamond/polymatroid.hpp"

#include <span>
#include <vector>

namespace diamond {

enum class AfMode { naive, optimized };

// Amplify-and-forward operating point. Noise variance is 1 and every node
// has power SNR, so relay i forwards beta_i * y_i subject to
//   |beta_i|^2 (|h_is|^2 SNR + 1) <= SNR,
// and the destination sees
//   SNR_eff = SNR |sum_i h_id beta_i h_is|^2 / (1 + sum_i |h_id beta_i|^2).
struct AfSolution {
    double rate = 0.0;
    std::vector<Complex> scalings;
    AfMode mode = AfMode::naive;
};

// Effective SNR at the destination for arbitrary complex scalings.
double af_effective_snr(const ScalarDiamond& net, std::span<const Complex> scalings);

// Largest feasible |beta_i| for relay i.
double af_max_amplitude(const ScalarDiamond& net, std::size_t relay);

// max_i min(log2(1 + |h_is|^2 SNR), log2(1 + |h_id|^2 SNR)).
double best_relay_rate(const ScalarDiamond& net);

// Phases are always aligned, arg(beta_i) = -arg(h_id h_is). Naive mode runs
// every relay at full power; optimized mode maximizes SNR_eff over the
// amplitude fractions c_i in [0, 1] by multi-start exact coordinate ascent.
AfSolution af_rate(const ScalarDiamond& net, AfMode mode);

class PowerSplit {
public:
    // Fractions of the source power. Throws std::invalid_argument on negative
    // or non-finite entries or if the total exceeds 1 (+1e-12).
    explicit PowerSplit(std::vector<double> powers);

    std::size_t size() const noexcept { return powers_.size(); }
    std::span<const double> powers() const noexcept { return powers_; }

private:
    std::vector<double> powers_;
};

// Superposition coding with successive cancellation on the broadcast hop.
// With relays ranked so that gain_(1) >= gain_(2) >= ..., the relay of rank k
// decodes and strips the codewords of all weaker relays and treats those of
// the stronger ranks as noise:
//   R_(k) = log2(1 + g_(k) SNR P_(k) / (1 + g_(k) SNR sum_{j<k} P_(j))).
// Ties in gain keep the original relay order. Results are returned in the
// original relay order; split[i] is the power of relay i's codeword.
RateVector bc_superposition_rates(std::span<const double> gains_bc, double snr, const PowerSplit& split);

// Best of pdf_rate, both AF modes and best_relay_rate.
double best_of(const ScalarDiamond& net);

}  // namespace diamond
