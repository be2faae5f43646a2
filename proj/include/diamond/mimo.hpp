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

// Multi-antenna diamond network: log-det capacities, waterfilling, and the
// MIMO versions of the cutset proxy, the noisy network coding rate and the
// partial decode-and-forward rate.

#pragma once

#include "diamond/core.hpp"
#include "diamond/polymatroid.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace diamond {

using ComplexMatrix = Eigen::MatrixXcd;

class MimoDiamond {
public:
    // h_bc[i] is H_is (antennas[i] x n_s), h_mac[i] is H_id (n_d x
    // antennas[i]). Requires N >= 1, consistent shapes, finite entries,
    // positive finite snr and n_s, n_d <= M = sum of relay antennas.
    MimoDiamond(std::size_t n_s, std::size_t n_d, std::vector<std::size_t> antennas, std::vector<ComplexMatrix> h_bc,
                std::vector<ComplexMatrix> h_mac, double snr);

    // Single-antenna embedding of a scalar network.
    static MimoDiamond from_scalar(const ScalarDiamond& net);

    std::size_t relays() const noexcept { return antennas_.size(); }
    std::size_t source_antennas() const noexcept { return n_s_; }
    std::size_t destination_antennas() const noexcept { return n_d_; }
    std::span<const std::size_t> antennas() const noexcept { return antennas_; }
    std::size_t total_relay_antennas() const noexcept { return total_; }
    double snr() const noexcept { return snr_; }

    const ComplexMatrix& h_bc(std::size_t i) const { return h_bc_[i]; }
    const ComplexMatrix& h_mac(std::size_t i) const { return h_mac_[i]; }

    // H_is^H H_is (n_s x n_s) and H_id H_id^H (n_d x n_d).
    const ComplexMatrix& bc_gram(std::size_t i) const { return bc_gram_[i]; }
    const ComplexMatrix& mac_gram(std::size_t i) const { return mac_gram_[i]; }

    bool all_single_antenna() const noexcept;

private:
    std::size_t n_s_;
    std::size_t n_d_;
    std::vector<std::size_t> antennas_;
    std::size_t total_ = 0;
    std::vector<ComplexMatrix> h_bc_;
    std::vector<ComplexMatrix> h_mac_;
    std::vector<ComplexMatrix> bc_gram_;
    std::vector<ComplexMatrix> mac_gram_;
    double snr_;
};

// log2 det(I + gram) for a Hermitian PSD gram, via a Cholesky factorization
// of I + gram. Rejects asymmetric input (beyond 1e-9, relative to the largest
// entry) and eigenvalues below -1e-7 with std::invalid_argument.
double logdet_rate(const ComplexMatrix& gram);

// Eigenvalues of H^H H (squared singular values of H), ascending, clamped at 0.
std::vector<double> squared_singular_values(const ComplexMatrix& h);

struct WaterfillResult {
    std::vector<double> allocation;
    double water_level = 0.0;
    double capacity = 0.0;
};

// Maximizes sum log2(1 + p_i gains_i) subject to sum p_i = total_power by
// bisection on the water level. Modes with zero gain get no power. If every
// gain is zero the power is split evenly and the capacity is 0.
WaterfillResult waterfill(std::span<const double> gains, double total_power);

// min(n_r, n_t) log2(1 + (n_t - 1) / min(n_r, n_t)): the most waterfilling can
// gain over equal power per transmit antenna.
double lemma1_bound(std::size_t n_t, std::size_t n_r);

// Upper bound on the cutset bound with independent equal-power inputs plus
// the waterfilling correction on both hops:
//   min over L of log2 det(I + (SNR/n_s) sum_{i notin L} H_is^H H_is)
//               + log2 det(I + SNR sum_{i in L} H_id H_id^H)
//   + n_s log2(1 + (n_s-1)/n_a) + n_d log2(1 + (M-1)/n_b).
double mimo_cutset_proxy(const MimoDiamond& net);
// Noisy network coding with quantization noise covariance M I, clamped at 0.
double mimo_nnc_rate(const MimoDiamond& net);
double mimo_pdf_rate(const MimoDiamond& net);

// f(S) = log2 det(I + sum_{i in S} (SNR/n_i) H_id H_id^H)
SetFunction mimo_mac_set_function(const MimoDiamond& net);
// g(S) = log2 det(I + (SNR/M) sum_{i in S} H_is^H H_is)
SetFunction mimo_bc_lower_set_function(const MimoDiamond& net);

GapConstants mimo_gap_constants(std::size_t n_s, std::size_t n_d, std::span<const std::size_t> antennas);

}  // namespace diamond
