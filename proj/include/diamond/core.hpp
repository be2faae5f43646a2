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

// Scalar (single-antenna) N-relay Gaussian diamond network: source -> N
// relays (broadcast hop) -> destination (multiple-access hop), no direct
// link. All rates are in bits per channel use (log base 2) throughout the
// library; noise variance is normalized to 1 so SNR = P.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace diamond {

using Complex = std::complex<double>;

// Hard cap on the relay count for any 2^N subset enumeration.
inline constexpr std::size_t kMaxEnumerationRelays = 30;

class ScalarDiamond {
public:
    // Throws std::invalid_argument if the gain vectors are empty or differ in
    // length, if any coefficient is non-finite, or if snr is not a positive
    // finite number.
    ScalarDiamond(std::vector<Complex> h_bc, std::vector<Complex> h_mac, double snr);

    std::size_t relays() const noexcept { return h_bc_.size(); }
    double snr() const noexcept { return snr_; }

    // h_{is}: source -> relay i.
    std::span<const Complex> h_bc() const noexcept { return h_bc_; }
    // h_{id}: relay i -> destination.
    std::span<const Complex> h_mac() const noexcept { return h_mac_; }

    // |h_{is}|^2 and |h_{id}|^2, in relay order.
    std::vector<double> bc_power_gains() const;
    std::vector<double> mac_power_gains() const;

private:
    std::vector<Complex> h_bc_;
    std::vector<Complex> h_mac_;
    double snr_;
};

// Worst-case gaps (bits) between the cutset proxy and the two relaying
// schemes: g1 for noisy network coding, g2 for partial decode-and-forward.
struct GapConstants {
    double g1 = 0.0;
    double g2 = 0.0;
};

// Independent-input upper bound on the cutset bound:
//   min over cuts L of log2(1 + SNR sum_{i notin L} |h_is|^2)
//                    + log2(1 + SNR (sum_{i in L} |h_id|)^2).
// The second term is the MISO beamforming capacity of the relays in L.
// Throws SizeError for more than kMaxEnumerationRelays relays.
double cutset_proxy(const ScalarDiamond& net);

// Noisy network coding with quantization noise variance N (coarse
// quantization), clamped at zero:
//   max(0, min over L of log2(1 + SNR/(N+1) sum_{i notin L} |h_is|^2)
//                        + log2(1 + SNR sum_{i in L} |h_id|^2)
//                        - |L| log2(1 + 1/N)).
double nnc_rate(const ScalarDiamond& net);

// Partial decode-and-forward: the max sum rate over the intersection of the
// MAC polymatroid and the equal-power-split BC polymatroid, evaluated with
// the polymatroid intersection min-cut form. Limited by the eager set
// function storage cap (kMaxSetFunctionSize relays).
double pdf_rate(const ScalarDiamond& net);

// g1 = log2(n+1) + log2(n) + 1, g2 = 2 log2(n). Requires n >= 1.
GapConstants gap_constants_scalar(std::size_t n);

namespace detail {
void require_enumerable(std::size_t n, std::size_t cap, const char* what);
}  // namespace detail

}  // namespace diamond
