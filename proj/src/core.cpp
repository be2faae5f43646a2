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

#include "diamond/core.hpp"

#include "diamond/errors.hpp"
#include "diamond/polymatroid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace diamond {

namespace detail {

void require_enumerable(std::size_t n, std::size_t cap, const char* what) {
    if (n > cap) {
        throw SizeError(std::string(what) + ": " + std::to_string(n) + " relays exceeds the enumeration cap of " +
                        std::to_string(cap));
    }
}

}  // namespace detail

ScalarDiamond::ScalarDiamond(std::vector<Complex> h_bc, std::vector<Complex> h_mac, double snr)
    : h_bc_(std::move(h_bc)), h_mac_(std::move(h_mac)), snr_(snr) {
    if (h_bc_.empty()) {
        throw std::invalid_argument("ScalarDiamond: at least one relay is required");
    }
    if (h_bc_.size() != h_mac_.size()) {
        throw std::invalid_argument("ScalarDiamond: h_bc has " + std::to_string(h_bc_.size()) +
                                    " entries but h_mac has " + std::to_string(h_mac_.size()));
    }
    auto finite = [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    if (!std::all_of(h_bc_.begin(), h_bc_.end(), finite) || !std::all_of(h_mac_.begin(), h_mac_.end(), finite)) {
        throw std::invalid_argument("ScalarDiamond: channel coefficients must be finite");
    }
    if (!(snr_ > 0.0) || !std::isfinite(snr_)) {
        throw std::invalid_argument("ScalarDiamond: snr must be positive and finite");
    }
}

std::vector<double> ScalarDiamond::bc_power_gains() const {
    std::vector<double> out(h_bc_.size());
    std::transform(h_bc_.begin(), h_bc_.end(), out.begin(), [](const Complex& z) { return std::norm(z); });
    return out;
}

std::vector<double> ScalarDiamond::mac_power_gains() const {
    std::vector<double> out(h_mac_.size());
    std::transform(h_mac_.begin(), h_mac_.end(), out.begin(), [](const Complex& z) { return std::norm(z); });
    return out;
}

double cutset_proxy(const ScalarDiamond& net) {
    const std::size_t n = net.relays();
    detail::require_enumerable(n, kMaxEnumerationRelays, "cutset_proxy");
    const auto bc = net.bc_power_gains();
    std::vector<double> mac_amp(n);
    for (std::size_t i = 0; i < n; ++i) mac_amp[i] = std::abs(net.h_mac()[i]);

    const std::uint64_t subsets = std::uint64_t{1} << n;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t cut = 0; cut < subsets; ++cut) {
        double simo = 0.0;
        double miso = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (cut >> i & 1U) {
                miso += mac_amp[i];
            } else {
                simo += bc[i];
            }
        }
        best = std::min(best, std::log2(1.0 + net.snr() * simo) + std::log2(1.0 + net.snr() * miso * miso));
    }
    return best;
}

double nnc_rate(const ScalarDiamond& net) {
    const std::size_t n = net.relays();
    detail::require_enumerable(n, kMaxEnumerationRelays, "nnc_rate");
    const auto bc = net.bc_power_gains();
    const auto mac = net.mac_power_gains();
    const double nd = static_cast<double>(n);
    const double quantization_penalty = std::log2(1.0 + 1.0 / nd);

    const std::uint64_t subsets = std::uint64_t{1} << n;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t cut = 0; cut < subsets; ++cut) {
        double simo = 0.0;
        double mac_sum = 0.0;
        int in_cut = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (cut >> i & 1U) {
                mac_sum += mac[i];
                ++in_cut;
            } else {
                simo += bc[i];
            }
        }
        const double value = std::log2(1.0 + simo * net.snr() / (nd + 1.0)) + std::log2(1.0 + mac_sum * net.snr()) -
                             in_cut * quantization_penalty;
        best = std::min(best, value);
    }
    return std::max(0.0, best);
}

double pdf_rate(const ScalarDiamond& net) {
    detail::require_enumerable(net.relays(), kMaxSetFunctionSize, "pdf_rate");
    const auto f = mac_set_function(net.mac_power_gains(), net.snr());
    const auto g = bc_lower_set_function(net.bc_power_gains(), net.snr());
    return edmonds_max_sum(f, g).value;
}

GapConstants gap_constants_scalar(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gap_constants_scalar: n must be >= 1");
    const double nd = static_cast<double>(n);
    return {std::log2(nd + 1.0) + std::log2(nd) + 1.0, 2.0 * std::log2(nd)};
}

}  // namespace diamond
