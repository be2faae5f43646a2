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

#include "diamond/ensembles.hpp"

#include <algorithm>
#include <cmath>

namespace diamond {

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Engine substream(std::uint64_t seed, std::uint64_t stream) { return Engine(substream_seed(seed, stream)); }

Complex standard_complex_normal(Engine& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

ComplexMatrix random_complex_matrix(Eigen::Index rows, Eigen::Index cols, Engine& rng) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = standard_complex_normal(rng);
    }
    return m;
}

double log_uniform(Engine& rng, double lo_exp, double hi_exp) {
    std::uniform_real_distribution<double> u(lo_exp, hi_exp);
    return std::pow(10.0, u(rng));
}

MimoDiamond random_mimo_diamond(Engine& rng, const MimoEnsemble& ensemble) {
    std::uniform_int_distribution<std::size_t> relay_count(ensemble.min_relays, ensemble.max_relays);
    std::uniform_int_distribution<std::size_t> antenna_count(1, ensemble.max_antennas);
    const std::size_t n = relay_count(rng);
    std::vector<std::size_t> antennas(n);
    std::size_t total = 0;
    for (auto& a : antennas) {
        a = antenna_count(rng);
        total += a;
    }
    const std::size_t n_s = std::min(antenna_count(rng), total);
    const std::size_t n_d = std::min(antenna_count(rng), total);
    const double snr = log_uniform(rng, ensemble.min_snr_exp, ensemble.max_snr_exp);

    std::vector<ComplexMatrix> h_bc;
    std::vector<ComplexMatrix> h_mac;
    for (std::size_t i = 0; i < n; ++i) {
        const auto ni = static_cast<Eigen::Index>(antennas[i]);
        h_bc.push_back(random_complex_matrix(ni, static_cast<Eigen::Index>(n_s), rng));
        h_mac.push_back(random_complex_matrix(static_cast<Eigen::Index>(n_d), ni, rng));
    }
    return MimoDiamond(n_s, n_d, std::move(antennas), std::move(h_bc), std::move(h_mac), snr);
}

ScalarDiamond random_rayleigh_diamond(Engine& rng, std::size_t relays, double snr) {
    std::vector<Complex> h_bc(relays);
    std::vector<Complex> h_mac(relays);
    for (auto& h : h_bc) h = standard_complex_normal(rng);
    for (auto& h : h_mac) h = standard_complex_normal(rng);
    return ScalarDiamond(std::move(h_bc), std::move(h_mac), snr);
}

}  // namespace diamond
