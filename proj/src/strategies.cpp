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

#include "diamond/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace diamond {

double af_max_amplitude(const ScalarDiamond& net, std::size_t relay) {
    return std::sqrt(net.snr() / (std::norm(net.h_bc()[relay]) * net.snr() + 1.0));
}

double af_effective_snr(const ScalarDiamond& net, std::span<const Complex> scalings) {
    if (scalings.size() != net.relays()) {
        throw std::invalid_argument("af_effective_snr: expected " + std::to_string(net.relays()) + " scalings");
    }
    Complex signal{0.0, 0.0};
    double noise = 1.0;
    for (std::size_t i = 0; i < net.relays(); ++i) {
        signal += net.h_mac()[i] * scalings[i] * net.h_bc()[i];
        noise += std::norm(net.h_mac()[i] * scalings[i]);
    }
    return net.snr() * std::norm(signal) / noise;
}

double best_relay_rate(const ScalarDiamond& net) {
    double best = 0.0;
    for (std::size_t i = 0; i < net.relays(); ++i) {
        const double first = std::log2(1.0 + std::norm(net.h_bc()[i]) * net.snr());
        const double second = std::log2(1.0 + std::norm(net.h_mac()[i]) * net.snr());
        best = std::max(best, std::min(first, second));
    }
    return best;
}

namespace {

// With phases aligned, SNR_eff / SNR = (sum a_i c_i)^2 / (1 + sum b_i c_i^2)
// over amplitude fractions c_i in [0, 1].
struct AfObjective {
    std::vector<double> a;
    std::vector<double> b;

    double operator()(std::span<const double> c) const {
        double num = 0.0;
        double den = 1.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            num += a[i] * c[i];
            den += b[i] * c[i] * c[i];
        }
        return num * num / den;
    }

    // Exact maximizer over c_k with the other coordinates fixed. In c_k the
    // objective (A + a c)^2 / (B + b c^2) has a single stationary point on
    // c > 0 at c = a B / (b A), a maximum.
    double best_coordinate(std::span<const double> c, std::size_t k) const {
        if (a[k] <= 0.0) return 0.0;
        double rest_num = 0.0;
        double rest_den = 1.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == k) continue;
            rest_num += a[i] * c[i];
            rest_den += b[i] * c[i] * c[i];
        }
        if (rest_num <= 0.0) return 1.0;
        return std::min(1.0, a[k] * rest_den / (b[k] * rest_num));
    }
};

constexpr int kAfStarts = 8;
constexpr int kAfMaxSweeps = 10000;
constexpr double kAfTolerance = 1e-10;
constexpr std::uint64_t kAfStartSeed = 0x9e3779b97f4a7c15ULL;

double coordinate_ascent(const AfObjective& objective, std::vector<double>& c) {
    double value = objective(c);
    for (int sweep = 0; sweep < kAfMaxSweeps; ++sweep) {
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = objective.best_coordinate(c, k);
        const double next = objective(c);
        const bool converged = std::fabs(next - value) <= kAfTolerance * std::max(1.0, value);
        value = next;
        if (converged) break;
    }
    return value;
}

std::vector<std::vector<double>> starting_points(const AfObjective& objective) {
    const std::size_t n = objective.a.size();
    std::vector<std::vector<double>> starts;
    starts.emplace_back(n, 1.0);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto alone = [&](std::size_t i) { return objective.a[i] * objective.a[i] / (1.0 + objective.b[i]); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return alone(x) > alone(y); });
    for (std::size_t k = 0; k < std::min<std::size_t>(3, n); ++k) {
        std::vector<double> corner(n, 0.0);
        corner[order[k]] = 1.0;
        starts.push_back(std::move(corner));
    }

    std::mt19937_64 engine(kAfStartSeed);
    while (starts.size() < static_cast<std::size_t>(kAfStarts)) {
        std::vector<double> c(n);
        for (double& x : c) x = static_cast<double>(engine() >> 11) * 0x1p-53;
        starts.push_back(std::move(c));
    }
    return starts;
}

}  // namespace

AfSolution af_rate(const ScalarDiamond& net, AfMode mode) {
    const std::size_t n = net.relays();
    AfObjective objective;
    objective.a.resize(n);
    objective.b.resize(n);
    std::vector<double> max_amp(n);
    for (std::size_t i = 0; i < n; ++i) {
        max_amp[i] = af_max_amplitude(net, i);
        objective.a[i] = std::abs(net.h_mac()[i]) * std::abs(net.h_bc()[i]) * max_amp[i];
        objective.b[i] = std::norm(net.h_mac()[i]) * max_amp[i] * max_amp[i];
    }

    AfSolution out;
    out.mode = mode;
    out.scalings.assign(n, Complex{0.0, 0.0});
    if (std::all_of(objective.a.begin(), objective.a.end(), [](double x) { return x <= 0.0; })) {
        return out;
    }

    std::vector<double> fractions(n, 1.0);
    if (mode == AfMode::optimized) {
        double best = -1.0;
        for (auto& start : starting_points(objective)) {
            const double value = coordinate_ascent(objective, start);
            if (value > best) {
                best = value;
                fractions = start;
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const double phase = -(std::arg(net.h_mac()[i]) + std::arg(net.h_bc()[i]));
        out.scalings[i] = std::polar(fractions[i] * max_amp[i], phase);
    }
    out.rate = std::log2(1.0 + af_effective_snr(net, out.scalings));
    return out;
}

PowerSplit::PowerSplit(std::vector<double> powers) : powers_(std::move(powers)) {
    double total = 0.0;
    for (double p : powers_) {
        if (!std::isfinite(p) || p < 0.0) throw std::invalid_argument("PowerSplit: powers must be finite and >= 0");
        total += p;
    }
    if (total > 1.0 + 1e-12) {
        throw std::invalid_argument("PowerSplit: powers sum to " + std::to_string(total) + " > 1");
    }
}

RateVector bc_superposition_rates(std::span<const double> gains_bc, double snr, const PowerSplit& split) {
    const std::size_t n = gains_bc.size();
    if (split.size() != n) {
        throw std::invalid_argument("bc_superposition_rates: power split has " + std::to_string(split.size()) +
                                    " entries for " + std::to_string(n) + " relays");
    }
    if (!(snr > 0.0)) throw std::invalid_argument("bc_superposition_rates: snr must be positive");
    for (double g : gains_bc) {
        if (!std::isfinite(g) || g < 0.0) throw std::invalid_argument("bc_superposition_rates: gains must be >= 0");
    }

    std::vector<std::size_t> rank(n);
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t x, std::size_t y) { return gains_bc[x] > gains_bc[y]; });

    std::vector<double> rates(n, 0.0);
    double stronger_power = 0.0;
    for (std::size_t relay : rank) {
        const double g = gains_bc[relay] * snr;
        const double p = split.powers()[relay];
        rates[relay] = std::log2(1.0 + g * p / (1.0 + g * stronger_power));
        stronger_power += p;
    }
    return RateVector(std::move(rates));
}

double best_of(const ScalarDiamond& net) {
    return std::max({pdf_rate(net), af_rate(net, AfMode::optimized).rate, af_rate(net, AfMode::naive).rate,
                     best_relay_rate(net)});
}

}  // namespace diamond
