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

// Monte Carlo evaluation of the relaying schemes over random fading: each
// trial draws one static channel, evaluates every requested scheme, and
// records its gap to the cutset proxy.

#pragma once

#include "diamond/core.hpp"
#include "diamond/ensembles.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace diamond {

enum class Scheme { pdf, nnc, af_opt, af_naive, best_relay, best_of };

const char* to_string(Scheme scheme) noexcept;
std::optional<Scheme> parse_scheme(std::string_view name);
// pdf, af_opt, af_naive, best_relay, best_of. NNC is opt-in.
std::vector<Scheme> default_schemes();

enum class FadingModel { rayleigh, shadow };

const char* to_string(FadingModel model) noexcept;
std::optional<FadingModel> parse_fading_model(std::string_view name);

struct ChannelParams {
    FadingModel dist = FadingModel::rayleigh;
    std::size_t relays = 10;
    double snr = 1000.0;
    // Standard deviation of the attenuation in dB; shadow model only.
    double shadow_std_db = 7.0;
};

// Rayleigh: all 2N coefficients i.i.d. CN(0, 1), h_bc first. Shadow: real
// positive coefficients 10^(-X/10) with X ~ Normal(0, shadow_std_db^2).
ScalarDiamond sample_channel(const ChannelParams& params, Engine& rng);

struct SimConfig {
    std::size_t relays = 10;
    double snr = 1000.0;
    FadingModel dist = FadingModel::rayleigh;
    double shadow_std_db = 7.0;
    std::size_t trials = 10000;
    std::uint64_t seed = 0;
    std::vector<Scheme> schemes = default_schemes();
    // 0 = std::thread::hardware_concurrency().
    unsigned threads = 0;
    double bin_width = 0.25;

    // Throws std::invalid_argument.
    void validate() const;
    ChannelParams channel() const { return {dist, relays, snr, shadow_std_db}; }
};

struct Histogram {
    std::vector<double> edges;
    std::vector<std::size_t> counts;
};

struct GapSummary {
    std::size_t count = 0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double median = 0.0;
    Histogram histogram;
};

// Bins of `bin_width` from 0 up to ceil(max gap); at least one bin. Gaps
// below 0 land in the first bin, gaps on the last edge in the last bin.
GapSummary summarize(std::span<const double> gaps, double bin_width);

struct SchemeGaps {
    Scheme scheme;
    std::vector<double> gaps;
    GapSummary summary;
};

struct GapSamples {
    std::vector<SchemeGaps> schemes;
    double bin_width = 0.25;

    const SchemeGaps* find(Scheme scheme) const;
};

// Hard assertions, each raising SimulationAssertion with the instance JSON:
// any gap below -1e-9, a PDF gap above 2 log2 N + 1e-9, an NNC gap above
// log2(N+1) + log2 N + 1 + 1e-9. Exceptions thrown while evaluating a trial
// are rethrown the same way. If several trials fail, the lowest trial index
// is reported, so the outcome does not depend on thread count.
GapSamples run_monte_carlo(const SimConfig& cfg);

inline constexpr double kGapTolerance = 1e-9;

// Writes `scheme,gap_bits` rows (all samples, scheme by scheme) to csv_path
// and the summaries to summary_path(csv_path). Throws std::system_error on
// I/O failure.
void export_gaps(const GapSamples& samples, const std::filesystem::path& csv_path);
// gaps.csv -> gaps.summary.json
std::filesystem::path summary_path(const std::filesystem::path& csv_path);
// Reads a CSV written by export_gaps and recomputes the summaries.
GapSamples import_gaps(const std::filesystem::path& csv_path, double bin_width = 0.25);

}  // namespace diamond
