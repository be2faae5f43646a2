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

#include "diamond/sim.hpp"

#include "diamond/errors.hpp"
#include "diamond/instance_io.hpp"
#include "diamond/strategies.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <system_error>
#include <thread>

namespace diamond {

namespace {

constexpr std::pair<Scheme, const char*> kSchemeNames[] = {
    {Scheme::pdf, "pdf"},           {Scheme::nnc, "nnc"},
    {Scheme::af_opt, "af_opt"},     {Scheme::af_naive, "af_naive"},
    {Scheme::best_relay, "best_relay"}, {Scheme::best_of, "best_of"},
};

}  // namespace

const char* to_string(Scheme scheme) noexcept {
    for (const auto& [s, name] : kSchemeNames) {
        if (s == scheme) return name;
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    for (const auto& [s, n] : kSchemeNames) {
        if (name == n) return s;
    }
    return std::nullopt;
}

std::vector<Scheme> default_schemes() {
    return {Scheme::pdf, Scheme::af_opt, Scheme::af_naive, Scheme::best_relay, Scheme::best_of};
}

const char* to_string(FadingModel model) noexcept {
    return model == FadingModel::rayleigh ? "rayleigh" : "shadow";
}

std::optional<FadingModel> parse_fading_model(std::string_view name) {
    if (name == "rayleigh") return FadingModel::rayleigh;
    if (name == "shadow") return FadingModel::shadow;
    return std::nullopt;
}

ScalarDiamond sample_channel(const ChannelParams& params, Engine& rng) {
    if (params.relays == 0) throw std::invalid_argument("sample_channel: relays must be >= 1");
    switch (params.dist) {
    case FadingModel::rayleigh:
        return random_rayleigh_diamond(rng, params.relays, params.snr);
    case FadingModel::shadow: {
        if (!(params.shadow_std_db >= 0.0) || !std::isfinite(params.shadow_std_db)) {
            throw std::invalid_argument("sample_channel: shadow_std_db must be finite and >= 0");
        }
        std::normal_distribution<double> normal(0.0, 1.0);
        auto draw = [&] { return Complex{std::pow(10.0, -params.shadow_std_db * normal(rng) / 10.0), 0.0}; };
        std::vector<Complex> h_bc(params.relays);
        std::vector<Complex> h_mac(params.relays);
        for (auto& h : h_bc) h = draw();
        for (auto& h : h_mac) h = draw();
        return ScalarDiamond(std::move(h_bc), std::move(h_mac), params.snr);
    }
    }
    throw std::invalid_argument("sample_channel: unknown fading model");
}

void SimConfig::validate() const {
    if (relays == 0) throw std::invalid_argument("relays must be >= 1");
    detail::require_enumerable(relays, kMaxSetFunctionSize, "simulate");
    if (!(snr > 0.0) || !std::isfinite(snr)) throw std::invalid_argument("snr must be positive and finite");
    if (trials == 0) throw std::invalid_argument("trials must be >= 1");
    if (dist == FadingModel::shadow && (!(shadow_std_db >= 0.0) || !std::isfinite(shadow_std_db))) {
        throw std::invalid_argument("shadow std must be finite and >= 0");
    }
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) throw std::invalid_argument("bin width must be positive");
}

GapSummary summarize(std::span<const double> gaps, double bin_width) {
    GapSummary s;
    s.count = gaps.size();
    const double top = gaps.empty() ? 0.0 : std::max(0.0, std::ceil(*std::max_element(gaps.begin(), gaps.end())));
    const auto bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(top / bin_width - 1e-12)));
    for (std::size_t b = 0; b <= bins; ++b) s.histogram.edges.push_back(static_cast<double>(b) * bin_width);
    s.histogram.counts.assign(bins, 0);
    if (gaps.empty()) return s;

    std::vector<double> sorted(gaps.begin(), gaps.end());
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    s.mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
    const std::size_t mid = sorted.size() / 2;
    s.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    for (double g : gaps) {
        const double slot = std::floor(std::max(0.0, g) / bin_width);
        s.histogram.counts[std::min(bins - 1, static_cast<std::size_t>(slot))]++;
    }
    return s;
}

const SchemeGaps* GapSamples::find(Scheme scheme) const {
    for (const auto& s : schemes) {
        if (s.scheme == scheme) return &s;
    }
    return nullptr;
}

namespace {

struct Failure {
    std::size_t trial = std::numeric_limits<std::size_t>::max();
    std::string message;
    std::string instance_json;
};

// Gaps for one instance, in cfg.schemes order.
void evaluate_trial(const ScalarDiamond& net, std::span<const Scheme> schemes, std::span<double> out) {
    const std::size_t n = net.relays();
    const double proxy = cutset_proxy(net);
    const auto bounds = gap_constants_scalar(n);

    std::optional<double> pdf, af_opt, af_naive, best_relay;
    auto get = [&](std::optional<double>& slot, auto&& compute) {
        if (!slot) slot = compute();
        return *slot;
    };
    auto pdf_value = [&] { return get(pdf, [&] { return pdf_rate(net); }); };
    auto opt_value = [&] { return get(af_opt, [&] { return af_rate(net, AfMode::optimized).rate; }); };
    auto naive_value = [&] { return get(af_naive, [&] { return af_rate(net, AfMode::naive).rate; }); };
    auto relay_value = [&] { return get(best_relay, [&] { return best_relay_rate(net); }); };

    for (std::size_t k = 0; k < schemes.size(); ++k) {
        double rate = 0.0;
        switch (schemes[k]) {
        case Scheme::pdf: rate = pdf_value(); break;
        case Scheme::nnc: rate = nnc_rate(net); break;
        case Scheme::af_opt: rate = opt_value(); break;
        case Scheme::af_naive: rate = naive_value(); break;
        case Scheme::best_relay: rate = relay_value(); break;
        case Scheme::best_of: rate = std::max({pdf_value(), opt_value(), naive_value(), relay_value()}); break;
        }
        const double gap = proxy - rate;
        out[k] = gap;
        const std::string name = to_string(schemes[k]);
        if (gap < -kGapTolerance) {
            throw InvariantViolation(name + " rate exceeds the cutset proxy by " + std::to_string(-gap) + " bits");
        }
        if (schemes[k] == Scheme::pdf && gap > bounds.g2 + kGapTolerance) {
            throw InvariantViolation("pdf gap " + std::to_string(gap) + " exceeds 2 log2 N = " +
                                     std::to_string(bounds.g2));
        }
        if (schemes[k] == Scheme::nnc && gap > bounds.g1 + kGapTolerance) {
            throw InvariantViolation("nnc gap " + std::to_string(gap) + " exceeds log2(N+1) + log2 N + 1 = " +
                                     std::to_string(bounds.g1));
        }
    }
}

}  // namespace

GapSamples run_monte_carlo(const SimConfig& cfg) {
    cfg.validate();
    const std::size_t width = cfg.schemes.size();
    std::vector<double> gaps(cfg.trials * width, 0.0);
    const ChannelParams params = cfg.channel();

    unsigned threads = cfg.threads ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.trials));
    std::vector<Failure> failures(threads);
    std::atomic<std::size_t> first_failure{std::numeric_limits<std::size_t>::max()};

    auto worker = [&](unsigned id) {
        for (std::size_t trial = id; trial < cfg.trials; trial += threads) {
            if (trial > first_failure.load(std::memory_order_relaxed)) return;
            Engine rng = substream(cfg.seed, trial);
            const ScalarDiamond net = sample_channel(params, rng);
            try {
                evaluate_trial(net, cfg.schemes, std::span<double>(gaps).subspan(trial * width, width));
            } catch (const std::exception& e) {
                failures[id] = {trial, "trial " + std::to_string(trial) + ": " + e.what(), to_json(net).dump()};
                std::size_t seen = first_failure.load();
                while (trial < seen && !first_failure.compare_exchange_weak(seen, trial)) {
                }
                return;
            }
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    }

    const auto worst = std::min_element(failures.begin(), failures.end(),
                                        [](const Failure& a, const Failure& b) { return a.trial < b.trial; });
    if (worst->trial != std::numeric_limits<std::size_t>::max()) {
        throw SimulationAssertion(worst->message, worst->instance_json);
    }

    GapSamples out;
    out.bin_width = cfg.bin_width;
    for (std::size_t k = 0; k < width; ++k) {
        SchemeGaps s{cfg.schemes[k], std::vector<double>(cfg.trials), {}};
        for (std::size_t t = 0; t < cfg.trials; ++t) s.gaps[t] = gaps[t * width + k];
        s.summary = summarize(s.gaps, cfg.bin_width);
        out.schemes.push_back(std::move(s));
    }
    return out;
}

std::filesystem::path summary_path(const std::filesystem::path& csv_path) {
    auto out = csv_path;
    out.replace_extension(".summary.json");
    return out;
}

namespace {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void check_stream(const std::ios& stream, const std::filesystem::path& path, const char* action) {
    if (!stream) throw std::system_error(errno, std::generic_category(), std::string(action) + " " + path.string());
}

}  // namespace

void export_gaps(const GapSamples& samples, const std::filesystem::path& csv_path) {
    {
        errno = 0;
        std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
        check_stream(csv, csv_path, "cannot open");
        csv << "scheme,gap_bits\n";
        for (const auto& s : samples.schemes) {
            const char* name = to_string(s.scheme);
            for (double g : s.gaps) csv << name << ',' << format_double(g) << '\n';
        }
        csv.flush();
        check_stream(csv, csv_path, "cannot write");
    }

    nlohmann::ordered_json schemes = nlohmann::ordered_json::object();
    for (const auto& s : samples.schemes) {
        schemes[to_string(s.scheme)] = {
            {"count", s.summary.count},
            {"min", s.summary.min},
            {"max", s.summary.max},
            {"mean", s.summary.mean},
            {"median", s.summary.median},
            {"histogram", {{"edges", s.summary.histogram.edges}, {"counts", s.summary.histogram.counts}}},
        };
    }
    const nlohmann::ordered_json summary = {{"bin_width", samples.bin_width}, {"schemes", std::move(schemes)}};

    const auto json_path = summary_path(csv_path);
    errno = 0;
    std::ofstream out(json_path, std::ios::binary | std::ios::trunc);
    check_stream(out, json_path, "cannot open");
    out << summary.dump(2) << '\n';
    out.flush();
    check_stream(out, json_path, "cannot write");
}

GapSamples import_gaps(const std::filesystem::path& csv_path, double bin_width) {
    errno = 0;
    std::ifstream in(csv_path, std::ios::binary);
    check_stream(in, csv_path, "cannot open");
    std::string line;
    if (!std::getline(in, line) || line != "scheme,gap_bits") {
        throw ParseError(csv_path.string() + ": missing 'scheme,gap_bits' header");
    }
    GapSamples out;
    out.bin_width = bin_width;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        const auto scheme = comma == std::string::npos ? std::nullopt : parse_scheme(line.substr(0, comma));
        char* end = nullptr;
        const double gap = scheme ? std::strtod(line.c_str() + comma + 1, &end) : 0.0;
        if (!scheme || end == line.c_str() + comma + 1 || *end != '\0') {
            throw ParseError(csv_path.string() + ":" + std::to_string(line_no) + ": malformed row '" + line + "'");
        }
        auto it = std::find_if(out.schemes.begin(), out.schemes.end(),
                               [&](const SchemeGaps& s) { return s.scheme == *scheme; });
        if (it == out.schemes.end()) it = out.schemes.insert(out.schemes.end(), SchemeGaps{*scheme, {}, {}});
        it->gaps.push_back(gap);
    }
    for (auto& s : out.schemes) s.summary = summarize(s.gaps, bin_width);
    return out;
}

}  // namespace diamond
