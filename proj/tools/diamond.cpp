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

// diamond: capacity bounds and relaying-scheme rates for the N-relay Gaussian
// diamond network.
//
//   diamond bounds <instance.json> [--cross-check]
//   diamond simulate --relays N --snr X [X...] --dist rayleigh|shadow ...
//   diamond check [--suite NAME] [--trials T] [--n N] [--seed K]
//
// Exit codes: 0 success, 1 check failure, 2 input error, 3 internal invariant
// violation, 4 simulation assertion.

#include "diamond/checks.hpp"
#include "diamond/core.hpp"
#include "diamond/errors.hpp"
#include "diamond/instance_io.hpp"
#include "diamond/mimo.hpp"
#include "diamond/polymatroid.hpp"
#include "diamond/sim.hpp"
#include "diamond/strategies.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>

namespace {

using namespace diamond;
using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2, kInvariantViolation = 3, kSimAssertion = 4 };

constexpr double kCrossCheckTolerance = 1e-12;

json rate_point_json(const SetFunction& f, const SetFunction& g) {
    if (f.ground_size() > kMaxRatePointSize) return nullptr;
    const auto point = find_max_rate_point(f, g);
    if (!membership(f, point) || !membership(g, point)) {
        throw InvariantViolation("recovered PDF rate point is outside P(f) cap P(g)");
    }
    return json(std::vector<double>(point.rates().begin(), point.rates().end()));
}

bool gaps_within(const json& gaps, double g1, double g2) {
    for (const auto& [name, gap] : gaps.items()) {
        if (gap.get<double>() < -kGapTolerance) return false;
    }
    return gaps["nnc"].get<double>() <= g1 + kGapTolerance && gaps["pdf"].get<double>() <= g2 + kGapTolerance;
}

json scalar_bounds(const ScalarDiamond& net) {
    const double upper = cutset_proxy(net);
    const double nnc = nnc_rate(net);
    const auto f = mac_set_function(net.mac_power_gains(), net.snr());
    const auto g = bc_lower_set_function(net.bc_power_gains(), net.snr());
    const double pdf = edmonds_max_sum(f, g).value;
    const double af_opt = af_rate(net, AfMode::optimized).rate;
    const double af_naive = af_rate(net, AfMode::naive).rate;
    const double relay = best_relay_rate(net);
    const double best = std::max({pdf, af_opt, af_naive, relay});
    const auto bounds = gap_constants_scalar(net.relays());

    json out;
    out["kind"] = "scalar";
    out["relays"] = net.relays();
    out["snr"] = net.snr();
    out["cutset_proxy"] = upper;
    out["nnc"] = nnc;
    out["pdf"] = pdf;
    out["pdf_rate_point"] = rate_point_json(f, g);
    out["af_opt"] = af_opt;
    out["af_naive"] = af_naive;
    out["best_relay"] = relay;
    out["best_of"] = best;
    out["gaps"] = {{"nnc", upper - nnc},           {"pdf", upper - pdf},
                   {"af_opt", upper - af_opt},     {"af_naive", upper - af_naive},
                   {"best_relay", upper - relay},  {"best_of", upper - best}};
    out["theorem_bounds"] = {{"g1", bounds.g1}, {"g2", bounds.g2}};
    out["theorems_satisfied"] = gaps_within(out["gaps"], bounds.g1, bounds.g2);
    return out;
}

json mimo_bounds(const MimoDiamond& net) {
    const double upper = mimo_cutset_proxy(net);
    const double nnc = mimo_nnc_rate(net);
    const auto f = mimo_mac_set_function(net);
    const auto g = mimo_bc_lower_set_function(net);
    const double pdf = edmonds_max_sum(f, g).value;
    const auto bounds = mimo_gap_constants(net.source_antennas(), net.destination_antennas(), net.antennas());

    json out;
    out["kind"] = "mimo";
    out["relays"] = net.relays();
    out["snr"] = net.snr();
    out["cutset_proxy"] = upper;
    out["nnc"] = nnc;
    out["pdf"] = pdf;
    out["pdf_rate_point"] = rate_point_json(f, g);
    out["gaps"] = {{"nnc", upper - nnc}, {"pdf", upper - pdf}};
    out["theorem_bounds"] = {{"g1", bounds.g1}, {"g2", bounds.g2}};
    out["theorems_satisfied"] = gaps_within(out["gaps"], bounds.g1, bounds.g2);
    return out;
}

// Evaluates NNC and PDF along both the scalar and the matrix code paths.
json cross_check(const Instance& instance) {
    std::optional<ScalarDiamond> scalar;
    if (const auto* s = std::get_if<ScalarDiamond>(&instance)) {
        scalar = *s;
    } else {
        const auto& m = std::get<MimoDiamond>(instance);
        if (!m.all_single_antenna()) return {{"applicable", false}};
        std::vector<Complex> h_bc;
        std::vector<Complex> h_mac;
        for (std::size_t i = 0; i < m.relays(); ++i) {
            h_bc.push_back(m.h_bc(i)(0, 0));
            h_mac.push_back(m.h_mac(i)(0, 0));
        }
        scalar.emplace(std::move(h_bc), std::move(h_mac), m.snr());
    }
    const auto mimo = MimoDiamond::from_scalar(*scalar);
    const double nnc_diff = std::fabs(nnc_rate(*scalar) - mimo_nnc_rate(mimo));
    const double pdf_diff = std::fabs(pdf_rate(*scalar) - mimo_pdf_rate(mimo));
    return {{"applicable", true},
            {"nnc_abs_diff", nnc_diff},
            {"pdf_abs_diff", pdf_diff},
            {"tolerance", kCrossCheckTolerance},
            {"passed", nnc_diff <= kCrossCheckTolerance && pdf_diff <= kCrossCheckTolerance}};
}

int cmd_bounds(const std::string& path, bool with_cross_check) {
    const Instance instance = load_instance(path);
    json out = std::visit([](const auto& net) {
        if constexpr (std::is_same_v<std::decay_t<decltype(net)>, ScalarDiamond>) {
            return scalar_bounds(net);
        } else {
            return mimo_bounds(net);
        }
    }, instance);
    bool ok = out["theorems_satisfied"].get<bool>();
    if (with_cross_check) {
        out["cross_check"] = cross_check(instance);
        if (out["cross_check"]["applicable"].get<bool>()) ok = ok && out["cross_check"]["passed"].get<bool>();
    }
    std::cout << out.dump(2) << '\n';
    if (!ok) {
        std::cerr << "error: invariant violated (theorem bound or cross-check); this indicates a bug\n";
        return kInvariantViolation;
    }
    return kOk;
}

struct SimulateArgs {
    SimConfig cfg;
    std::vector<double> snrs{1.0, 1000.0};
    std::string dist = "rayleigh";
    std::vector<std::string> schemes;
    std::string out;
};

std::filesystem::path output_for(const std::filesystem::path& base, double snr, bool several) {
    if (!several) return base;
    char tag[64];
    std::snprintf(tag, sizeof tag, "_snr%g", snr);
    auto name = base.stem().string() + tag + base.extension().string();
    return base.parent_path() / name;
}

int cmd_simulate(SimulateArgs args) {
    const auto model = parse_fading_model(args.dist);
    if (!model) throw std::invalid_argument("unknown --dist '" + args.dist + "' (rayleigh|shadow)");
    args.cfg.dist = *model;
    if (!args.schemes.empty()) {
        args.cfg.schemes.clear();
        for (const auto& name : args.schemes) {
            const auto scheme = parse_scheme(name);
            if (!scheme) throw std::invalid_argument("unknown scheme '" + name + "'");
            args.cfg.schemes.push_back(*scheme);
        }
    }
    for (double snr : args.snrs) {
        args.cfg.snr = snr;
        args.cfg.validate();
    }

    for (double snr : args.snrs) {
        args.cfg.snr = snr;
        const auto samples = run_monte_carlo(args.cfg);
        std::printf("# N=%zu snr=%g dist=%s trials=%zu seed=%llu\n", args.cfg.relays, snr, to_string(args.cfg.dist),
                    args.cfg.trials, static_cast<unsigned long long>(args.cfg.seed));
        std::printf("%-12s %12s %12s %12s %12s\n", "scheme", "min", "median", "mean", "max");
        for (const auto& s : samples.schemes) {
            std::printf("%-12s %12.6f %12.6f %12.6f %12.6f\n", to_string(s.scheme), s.summary.min, s.summary.median,
                        s.summary.mean, s.summary.max);
        }
        if (!args.out.empty()) {
            const auto path = output_for(args.out, snr, args.snrs.size() > 1);
            export_gaps(samples, path);
            std::printf("# wrote %s and %s\n", path.string().c_str(), summary_path(path).string().c_str());
        }
    }
    return kOk;
}

int cmd_check(const std::string& suite, const SuiteOptions& options) {
    std::vector<std::string> names;
    if (suite.empty() || suite == "all") {
        names = suite_names();
    } else {
        names.push_back(suite);
    }
    bool all_passed = true;
    for (const auto& name : names) {
        const auto report = run_suite(name, options);
        std::printf("%s %-14s %8zu cases  %s\n", report.passed ? "PASS" : "FAIL", report.name.c_str(), report.cases,
                    report.detail.c_str());
        if (!report.passed) {
            all_passed = false;
            if (!report.counterexample.empty()) std::printf("  counterexample: %s\n", report.counterexample.c_str());
        }
    }
    return all_passed ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacity bounds and achievable rates for the N-relay Gaussian diamond network"};
    app.require_subcommand(1);

    auto* bounds = app.add_subcommand("bounds", "Evaluate bounds and scheme rates for one instance file");
    std::string instance_path;
    bool with_cross_check = false;
    bounds->add_option("instance", instance_path, "Instance JSON file")->required();
    bounds->add_flag("--cross-check", with_cross_check, "Compare scalar and MIMO code paths (single-antenna only)");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo gap histograms over random fading");
    SimulateArgs sim;
    simulate->add_option("--relays", sim.cfg.relays, "Number of relays")->capture_default_str();
    simulate->add_option("--snr", sim.snrs, "Linear SNR value(s); several values write one output per SNR")
        ->capture_default_str();
    simulate->add_option("--dist", sim.dist, "Fading model: rayleigh|shadow")->capture_default_str();
    simulate->add_option("--shadow-std", sim.cfg.shadow_std_db, "Shadowing standard deviation in dB")
        ->capture_default_str();
    simulate->add_option("--trials", sim.cfg.trials, "Channel draws per SNR")->capture_default_str();
    simulate->add_option("--seed", sim.cfg.seed, "RNG seed")->capture_default_str();
    simulate->add_option("--out", sim.out, "CSV output path (summary JSON is written alongside)");
    simulate->add_option("--bin-width", sim.cfg.bin_width, "Histogram bin width in bits")->capture_default_str();
    simulate->add_option("--threads", sim.cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();
    simulate->add_option("--schemes", sim.schemes, "Comma-separated: pdf,nnc,af_opt,af_naive,best_relay,best_of")
        ->delimiter(',');

    auto* check = app.add_subcommand("check", "Run the randomized property suites");
    std::string suite;
    SuiteOptions check_options;
    std::size_t check_trials = 0;
    std::size_t check_n = 0;
    check->add_option("--suite", suite, "Suite name or 'all'");
    check->add_option("--trials", check_trials, "Override the suite's instance count");
    check->add_option("--n", check_n, "Pin the relay count / ground-set size");
    check->add_option("--seed", check_options.seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*bounds) return cmd_bounds(instance_path, with_cross_check);
        if (*simulate) return cmd_simulate(std::move(sim));
        if (check_trials > 0) check_options.trials = check_trials;
        if (check_n > 0) check_options.n = check_n;
        return cmd_check(suite, check_options);
    } catch (const SimulationAssertion& e) {
        std::cerr << "simulation assertion: " << e.what() << "\ninstance: " << e.instance_json() << '\n';
        return kSimAssertion;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariantViolation;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::length_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::system_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kInputError;
    }
}
