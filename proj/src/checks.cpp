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

#include "diamond/checks.hpp"

#include "diamond/core.hpp"
#include "diamond/ensembles.hpp"
#include "diamond/instance_io.hpp"
#include "diamond/mimo.hpp"
#include "diamond/polymatroid.hpp"
#include "diamond/sim.hpp"
#include "diamond/strategies.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

namespace diamond {

namespace {

// Distinct substream families per suite so suites never share draws.
enum : std::uint64_t {
    kPolymatroidStream = 1ULL << 40,
    kEdmondsStream = 2ULL << 40,
    kLemmaStream = 3ULL << 40,
    kRemarksStream = 4ULL << 40,
    kReductionStream = 5ULL << 40,
    kTheoremsStream = 6ULL << 40,
};

std::string fmt(const char* format, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, format, a, b);
    return buf;
}

SuiteReport failure(SuiteReport report, std::string what, const nlohmann::json& instance) {
    report.passed = false;
    report.detail = std::move(what);
    report.counterexample = instance.dump();
    return report;
}

// Scalar instance with a mix of fading models so that gains range over
// several orders of magnitude.
ScalarDiamond mixed_scalar_instance(Engine& rng, std::size_t relays, std::size_t trial) {
    ChannelParams params;
    params.relays = relays;
    params.dist = trial % 2 ? FadingModel::shadow : FadingModel::rayleigh;
    params.shadow_std_db = 7.0;
    switch (trial % 3) {
    case 0: params.snr = 1.0; break;
    case 1: params.snr = 1000.0; break;
    default: params.snr = log_uniform(rng, -2.0, 4.0); break;
    }
    return sample_channel(params, rng);
}

SuiteReport polymatroid_suite(const SuiteOptions& opt) {
    SuiteReport report;
    report.name = "polymatroid";
    const std::size_t per_size = opt.trials.value_or(25);
    const std::size_t lo = opt.n.value_or(1);
    const std::size_t hi = opt.n.value_or(8);
    if (hi > kMaxPolymatroidCheckSize) throw std::invalid_argument("polymatroid suite: n must be <= 12");
    for (std::size_t n = lo; n <= hi; ++n) {
        for (std::size_t t = 0; t < per_size; ++t) {
            Engine rng = substream(opt.seed, kPolymatroidStream + n * 100000 + t);
            const ScalarDiamond net = mixed_scalar_instance(rng, n, t);
            const auto mimo = random_mimo_diamond(rng, MimoEnsemble{n, n, 3});
            const std::pair<const char*, SetFunction> functions[] = {
                {"scalar MAC f", mac_set_function(net.mac_power_gains(), net.snr())},
                {"scalar BC g", bc_lower_set_function(net.bc_power_gains(), net.snr())},
                {"MIMO MAC f", mimo_mac_set_function(mimo)},
                {"MIMO BC g", mimo_bc_lower_set_function(mimo)},
            };
            for (const auto& [label, sf] : functions) {
                const auto check = check_polymatroid(sf);
                ++report.cases;
                if (!check) {
                    const bool scalar = label[0] == 's';
                    return failure(report, std::string(label) + ": " + check.violation->describe(),
                                   scalar ? to_json(net) : to_json(mimo));
                }
            }
        }
    }
    report.detail = "all set functions normalized, non-decreasing, submodular";
    return report;
}

SuiteReport edmonds_suite(const SuiteOptions& opt) {
    SuiteReport report;
    report.name = "edmonds";
    const std::size_t per_size = opt.trials.value_or(200);
    const std::size_t lo = opt.n.value_or(2);
    const std::size_t hi = opt.n.value_or(8);
    if (lo < 1 || hi > kMaxRatePointSize) throw std::invalid_argument("edmonds suite: n must be in [1, 10]");
    double worst = 0.0;
    for (std::size_t n = lo; n <= hi; ++n) {
        for (std::size_t t = 0; t < per_size; ++t) {
            Engine rng = substream(opt.seed, kEdmondsStream + n * 100000 + t);
            const ScalarDiamond net = mixed_scalar_instance(rng, n, t);
            const auto f = mac_set_function(net.mac_power_gains(), net.snr());
            const auto g = bc_lower_set_function(net.bc_power_gains(), net.snr());
            const double combinatorial = edmonds_max_sum(f, g).value;
            const auto lp = solve_max_rate_lp(f, g);
            const double err = std::max(std::fabs(lp.objective - combinatorial),
                                        std::fabs(lp.point.sum_rate() - combinatorial));
            worst = std::max(worst, err);
            ++report.cases;
            if (err > kLpAgreementTolerance) {
                return failure(report, fmt("LP optimum %.12g != min-cut value %.12g", lp.objective, combinatorial),
                               to_json(net));
            }
            if (!membership(f, lp.point) || !membership(g, lp.point)) {
                return failure(report, "LP rate point lies outside P(f) cap P(g)", to_json(net));
            }
        }
    }
    report.detail = fmt("max |LP - min-cut| = %.3g bits", worst);
    return report;
}

SuiteReport lemma1_suite(const SuiteOptions& opt) {
    SuiteReport report;
    report.name = "lemma1";
    const std::size_t trials = opt.trials.value_or(10000);
    double min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        Engine rng = substream(opt.seed, kLemmaStream + t);
        const std::size_t n_t = t % 4 + 1;
        const std::size_t n_r = t / 4 % 4 + 1;
        const ComplexMatrix h = random_complex_matrix(static_cast<Eigen::Index>(n_r), static_cast<Eigen::Index>(n_t), rng);
        const double power = log_uniform(rng, -2.0, 4.0);
        const auto modes = squared_singular_values(h);
        const double c_wf = waterfill(modes, static_cast<double>(n_t) * power).capacity;
        double c_ep = 0.0;
        for (double lambda : modes) c_ep += std::log2(1.0 + power * lambda);
        const double slack = lemma1_bound(n_t, n_r) - (c_wf - c_ep);
        min_slack = std::min(min_slack, slack);
        ++report.cases;
        if (slack < -1e-9 || c_wf < c_ep - 1e-9) {
            nlohmann::json dump = {{"n_t", n_t}, {"n_r", n_r}, {"power", power}, {"modes", modes}};
            return failure(report, fmt("C_wf - C_ep = %.12g exceeds bound by %.3g", c_wf - c_ep, -slack), dump);
        }
    }
    report.detail = fmt("min slack to bound = %.4g bits", min_slack);
    return report;
}

SuiteReport remarks_suite(const SuiteOptions& opt) {
    SuiteReport report;
    report.name = "remarks";
    const std::size_t trials = opt.trials.value_or(1000);
    MimoEnsemble ensemble;
    if (opt.n) ensemble.min_relays = ensemble.max_relays = *opt.n;
    double min_slack1 = std::numeric_limits<double>::infinity();
    double min_slack2 = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        Engine rng = substream(opt.seed, kRemarksStream + t);
        const auto net = random_mimo_diamond(rng, ensemble);
        const auto gaps = mimo_gap_constants(net.source_antennas(), net.destination_antennas(), net.antennas());
        const double upper = mimo_cutset_proxy(net);
        const double nnc_gap = upper - mimo_nnc_rate(net);
        const double pdf_gap = upper - mimo_pdf_rate(net);
        min_slack1 = std::min(min_slack1, gaps.g1 - nnc_gap);
        min_slack2 = std::min(min_slack2, gaps.g2 - pdf_gap);
        ++report.cases;
        if (nnc_gap > gaps.g1 + kGapTolerance || pdf_gap > gaps.g2 + kGapTolerance || nnc_gap < -kGapTolerance ||
            pdf_gap < -kGapTolerance) {
            return failure(report, fmt("gaps nnc=%.6g pdf=%.6g", nnc_gap, pdf_gap) + fmt(" vs G1=%.6g G2=%.6g", gaps.g1, gaps.g2),
                           to_json(net));
        }
    }
    report.detail = fmt("min slack: G1 %.4g bits, G2 %.4g bits", min_slack1, min_slack2);
    return report;
}

SuiteReport reduction_suite(const SuiteOptions& opt) {
    SuiteReport report;
    report.name = "reduction";
    const std::size_t trials = opt.trials.value_or(100);
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Engine rng = substream(opt.seed, kReductionStream + t);
        const std::size_t n = opt.n.value_or(t % 8 + 1);
        const ScalarDiamond net = mixed_scalar_instance(rng, n, t);
        const auto mimo = MimoDiamond::from_scalar(net);

        // 1x1 hand reduction of the MIMO proxy: independent MAC inputs and an
        // additive log2(N) correction.
        const auto bc = net.bc_power_gains();
        const auto mac = net.mac_power_gains();
        double reduced = std::numeric_limits<double>::infinity();
        for (SubsetMask cut = 0; cut < (SubsetMask{1} << n); ++cut) {
            double simo = 0.0;
            double mac_sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (cut >> i & 1U) {
                    mac_sum += mac[i];
                } else {
                    simo += bc[i];
                }
            }
            reduced = std::min(reduced, std::log2(1.0 + net.snr() * simo) + std::log2(1.0 + net.snr() * mac_sum));
        }
        reduced += std::log2(static_cast<double>(n));

        const double err = std::max({std::fabs(mimo_nnc_rate(mimo) - nnc_rate(net)),
                                     std::fabs(mimo_pdf_rate(mimo) - pdf_rate(net)),
                                     std::fabs(mimo_cutset_proxy(mimo) - reduced)});
        worst = std::max(worst, err);
        ++report.cases;
        if (err > 1e-12) return failure(report, fmt("MIMO/scalar mismatch of %.3g bits", err), to_json(net));
    }
    report.detail = fmt("max |MIMO - scalar| = %.3g bits", worst);
    return report;
}

SuiteReport theorems_suite(const SuiteOptions& opt) {
    SuiteReport report;
    report.name = "theorems";
    const std::size_t trials = opt.trials.value_or(1000);
    const std::size_t n = opt.n.value_or(10);
    const auto bounds = gap_constants_scalar(n);
    double worst1 = 0.0;
    double worst2 = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Engine rng = substream(opt.seed, kTheoremsStream + t);
        const ScalarDiamond net = mixed_scalar_instance(rng, n, t);
        const double upper = cutset_proxy(net);
        const double nnc_gap = upper - nnc_rate(net);
        const double pdf_gap = upper - pdf_rate(net);
        const double naive = af_rate(net, AfMode::naive).rate;
        const double optimized = af_rate(net, AfMode::optimized).rate;
        const double relay = best_relay_rate(net);
        worst1 = std::max(worst1, nnc_gap);
        worst2 = std::max(worst2, pdf_gap);
        ++report.cases;
        std::string problem;
        if (nnc_gap < -kGapTolerance || pdf_gap < -kGapTolerance) problem = "rate exceeds cutset proxy";
        if (nnc_gap > bounds.g1 + kGapTolerance) problem = fmt("NNC gap %.6g > G1 %.6g", nnc_gap, bounds.g1);
        if (pdf_gap > bounds.g2 + kGapTolerance) problem = fmt("PDF gap %.6g > G2 %.6g", pdf_gap, bounds.g2);
        if (std::max({naive, optimized, relay}) > upper + kGapTolerance) problem = "strategy exceeds cutset proxy";
        if (optimized < naive - kGapTolerance) problem = fmt("optimized AF %.6g < naive AF %.6g", optimized, naive);
        if (!problem.empty()) return failure(report, problem, to_json(net));
    }
    report.detail = fmt("worst gaps: NNC %.4g bits, PDF %.4g bits", worst1, worst2);
    return report;
}

SuiteReport superposition_suite(const SuiteOptions&) {
    SuiteReport report;
    report.name = "superposition";
    const double a = std::ldexp(1.0, 20);
    const double log_a = 20.0;
    const std::vector<double> gains{a * a * a, a * a, a};
    const auto first = bc_superposition_rates(gains, 1.0, PowerSplit({1 / (a * a), 1 / a, 1 - 1 / a - 1 / (a * a)}));
    const auto second = bc_superposition_rates(gains, 1.0, PowerSplit({1 / (a * a), 2 / a, 1 - 2 / a - 1 / (a * a)}));
    const double err1 = std::max({std::fabs(first[0] - log_a), std::fabs(first[1] - (log_a - 1)),
                                  std::fabs(first[2] - (log_a - 1))});
    const double err2 = std::fabs(second[2] - (log_a - std::log2(3.0)));
    report.cases = 2;
    if (err1 > 1e-4 || err2 > 1e-3) {
        report.passed = false;
        report.detail = fmt("errors %.3g (first split), %.3g (second split)", err1, err2);
        return report;
    }
    report.detail = fmt("errors %.3g, %.3g bits", err1, err2);
    return report;
}

const std::map<std::string, std::function<SuiteReport(const SuiteOptions&)>>& registry() {
    static const std::map<std::string, std::function<SuiteReport(const SuiteOptions&)>> suites = {
        {"polymatroid", polymatroid_suite}, {"edmonds", edmonds_suite},     {"lemma1", lemma1_suite},
        {"remarks", remarks_suite},         {"reduction", reduction_suite}, {"theorems", theorems_suite},
        {"superposition", superposition_suite},
    };
    return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"polymatroid", "edmonds",  "lemma1",       "remarks",
                                                   "reduction",   "theorems", "superposition"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
    const auto it = registry().find(name);
    if (it == registry().end()) throw std::invalid_argument("unknown check suite '" + name + "'");
    return it->second(options);
}

}  // namespace diamond
