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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "diamond/checks.hpp"
#include "diamond/core.hpp"
#include "diamond/errors.hpp"
#include "diamond/sim.hpp"
#include "diamond/strategies.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

using namespace diamond;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

struct SweepResult {
    std::string label;
    bool ok = true;
    std::string error;
    double seconds = 0.0;
    GapSamples samples;
};

SweepResult sweep(FadingModel dist, double snr, std::uint64_t seed) {
    SweepResult r;
    r.label = std::string(to_string(dist)) + "/snr" + fmt("%g", snr);
    SimConfig cfg;
    cfg.relays = 10;
    cfg.snr = snr;
    cfg.dist = dist;
    cfg.shadow_std_db = 7.0;
    cfg.trials = 10000;
    cfg.seed = seed;
    cfg.schemes = {Scheme::pdf, Scheme::nnc, Scheme::af_opt};
    const auto start = std::chrono::steady_clock::now();
    try {
        r.samples = run_monte_carlo(cfg);
    } catch (const SimulationAssertion& e) {
        r.ok = false;
        r.error = std::string(e.what()) + " instance=" + e.instance_json();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

double max_gap(const SweepResult& r, Scheme s) {
    const auto* g = r.samples.find(s);
    return g ? g->summary.max : NAN;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void suite_criterion(int id, const std::string& what, const std::string& suite, SuiteOptions options) {
    const auto rep = run_suite(suite, options);
    std::string detail = std::to_string(rep.cases) + " cases, " + rep.detail;
    if (!rep.passed) detail += " counterexample=" + rep.counterexample;
    report(id, rep.passed, what, detail);
}

}  // namespace

int main() {
    const double g2 = gap_constants_scalar(10).g2;
    const double g1 = gap_constants_scalar(10).g1;

    std::vector<SweepResult> sweeps;
    std::uint64_t seed = 2024;
    for (auto dist : {FadingModel::rayleigh, FadingModel::shadow}) {
        for (double snr : {1.0, 1000.0}) sweeps.push_back(sweep(dist, snr, seed++));
    }

    {
        bool ok = true;
        std::ostringstream detail;
        for (const auto& s : sweeps) {
            const double worst = max_gap(s, Scheme::pdf);
            ok = ok && s.ok && worst <= g2 + 1e-9 && s.seconds < 30.0;
            detail << s.label << " max " << fmt("%.4f", worst) << " in " << fmt("%.1fs", s.seconds) << "; ";
            if (!s.ok) detail << s.error << "; ";
        }
        detail << "bound " << fmt("%.4f", g2);
        report(1, ok, "PDF gap <= 2 log2 N on 4 x 10^4 samples", detail.str());
    }
    {
        bool ok = true;
        std::ostringstream detail;
        for (const auto& s : sweeps) {
            const double worst = max_gap(s, Scheme::nnc);
            ok = ok && s.ok && worst <= g1 + 1e-9;
            detail << s.label << " max " << fmt("%.4f", worst) << "; ";
        }
        detail << "bound " << fmt("%.4f", g1);
        report(2, ok, "NNC gap <= log2(N+1) + log2 N + 1 on 4 x 10^4 samples", detail.str());
    }

    suite_criterion(3, "intersection LP equals min-cut, 200 instances per n in 2..8", "edmonds", {});
    {
        SuiteOptions o;
        o.trials = 10000;
        suite_criterion(4, "waterfilling gain within the antenna bound", "lemma1", o);
    }
    {
        SuiteOptions o;
        o.trials = 1000;
        suite_criterion(5, "MIMO NNC and PDF gaps within G1 and G2", "remarks", o);
    }
    {
        const double a = std::ldexp(1.0, 20);
        const std::vector<double> gains{a * a * a, a * a, a};
        const double la = std::log2(a);
        const auto first = bc_superposition_rates(gains, 1.0, PowerSplit({1 / (a * a), 1 / a, 1 - 1 / a - 1 / (a * a)}));
        const auto second =
            bc_superposition_rates(gains, 1.0, PowerSplit({1 / (a * a), 2 / a, 1 - 2 / a - 1 / (a * a)}));
        const double e1 = std::max({std::fabs(first[0] - la), std::fabs(first[1] - (la - 1)), std::fabs(first[2] - (la - 1))});
        const double e2 = std::fabs(second[2] - (la - std::log2(3.0)));
        report(6, e1 <= 1e-4 && e2 <= 1e-3, "superposition split example",
               fmt("first split max error %.3g bits, growing split R3 error %.3g bits", e1, e2));
    }
    {
        const auto& ray = sweeps[1];
        const auto& shadow = sweeps[3];
        const auto* pdf = ray.samples.find(Scheme::pdf);
        const double median = pdf ? pdf->summary.median : NAN;
        const double lo = std::log2(10.0) - 1.0;
        const double hi = std::log2(10.0) + 1.0;
        const double af_max = max_gap(shadow, Scheme::af_opt);
        const double pdf_max = max_gap(shadow, Scheme::pdf);
        const bool ok = median >= lo && median <= hi && af_max > pdf_max;
        report(7, ok, "Rayleigh median PDF gap near log2 N, shadowed AF worst case above PDF",
               fmt("median %.4f in [%.4f, ", median, lo, hi) + fmt("%.4f]; AF max %.4f vs PDF max %.4f", hi, af_max, pdf_max));
    }
    {
        const fs::path dir = fs::temp_directory_path() / "diamond_acceptance";
        fs::remove_all(dir);
        fs::create_directories(dir);
        const std::string common = std::string(DIAMOND_CLI_PATH) +
                                   " simulate --relays 10 --snr 1000 --dist rayleigh --trials 10000 --seed 42 --out ";
        bool ok = true;
        std::string detail;
        const std::pair<const char*, int> runs[] = {{"t1a.csv", 1}, {"t1b.csv", 1}, {"t4.csv", 4}};
        for (const auto& [name, threads] : runs) {
            const std::string cmd =
                common + (dir / name).string() + " --threads " + std::to_string(threads) + " >/dev/null 2>&1";
            const int status = std::system(cmd.c_str());
            if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
                ok = false;
                detail += std::string(name) + " exited abnormally; ";
            }
        }
        const std::string base = slurp(dir / "t1a.csv");
        ok = ok && !base.empty() && base == slurp(dir / "t1b.csv") && base == slurp(dir / "t4.csv");
        detail += std::to_string(base.size()) + " byte CSV, rerun and 4-thread run " + (ok ? "identical" : "differ");
        report(8, ok, "simulate output is byte-identical across runs and thread counts", detail);
        fs::remove_all(dir);
    }
    {
        SuiteOptions o;
        o.trials = 100;
        suite_criterion(9, "single-antenna MIMO matches scalar within 1e-12", "reduction", o);
    }
    suite_criterion(10, "set functions satisfy the polymatroid axioms for n <= 8", "polymatroid", {});

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
