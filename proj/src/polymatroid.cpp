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

#include "diamond/polymatroid.hpp"

#include "diamond/core.hpp"
#include "diamond/errors.hpp"
#include "diamond/lp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace diamond {

SetFunction::SetFunction(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
    if (n_ == 0) throw std::invalid_argument("SetFunction: ground set must be non-empty");
    detail::require_enumerable(n_, kMaxSetFunctionSize, "SetFunction");
    if (values_.size() != (std::size_t{1} << n_)) {
        throw std::invalid_argument("SetFunction: expected 2^" + std::to_string(n_) + " values, got " +
                                    std::to_string(values_.size()));
    }
    if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
        throw std::invalid_argument("SetFunction: values must be finite");
    }
}

RateVector::RateVector(std::vector<double> rates) : rates_(std::move(rates)) {
    for (double r : rates_) {
        if (!std::isfinite(r) || r < 0.0) throw std::invalid_argument("RateVector: rates must be finite and >= 0");
    }
}

double RateVector::sum_rate() const noexcept { return std::accumulate(rates_.begin(), rates_.end(), 0.0); }

namespace {

SetFunction log_modular(std::span<const double> gains, double scale, const char* what) {
    for (double g : gains) {
        if (!std::isfinite(g) || g < 0.0) {
            throw std::invalid_argument(std::string(what) + ": gains must be finite and >= 0");
        }
    }
    if (!(scale >= 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument(std::string(what) + ": snr must be positive and finite");
    }
    if (gains.empty()) throw std::invalid_argument(std::string(what) + ": empty gain vector");
    detail::require_enumerable(gains.size(), kMaxSetFunctionSize, what);
    return SetFunction::tabulate(gains.size(), [&](SubsetMask s) {
        double total = 0.0;
        for (std::size_t i = 0; i < gains.size(); ++i) {
            if (s >> i & 1U) total += gains[i];
        }
        return std::log2(1.0 + scale * total);
    });
}

void require_same_ground(const SetFunction& f, const SetFunction& g, const char* what) {
    if (f.ground_size() != g.ground_size()) {
        throw std::invalid_argument(std::string(what) + ": ground sets differ (" + std::to_string(f.ground_size()) +
                                    " vs " + std::to_string(g.ground_size()) + ")");
    }
}

}  // namespace

SetFunction mac_set_function(std::span<const double> gains, double snr) {
    if (!(snr > 0.0)) throw std::invalid_argument("mac_set_function: snr must be positive");
    return log_modular(gains, snr, "mac_set_function");
}

SetFunction bc_lower_set_function(std::span<const double> gains, double snr) {
    if (!(snr > 0.0)) throw std::invalid_argument("bc_lower_set_function: snr must be positive");
    return log_modular(gains, snr / static_cast<double>(gains.size()), "bc_lower_set_function");
}

const char* to_string(PolymatroidAxiom axiom) noexcept {
    switch (axiom) {
    case PolymatroidAxiom::normalized: return "normalized";
    case PolymatroidAxiom::non_decreasing: return "non-decreasing";
    case PolymatroidAxiom::submodular: return "submodular";
    }
    return "unknown";
}

std::string subset_to_string(SubsetMask s, std::size_t n) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(s >> i & 1U)) continue;
        if (!first) out += ',';
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

std::string PolymatroidViolation::describe() const {
    std::ostringstream os;
    const std::size_t width = 32 - static_cast<std::size_t>(std::countl_zero(first | second));
    os << to_string(axiom) << " axiom violated";
    if (axiom != PolymatroidAxiom::normalized) {
        os << " at S=" << subset_to_string(first, width) << ", T=" << subset_to_string(second, width);
    }
    return os.str();
}

PolymatroidCheck check_polymatroid(const SetFunction& sf, double tolerance) {
    const std::size_t n = sf.ground_size();
    if (n > kMaxPolymatroidCheckSize) {
        throw SizeError("check_polymatroid: ground set of " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(kMaxPolymatroidCheckSize));
    }
    auto fail = [](PolymatroidAxiom axiom, SubsetMask a, SubsetMask b) {
        return PolymatroidCheck{false, PolymatroidViolation{axiom, a, b}};
    };

    if (std::fabs(sf(0)) > tolerance) return fail(PolymatroidAxiom::normalized, 0, 0);

    const SubsetMask full = sf.full_set();
    for (SubsetMask s = 0; s <= full; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            const SubsetMask bit = SubsetMask{1} << i;
            if (s & bit) continue;
            if (sf(s | bit) < sf(s) - tolerance) return fail(PolymatroidAxiom::non_decreasing, s, s | bit);
        }
    }
    for (SubsetMask s = 0; s <= full; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            const SubsetMask bi = SubsetMask{1} << i;
            if (s & bi) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                const SubsetMask bj = SubsetMask{1} << j;
                if (s & bj) continue;
                if (sf(s | bi) + sf(s | bj) < sf(s | bi | bj) + sf(s) - tolerance) {
                    return fail(PolymatroidAxiom::submodular, s | bi, s | bj);
                }
            }
        }
    }
    return {};
}

IntersectionBound edmonds_max_sum(const SetFunction& f, const SetFunction& g) {
    require_same_ground(f, g, "edmonds_max_sum");
    const SubsetMask full = f.full_set();
    IntersectionBound best{f(0) + g(full), 0};
    for (SubsetMask cut = 1; cut <= full; ++cut) {
        const double value = f(cut) + g(full & ~cut);
        if (value < best.value) best = {value, cut};
    }
    return best;
}

LpRatePoint solve_max_rate_lp(const SetFunction& f, const SetFunction& g) {
    require_same_ground(f, g, "find_max_rate_point");
    const std::size_t n = f.ground_size();
    if (n > kMaxRatePointSize) {
        throw SizeError("find_max_rate_point: ground set of " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(kMaxRatePointSize));
    }
    lp::Problem problem;
    problem.c.assign(n, 1.0);
    std::vector<double> row(n);
    for (const SetFunction* sf : {&f, &g}) {
        for (SubsetMask s = 1; s <= sf->full_set(); ++s) {
            for (std::size_t i = 0; i < n; ++i) row[i] = (s >> i & 1U) ? 1.0 : 0.0;
            problem.add_row(row, (*sf)(s));
        }
    }
    const auto solution = lp::maximize(problem);
    if (solution.status != lp::Status::optimal) {
        throw InvariantViolation(std::string("find_max_rate_point: LP returned ") + lp::to_string(solution.status));
    }
    std::vector<double> rates(solution.x);
    for (double& r : rates) r = std::max(r, 0.0);
    return {RateVector(std::move(rates)), solution.objective};
}

RateVector find_max_rate_point(const SetFunction& f, const SetFunction& g) { return solve_max_rate_lp(f, g).point; }

bool membership(const SetFunction& sf, const RateVector& r, double tolerance) {
    const std::size_t n = sf.ground_size();
    if (r.size() != n) {
        throw std::invalid_argument("membership: rate vector has " + std::to_string(r.size()) +
                                    " entries for a ground set of " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (r[i] < -tolerance) return false;
    }
    for (SubsetMask s = 1; s <= sf.full_set(); ++s) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (s >> i & 1U) total += r[i];
        }
        if (total > sf(s) + tolerance) return false;
    }
    return true;
}

}  // namespace diamond
