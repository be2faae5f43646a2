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

// Set functions on the ground set {1..n}, stored eagerly and indexed by
// subset bitmask (bit i-1 <-> element i), together with the polymatroid
// machinery used by partial decode-and-forward: axiom checking, the
// polymatroid intersection max-sum value, rate-point recovery and
// membership tests.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace diamond {

using SubsetMask = std::uint32_t;

// 2^20 doubles = 8 MiB.
inline constexpr std::size_t kMaxSetFunctionSize = 20;
inline constexpr std::size_t kMaxPolymatroidCheckSize = 12;
inline constexpr std::size_t kMaxRatePointSize = 10;

inline constexpr double kStructuralTolerance = 1e-12;
inline constexpr double kMembershipTolerance = 1e-9;
inline constexpr double kLpAgreementTolerance = 1e-8;

class SetFunction {
public:
    // values.size() must be 2^n with 1 <= n <= kMaxSetFunctionSize and all
    // entries finite.
    SetFunction(std::size_t n, std::vector<double> values);

    // Evaluates fn(mask) for every subset mask.
    template <class Fn>
    static SetFunction tabulate(std::size_t n, Fn&& fn);

    std::size_t ground_size() const noexcept { return n_; }
    SubsetMask full_set() const noexcept { return static_cast<SubsetMask>((std::size_t{1} << n_) - 1); }
    double operator()(SubsetMask s) const { return values_[s]; }
    std::span<const double> values() const noexcept { return values_; }

private:
    std::size_t n_;
    std::vector<double> values_;
};

class RateVector {
public:
    RateVector() = default;
    // Throws std::invalid_argument on negative or non-finite entries.
    explicit RateVector(std::vector<double> rates);

    std::size_t size() const noexcept { return rates_.size(); }
    double operator[](std::size_t i) const { return rates_[i]; }
    std::span<const double> rates() const noexcept { return rates_; }
    double sum_rate() const noexcept;

private:
    std::vector<double> rates_;
};

// f(S) = log2(1 + snr * sum_{i in S} gains[i]); gains are |h_id|^2.
SetFunction mac_set_function(std::span<const double> gains, double snr);

// g(S) = log2(1 + (snr/n) * sum_{i in S} gains[i]); gains are |h_is|^2. This
// is the dual-MAC region of the broadcast hop with power P/n per relay, an
// inner bound on the broadcast capacity region.
SetFunction bc_lower_set_function(std::span<const double> gains, double snr);

enum class PolymatroidAxiom { normalized, non_decreasing, submodular };

const char* to_string(PolymatroidAxiom axiom) noexcept;

struct PolymatroidViolation {
    PolymatroidAxiom axiom;
    // normalized: both empty. non_decreasing: first = S subset of second = T
    // with sf(S) > sf(T). submodular: sf(first) + sf(second) <
    // sf(first | second) + sf(first & second).
    SubsetMask first = 0;
    SubsetMask second = 0;
    std::string describe() const;
};

struct PolymatroidCheck {
    bool ok = true;
    std::optional<PolymatroidViolation> violation;
    explicit operator bool() const noexcept { return ok; }
};

// Exhaustive check of the three polymatroid axioms within `tolerance`.
// Submodularity is checked in its local form
//   sf(S+i) + sf(S+j) >= sf(S+i+j) + sf(S)   for all S, i != j not in S,
// which is equivalent to the lattice form and costs O(2^n n^2).
// Throws SizeError for n > kMaxPolymatroidCheckSize.
PolymatroidCheck check_polymatroid(const SetFunction& sf, double tolerance = kStructuralTolerance);

struct IntersectionBound {
    double value = 0.0;
    // Minimizing L; ties go to the smallest bitmask.
    SubsetMask argmin = 0;
};

// max{ sum r : r in P(f) cap P(g) } = min over L of f(L) + g(complement L).
// Assumes both arguments are polymatroids (not re-verified). Throws
// std::invalid_argument on ground-set mismatch.
IntersectionBound edmonds_max_sum(const SetFunction& f, const SetFunction& g);

// A rate vector in P(f) cap P(g) attaining the maximum sum, recovered by a
// dense LP over all 2(2^n - 1) subset constraints. Throws SizeError for
// n > kMaxRatePointSize and InvariantViolation if the LP fails.
RateVector find_max_rate_point(const SetFunction& f, const SetFunction& g);

// Optimum of the LP behind find_max_rate_point, returned with the point.
struct LpRatePoint {
    RateVector point;
    double objective = 0.0;
};
LpRatePoint solve_max_rate_lp(const SetFunction& f, const SetFunction& g);

// r in P(sf): every r_i >= 0 and sum_{i in S} r_i <= sf(S) for all S, within
// `tolerance`. Throws std::invalid_argument on dimension mismatch.
bool membership(const SetFunction& sf, const RateVector& r, double tolerance = kMembershipTolerance);

// Human-readable subset, e.g. "{1,3}".
std::string subset_to_string(SubsetMask s, std::size_t n);

template <class Fn>
SetFunction SetFunction::tabulate(std::size_t n, Fn&& fn) {
    if (n == 0 || n > kMaxSetFunctionSize) {
        // Delegates the error message to the constructor.
        return SetFunction(n, {});
    }
    std::vector<double> values(std::size_t{1} << n);
    for (std::size_t s = 0; s < values.size(); ++s) {
        values[s] = fn(static_cast<SubsetMask>(s));
    }
    return SetFunction(n, std::move(values));
}

}  // namespace diamond
