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

// Small dense linear programs:  maximize c'x  subject to  Ax <= b, x >= 0.
//
// Two-phase tableau simplex with Bland's anticycling rule for both the
// entering and the leaving variable. Polymatroid constraint systems are
// heavily degenerate (many subset constraints are tight at every vertex), so
// termination matters more than pivot count here.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace diamond::lp {

enum class Status { optimal, infeasible, unbounded };

const char* to_string(Status status) noexcept;

struct Problem {
    // Row-major, rows() x cols().
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;

    std::size_t rows() const noexcept { return b.size(); }
    std::size_t cols() const noexcept { return c.size(); }

    void add_row(std::span<const double> coefficients, double rhs);
};

struct Solution {
    Status status = Status::infeasible;
    double objective = 0.0;
    std::vector<double> x;
};

// Throws std::invalid_argument if a.size() != rows() * cols().
Solution maximize(const Problem& problem, double eps = 1e-11);

}  // namespace diamond::lp
