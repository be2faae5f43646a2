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

#include "diamond/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace diamond::lp {

const char* to_string(Status status) noexcept {
    switch (status) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    }
    return "unknown";
}

void Problem::add_row(std::span<const double> coefficients, double rhs) {
    if (!c.empty() && coefficients.size() != c.size()) {
        throw std::invalid_argument("lp::Problem::add_row: row width does not match objective");
    }
    a.insert(a.end(), coefficients.begin(), coefficients.end());
    b.push_back(rhs);
}

namespace {

// Compact tableau: rows 0..m-1 are constraints, row m the objective, row m+1
// the phase-1 objective. Column n is the artificial variable used to reach
// feasibility, column n+1 holds the right-hand side.
class Tableau {
public:
    Tableau(const Problem& p, double eps)
        : m_(p.rows()), n_(p.cols()), eps_(eps),
          basis_(m_), nonbasis_(n_ + 1),
          d_((m_ + 2) * (n_ + 2), 0.0) {
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                at(i, j) = p.a[i * n_ + j];
            }
            basis_[i] = static_cast<long>(n_ + i);
            at(i, n_) = -1.0;
            at(i, n_ + 1) = p.b[i];
        }
        for (std::size_t j = 0; j < n_; ++j) {
            nonbasis_[j] = static_cast<long>(j);
            at(m_, j) = -p.c[j];
        }
        nonbasis_[n_] = -1;
        at(m_ + 1, n_) = 1.0;
    }

    Solution solve() {
        Solution out;
        out.x.assign(n_, 0.0);

        if (m_ > 0) {
            std::size_t r = 0;
            for (std::size_t i = 1; i < m_; ++i) {
                if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
            }
            if (at(r, n_ + 1) < -eps_) {
                // Phase 1: drive the artificial variable out of the basis.
                pivot(r, n_);
                if (!run(2) || at(m_ + 1, n_ + 1) < -eps_) {
                    out.status = Status::infeasible;
                    return out;
                }
                for (std::size_t i = 0; i < m_; ++i) {
                    if (basis_[i] != -1) continue;
                    std::size_t s = 0;
                    for (std::size_t j = 1; j <= n_; ++j) {
                        if (better_entering(i, j, s)) s = j;
                    }
                    pivot(i, s);
                }
            }
        }
        if (!run(1)) {
            out.status = Status::unbounded;
            out.objective = std::numeric_limits<double>::infinity();
            return out;
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_) {
                out.x[static_cast<std::size_t>(basis_[i])] = at(i, n_ + 1);
            }
        }
        out.status = Status::optimal;
        out.objective = at(m_, n_ + 1);
        return out;
    }

private:
    double& at(std::size_t i, std::size_t j) { return d_[i * (n_ + 2) + j]; }

    bool better_entering(std::size_t row, std::size_t j, std::size_t s) {
        const double dj = at(row, j);
        const double ds = at(row, s);
        return dj < ds || (dj == ds && nonbasis_[j] < nonbasis_[s]);
    }

    void pivot(std::size_t r, std::size_t s) {
        const double inv = 1.0 / at(r, s);
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i == r || std::fabs(at(i, s)) <= 0.0) continue;
            const double factor = at(i, s) * inv;
            for (std::size_t j = 0; j < n_ + 2; ++j) {
                at(i, j) -= at(r, j) * factor;
            }
            at(i, s) = -factor;
        }
        for (std::size_t j = 0; j < n_ + 2; ++j) {
            if (j != s) at(r, j) *= inv;
        }
        at(r, s) = inv;
        std::swap(basis_[r], nonbasis_[s]);
    }

    // Bland's rule: entering column is the eligible one with the smallest
    // variable index, leaving row is the min-ratio row with the smallest
    // basic variable index.
    bool run(int phase) {
        const std::size_t obj = phase == 1 ? m_ : m_ + 1;
        for (;;) {
            long s = -1;
            for (std::size_t j = 0; j <= n_; ++j) {
                if (nonbasis_[j] == -phase) continue;
                if (at(obj, j) >= -eps_) continue;
                if (s == -1 || nonbasis_[j] < nonbasis_[static_cast<std::size_t>(s)]) s = static_cast<long>(j);
            }
            if (s == -1) return true;
            const auto sc = static_cast<std::size_t>(s);

            long r = -1;
            double best = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (at(i, sc) <= eps_) continue;
                const double ratio = at(i, n_ + 1) / at(i, sc);
                if (r == -1 || ratio < best - eps_ ||
                    (ratio <= best + eps_ && basis_[i] < basis_[static_cast<std::size_t>(r)])) {
                    r = static_cast<long>(i);
                    best = ratio;
                }
            }
            if (r == -1) return false;
            pivot(static_cast<std::size_t>(r), sc);
        }
    }

    std::size_t m_;
    std::size_t n_;
    double eps_;
    std::vector<long> basis_;
    std::vector<long> nonbasis_;
    std::vector<double> d_;
};

}  // namespace

Solution maximize(const Problem& problem, double eps) {
    if (problem.a.size() != problem.rows() * problem.cols()) {
        throw std::invalid_argument("lp::maximize: constraint matrix has wrong size");
    }
    return Tableau(problem, eps).solve();
}

}  // namespace diamond::lp
