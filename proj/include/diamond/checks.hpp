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

// Randomized property suites over the whole library. Each suite draws its
// instances from seeded substreams and stops at the first counterexample.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace diamond {

struct SuiteOptions {
    std::uint64_t seed = 1;
    // Overrides the suite's default instance count.
    std::optional<std::size_t> trials;
    // Pins the relay count / ground-set size where the suite has one.
    std::optional<std::size_t> n;
};

struct SuiteReport {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    // Worst observed slack or error, for the report line.
    std::string detail;
    // JSON dump of the failing instance (empty on success).
    std::string counterexample;
};

// polymatroid, edmonds, lemma1, remarks, reduction, theorems, superposition
const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace diamond
