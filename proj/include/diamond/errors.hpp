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

#pragma once

#include <stdexcept>
#include <string>

namespace diamond {

// Input is too large for exhaustive subset enumeration or eager storage.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Malformed instance file or configuration. The message names the offending
// field (and byte position where the JSON parser reports one).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed: a theorem bound was exceeded, an LP
// that must be feasible was not, and so on. Always indicates a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A hard assertion fired during Monte Carlo simulation. Carries a JSON dump
// of the offending channel instance.
class SimulationAssertion : public std::runtime_error {
public:
    SimulationAssertion(const std::string& what, std::string instance_json)
        : std::runtime_error(what), instance_json_(std::move(instance_json)) {}

    const std::string& instance_json() const noexcept { return instance_json_; }

private:
    std::string instance_json_;
};

}  // namespace diamond
