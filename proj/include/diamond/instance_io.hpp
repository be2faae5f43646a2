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

// JSON instance files. Complex numbers are [re, im] pairs; matrices are flat
// row-major lists of pairs.
//
// Scalar:  { "snr": 10.0, "h_bc": [[re,im],...], "h_mac": [[re,im],...] }
// MIMO:    { "snr": 10.0, "n_s": 2, "n_d": 2,
//            "relays": [ { "n_i": 2, "H_bc": [...], "H_mac": [...] }, ... ] }
//
// H_bc of relay i is n_i x n_s, H_mac is n_d x n_i.

#pragma once

#include "diamond/core.hpp"
#include "diamond/mimo.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <variant>

namespace diamond {

using Instance = std::variant<ScalarDiamond, MimoDiamond>;

// Throw ParseError naming the offending field, e.g. "relays[1].H_bc[3]".
ScalarDiamond parse_scalar_instance(const nlohmann::json& j);
MimoDiamond parse_mimo_instance(const nlohmann::json& j);
// Dispatches on the presence of "relays".
Instance parse_instance(const nlohmann::json& j);
Instance parse_instance_text(const std::string& text);
Instance load_instance(const std::filesystem::path& path);

nlohmann::json to_json(const ScalarDiamond& net);
nlohmann::json to_json(const MimoDiamond& net);

}  // namespace diamond
