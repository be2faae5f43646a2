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

#include "diamond/instance_io.hpp"

#include "diamond/errors.hpp"

#include <fstream>
#include <sstream>

namespace diamond {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& problem) {
    throw ParseError(field + ": " + problem);
}

const json& require(const json& obj, const char* key, const std::string& where) {
    const std::string field = where.empty() ? key : where + "." + key;
    if (!obj.is_object()) fail(where.empty() ? "instance" : where, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(field, "missing field");
    return *it;
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "expected a number");
    return j.get<double>();
}

std::size_t count(const json& j, const std::string& field) {
    if (!j.is_number_integer() || j.get<long long>() < 1) fail(field, "expected a positive integer");
    return j.get<std::size_t>();
}

Complex complex_pair(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail(field, "expected [re, im] pair of numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Complex> complex_list(const json& j, const std::string& field) {
    if (!j.is_array()) fail(field, "expected an array of [re, im] pairs");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_pair(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

ComplexMatrix complex_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& field) {
    const auto entries = complex_list(j, field);
    if (entries.size() != rows * cols) {
        fail(field, "expected " + std::to_string(rows * cols) + " entries (" + std::to_string(rows) + "x" +
                        std::to_string(cols) + " row-major), got " + std::to_string(entries.size()));
    }
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entries[r * cols + c];
        }
    }
    return m;
}

json pair(const Complex& z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const ComplexMatrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(pair(m(r, c)));
    }
    return out;
}

template <class Fn>
auto rethrow_as_parse_error(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("instance: ") + e.what());
    }
}

}  // namespace

ScalarDiamond parse_scalar_instance(const json& j) {
    const double snr = number(require(j, "snr", ""), "snr");
    auto h_bc = complex_list(require(j, "h_bc", ""), "h_bc");
    auto h_mac = complex_list(require(j, "h_mac", ""), "h_mac");
    return rethrow_as_parse_error([&] { return ScalarDiamond(std::move(h_bc), std::move(h_mac), snr); });
}

MimoDiamond parse_mimo_instance(const json& j) {
    const double snr = number(require(j, "snr", ""), "snr");
    const std::size_t n_s = count(require(j, "n_s", ""), "n_s");
    const std::size_t n_d = count(require(j, "n_d", ""), "n_d");
    const json& relays = require(j, "relays", "");
    if (!relays.is_array() || relays.empty()) fail("relays", "expected a non-empty array");

    std::vector<std::size_t> antennas;
    std::vector<ComplexMatrix> h_bc;
    std::vector<ComplexMatrix> h_mac;
    for (std::size_t i = 0; i < relays.size(); ++i) {
        const std::string where = "relays[" + std::to_string(i) + "]";
        const std::size_t n_i = count(require(relays[i], "n_i", where), where + ".n_i");
        antennas.push_back(n_i);
        h_bc.push_back(complex_matrix(require(relays[i], "H_bc", where), n_i, n_s, where + ".H_bc"));
        h_mac.push_back(complex_matrix(require(relays[i], "H_mac", where), n_d, n_i, where + ".H_mac"));
    }
    return rethrow_as_parse_error([&] {
        return MimoDiamond(n_s, n_d, std::move(antennas), std::move(h_bc), std::move(h_mac), snr);
    });
}

Instance parse_instance(const json& j) {
    if (!j.is_object()) fail("instance", "expected a JSON object");
    if (j.contains("relays")) return parse_mimo_instance(j);
    return parse_scalar_instance(j);
}

Instance parse_instance_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("instance: malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return parse_instance(j);
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open instance file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_instance_text(buffer.str());
}

json to_json(const ScalarDiamond& net) {
    json h_bc = json::array();
    json h_mac = json::array();
    for (const auto& z : net.h_bc()) h_bc.push_back(pair(z));
    for (const auto& z : net.h_mac()) h_mac.push_back(pair(z));
    return json{{"snr", net.snr()}, {"h_bc", std::move(h_bc)}, {"h_mac", std::move(h_mac)}};
}

json to_json(const MimoDiamond& net) {
    json relays = json::array();
    for (std::size_t i = 0; i < net.relays(); ++i) {
        relays.push_back(
            {{"n_i", net.antennas()[i]}, {"H_bc", matrix_json(net.h_bc(i))}, {"H_mac", matrix_json(net.h_mac(i))}});
    }
    return json{{"snr", net.snr()},
                {"n_s", net.source_antennas()},
                {"n_d", net.destination_antennas()},
                {"relays", std::move(relays)}};
}

}  // namespace diamond
