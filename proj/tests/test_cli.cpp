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

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kBinary = DIAMOND_CLI_PATH;
const fs::path kData = DIAMOND_TEST_DATA;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "diamond_test_cli";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Run run(const std::string& args) {
    const fs::path out = scratch() / "stdout.txt";
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd = kBinary.string() + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string data(const char* name) { return (kData / name).string(); }

}  // namespace

TEST_CASE("bounds on the symmetric two-relay instance") {
    const auto r = run("bounds " + data("symmetric2.json"));
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["kind"] == "scalar");
    CHECK(j["pdf"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(j["cutset_proxy"].get<double>() == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    CHECK(j["theorems_satisfied"] == true);
    CHECK(j["pdf_rate_point"].size() == 2);
    CHECK(j["best_of"].get<double>() >= 1.0 - 1e-12);
}

TEST_CASE("bounds on an all-zero instance") {
    const auto r = run("bounds " + data("zero3.json"));
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"cutset_proxy", "nnc", "pdf", "af_opt", "af_naive", "best_relay", "best_of"}) {
        CHECK(j[key].get<double>() == 0.0);
    }
    for (const auto& [name, gap] : j["gaps"].items()) CHECK(gap.get<double>() == 0.0);
}

TEST_CASE("MIMO bounds with the scalar cross-check") {
    const auto r = run("bounds --cross-check " + data("mimo_single.json"));
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["kind"] == "mimo");
    CHECK(j["cross_check"]["applicable"] == true);
    CHECK(j["cross_check"]["passed"] == true);
    CHECK(j["cross_check"]["nnc_abs_diff"].get<double>() <= 1e-12);
    CHECK(j["cross_check"]["pdf_abs_diff"].get<double>() <= 1e-12);

    const auto multi = run("bounds --cross-check " + data("mimo_2x2.json"));
    REQUIRE(multi.code == 0);
    const auto k = nlohmann::json::parse(multi.out);
    CHECK(k["cross_check"]["applicable"] == false);
    CHECK(k["theorems_satisfied"] == true);
}

TEST_CASE("input errors exit with status 2") {
    CHECK(run("bounds " + data("truncated.json")).code == 2);
    CHECK(run("bounds " + data("missing.json")).code == 2);
    CHECK(run("").code == 2);
    CHECK(run("simulate --relays 0").code == 2);
    CHECK(run("simulate --dist rician").code == 2);
    CHECK(run("simulate --schemes pdf,df").code == 2);
    CHECK(run("simulate --relays 21 --trials 1").code == 2);
    CHECK(run("check --suite nope").code == 2);
    const auto r = run("bounds " + data("truncated.json"));
    CHECK(r.err.find("byte") != std::string::npos);
}

TEST_CASE("check passes every suite") {
    const auto r = run("check --seed 3 --trials 50");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(run("check --suite edmonds --n 8 --trials 20").code == 0);
}

TEST_CASE("simulate output is identical across thread counts") {
    const fs::path a = scratch() / "a.csv";
    const fs::path b = scratch() / "b.csv";
    const std::string common = "simulate --relays 6 --snr 1000 --dist shadow --shadow-std 7 --trials 200 --seed 42";
    REQUIRE(run(common + " --threads 1 --out " + a.string()).code == 0);
    REQUIRE(run(common + " --threads 4 --out " + b.string()).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(scratch() / "a.summary.json") == slurp(scratch() / "b.summary.json"));
    CHECK(slurp(a).rfind("scheme,gap_bits\n", 0) == 0);
}

TEST_CASE("simulate with several SNR values writes one file per value") {
    const fs::path out = scratch() / "multi.csv";
    const auto r = run("simulate --relays 3 --trials 1 --snr 1 1000 --schemes pdf --out " + out.string());
    REQUIRE(r.code == 0);
    CHECK(fs::exists(scratch() / "multi_snr1.csv"));
    CHECK(fs::exists(scratch() / "multi_snr1000.csv"));
    const std::string text = slurp(scratch() / "multi_snr1.csv");
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}
