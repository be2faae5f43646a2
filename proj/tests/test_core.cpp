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

#include "diamond/core.hpp"
#include "diamond/errors.hpp"
#include "diamond/polymatroid.hpp"
#include "test_util.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <doctest.h>

#include <cmath>

using namespace diamond;
using diamond::test::uniform_network;
using diamond::test::wide_random_network;

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

Big big_log2(const Big& x) { return boost::multiprecision::log(x) / boost::multiprecision::log(Big(2)); }

// Direct cut enumeration in 50-digit arithmetic. `kind` selects the formula.
enum class Formula { cutset, nnc, pdf };

double oracle(const ScalarDiamond& net, Formula kind) {
    const std::size_t n = net.relays();
    const Big snr(net.snr());
    Big best = 0;
    bool first = true;
    for (std::uint64_t cut = 0; cut < (std::uint64_t{1} << n); ++cut) {
        Big simo = 0;
        Big mac = 0;
        Big amp = 0;
        int members = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const Big bre(net.h_bc()[i].real()), bim(net.h_bc()[i].imag());
            const Big mre(net.h_mac()[i].real()), mim(net.h_mac()[i].imag());
            if (cut >> i & 1U) {
                mac += mre * mre + mim * mim;
                amp += boost::multiprecision::sqrt(mre * mre + mim * mim);
                ++members;
            } else {
                simo += bre * bre + bim * bim;
            }
        }
        Big value;
        switch (kind) {
        case Formula::cutset: value = big_log2(1 + snr * simo) + big_log2(1 + snr * amp * amp); break;
        case Formula::nnc:
            value = big_log2(1 + simo * snr / (n + 1)) + big_log2(1 + mac * snr) -
                    members * big_log2(1 + Big(1) / n);
            break;
        case Formula::pdf: value = big_log2(1 + simo * snr / n) + big_log2(1 + mac * snr); break;
        }
        if (first || value < best) best = value;
        first = false;
    }
    if (kind == Formula::nnc && best < 0) best = 0;
    return static_cast<double>(best);
}

ScalarDiamond fixture3() {
    return ScalarDiamond({{0.8, -0.3}, {0.1, 1.2}, {-0.5, 0.4}}, {{1.1, 0.2}, {-0.3, -0.7}, {0.05, 0.9}}, 10.0);
}

}  // namespace

TEST_CASE("ScalarDiamond validates its inputs") {
    CHECK_THROWS_AS(ScalarDiamond({}, {}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ScalarDiamond({{1, 0}}, {{1, 0}, {1, 0}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ScalarDiamond({{1, 0}}, {{1, 0}}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ScalarDiamond({{1, 0}}, {{1, 0}}, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(ScalarDiamond({{1, 0}}, {{1, 0}}, INFINITY), std::invalid_argument);
    CHECK_THROWS_AS(ScalarDiamond({{NAN, 0}}, {{1, 0}}, 1.0), std::invalid_argument);
    const ScalarDiamond net({{3, 4}}, {{0, 2}}, 5.0);
    CHECK(net.bc_power_gains()[0] == doctest::Approx(25.0));
    CHECK(net.mac_power_gains()[0] == doctest::Approx(4.0));
}

TEST_CASE("cutset_proxy") {
    SUBCASE("dead links give zero") { CHECK(cutset_proxy(uniform_network(1, 0.0, 1.0)) == 0.0); }
    SUBCASE("two symmetric relays: minimizing cut is the empty set") {
        CHECK(cutset_proxy(uniform_network(2, 1.0, 1.0)) == doctest::Approx(std::log2(3.0)).epsilon(1e-15));
    }
    SUBCASE("three-relay fixture against 50-digit enumeration") {
        // tests/oracles/scalar_fixture.py
        CHECK(std::fabs(cutset_proxy(fixture3()) - 4.7495342676692617968) < 1e-12);
        CHECK(std::fabs(cutset_proxy(fixture3()) - oracle(fixture3(), Formula::cutset)) < 1e-12);
    }
    SUBCASE("size guard") {
        CHECK_THROWS_AS(cutset_proxy(uniform_network(31, 1.0, 1.0)), SizeError);
        CHECK_THROWS_AS(nnc_rate(uniform_network(31, 1.0, 1.0)), SizeError);
        CHECK_THROWS_AS(pdf_rate(uniform_network(21, 1.0, 1.0)), SizeError);
    }
}

TEST_CASE("nnc_rate") {
    CHECK(nnc_rate(uniform_network(1, 0.0, 3.0)) == 0.0);
    CHECK(nnc_rate(uniform_network(2, 1.0, 1.0)) ==
          doctest::Approx(std::log2(3.0) - 2.0 * std::log2(1.5)).epsilon(1e-15));
    CHECK(std::fabs(nnc_rate(fixture3()) - 2.9020735793107426848) < 1e-12);
}

TEST_CASE("pdf_rate") {
    CHECK(pdf_rate(uniform_network(2, 1.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    SUBCASE("single relay equals the cutset proxy") {
        CHECK(pdf_rate(uniform_network(1, 1.0, 1.0)) == doctest::Approx(1.0));
        CHECK(cutset_proxy(uniform_network(1, 1.0, 1.0)) == doctest::Approx(1.0));
        Engine rng = substream(7, 0);
        for (int t = 0; t < 200; ++t) {
            const auto net = wide_random_network(rng, 1);
            CHECK(std::fabs(pdf_rate(net) - cutset_proxy(net)) <= 1e-12 * std::max(1.0, cutset_proxy(net)));
        }
    }
    CHECK(std::fabs(pdf_rate(fixture3()) - 3.2680350868921602872) < 1e-12);
}

TEST_CASE("random instances agree with the multiprecision oracle") {
    Engine rng = substream(11, 0);
    for (int t = 0; t < 60; ++t) {
        const auto net = wide_random_network(rng, static_cast<std::size_t>(t % 6 + 1));
        CAPTURE(t);
        for (auto [kind, value] : {std::pair{Formula::cutset, cutset_proxy(net)}, std::pair{Formula::nnc, nnc_rate(net)},
                                   std::pair{Formula::pdf, pdf_rate(net)}}) {
            const double expected = oracle(net, kind);
            CHECK(std::fabs(value - expected) <= 1e-10 * std::max(1.0, expected));
        }
    }
}

TEST_CASE("gap_constants_scalar") {
    CHECK(gap_constants_scalar(10).g2 == doctest::Approx(6.6439).epsilon(1e-4));
    CHECK(gap_constants_scalar(10).g1 == doctest::Approx(7.7814).epsilon(1e-4));
    CHECK(gap_constants_scalar(1).g1 == 2.0);
    CHECK(gap_constants_scalar(1).g2 == 0.0);
    CHECK_THROWS_AS(gap_constants_scalar(0), std::invalid_argument);
    for (std::size_t n = 1; n <= 64; ++n) {
        const auto g = gap_constants_scalar(n);
        CHECK(g.g1 >= g.g2);
        CHECK(g.g2 >= 0.0);
    }
}

TEST_CASE("ordering and theorem gaps hold on random instances") {
    Engine rng = substream(12, 0);
    for (int t = 0; t < 600; ++t) {
        const std::size_t n = static_cast<std::size_t>(t % 12 + 1);
        const auto net = wide_random_network(rng, n);
        const double upper = cutset_proxy(net);
        const double nnc = nnc_rate(net);
        const double pdf = pdf_rate(net);
        const auto g = gap_constants_scalar(n);
        CAPTURE(t);
        CHECK(nnc >= 0.0);
        CHECK(pdf >= 0.0);
        CHECK(nnc <= upper + 1e-9);
        CHECK(pdf <= upper + 1e-9);
        CHECK(upper - nnc <= g.g1 + 1e-9);
        CHECK(upper - pdf <= g.g2 + 1e-9);
    }
}

TEST_CASE("rates are monotone in channel strength and SNR") {
    Engine rng = substream(13, 0);
    std::uniform_real_distribution<double> boost(1.0, 5.0);
    for (int t = 0; t < 200; ++t) {
        const auto net = wide_random_network(rng, static_cast<std::size_t>(t % 7 + 1));
        const double scale = boost(rng);
        std::vector<Complex> h_bc(net.h_bc().begin(), net.h_bc().end());
        std::vector<Complex> h_mac(net.h_mac().begin(), net.h_mac().end());
        for (auto& h : h_bc) h *= scale;
        for (auto& h : h_mac) h *= scale;
        const ScalarDiamond stronger(h_bc, h_mac, net.snr());
        const ScalarDiamond louder(std::vector<Complex>(net.h_bc().begin(), net.h_bc().end()),
                                   std::vector<Complex>(net.h_mac().begin(), net.h_mac().end()), net.snr() * scale);
        for (const auto* other : {&stronger, &louder}) {
            CHECK(cutset_proxy(*other) >= cutset_proxy(net) - 1e-12);
            CHECK(nnc_rate(*other) >= nnc_rate(net) - 1e-12);
            CHECK(pdf_rate(*other) >= pdf_rate(net) - 1e-12);
        }
    }
}

TEST_CASE("pdf_rate matches the intersection LP") {
    Engine rng = substream(14, 0);
    for (int t = 0; t < 80; ++t) {
        const auto net = wide_random_network(rng, static_cast<std::size_t>(t % 8 + 1));
        const auto f = mac_set_function(net.mac_power_gains(), net.snr());
        const auto g = bc_lower_set_function(net.bc_power_gains(), net.snr());
        CHECK(std::fabs(pdf_rate(net) - edmonds_max_sum(f, g).value) <= 1e-12);
        CHECK(std::fabs(pdf_rate(net) - solve_max_rate_lp(f, g).objective) <= kLpAgreementTolerance);
    }
}

TEST_CASE("rates ignore channel phases") {
    Engine rng = substream(15, 0);
    std::uniform_real_distribution<double> phase(-M_PI, M_PI);
    for (int t = 0; t < 50; ++t) {
        const auto net = wide_random_network(rng, 5);
        std::vector<Complex> h_bc(net.h_bc().begin(), net.h_bc().end());
        std::vector<Complex> h_mac(net.h_mac().begin(), net.h_mac().end());
        for (auto& h : h_bc) h *= std::polar(1.0, phase(rng));
        for (auto& h : h_mac) h *= std::polar(1.0, phase(rng));
        const ScalarDiamond rotated(h_bc, h_mac, net.snr());
        CHECK(cutset_proxy(rotated) == doctest::Approx(cutset_proxy(net)).epsilon(1e-12));
        CHECK(nnc_rate(rotated) == doctest::Approx(nnc_rate(net)).epsilon(1e-12));
        CHECK(pdf_rate(rotated) == doctest::Approx(pdf_rate(net)).epsilon(1e-12));
    }
}
