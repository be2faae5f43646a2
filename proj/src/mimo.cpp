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

#include "diamond/mimo.hpp"

#include "diamond/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace diamond {

namespace {

std::string shape(const ComplexMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

bool finite(const ComplexMatrix& m) {
    return m.unaryExpr([](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }).all();
}

}  // namespace

MimoDiamond::MimoDiamond(std::size_t n_s, std::size_t n_d, std::vector<std::size_t> antennas,
                         std::vector<ComplexMatrix> h_bc, std::vector<ComplexMatrix> h_mac, double snr)
    : n_s_(n_s), n_d_(n_d), antennas_(std::move(antennas)), h_bc_(std::move(h_bc)), h_mac_(std::move(h_mac)),
      snr_(snr) {
    if (antennas_.empty()) throw std::invalid_argument("MimoDiamond: at least one relay is required");
    if (n_s_ == 0 || n_d_ == 0) throw std::invalid_argument("MimoDiamond: n_s and n_d must be >= 1");
    if (h_bc_.size() != antennas_.size() || h_mac_.size() != antennas_.size()) {
        throw std::invalid_argument("MimoDiamond: need one H_bc and one H_mac per relay");
    }
    if (!(snr_ > 0.0) || !std::isfinite(snr_)) throw std::invalid_argument("MimoDiamond: snr must be positive and finite");
    for (std::size_t i = 0; i < antennas_.size(); ++i) {
        const auto ni = static_cast<Eigen::Index>(antennas_[i]);
        if (antennas_[i] == 0) throw std::invalid_argument("MimoDiamond: relay antenna counts must be >= 1");
        if (h_bc_[i].rows() != ni || h_bc_[i].cols() != static_cast<Eigen::Index>(n_s_)) {
            throw std::invalid_argument("MimoDiamond: relay " + std::to_string(i + 1) + " H_bc is " + shape(h_bc_[i]) +
                                        ", expected " + std::to_string(ni) + "x" + std::to_string(n_s_));
        }
        if (h_mac_[i].rows() != static_cast<Eigen::Index>(n_d_) || h_mac_[i].cols() != ni) {
            throw std::invalid_argument("MimoDiamond: relay " + std::to_string(i + 1) + " H_mac is " +
                                        shape(h_mac_[i]) + ", expected " + std::to_string(n_d_) + "x" +
                                        std::to_string(ni));
        }
        if (!finite(h_bc_[i]) || !finite(h_mac_[i])) {
            throw std::invalid_argument("MimoDiamond: channel matrices must be finite");
        }
        total_ += antennas_[i];
    }
    if (n_s_ > total_ || n_d_ > total_) {
        throw std::invalid_argument("MimoDiamond: n_s and n_d may not exceed the total relay antenna count " +
                                    std::to_string(total_));
    }
    bc_gram_.reserve(antennas_.size());
    mac_gram_.reserve(antennas_.size());
    for (std::size_t i = 0; i < antennas_.size(); ++i) {
        bc_gram_.push_back(h_bc_[i].adjoint() * h_bc_[i]);
        mac_gram_.push_back(h_mac_[i] * h_mac_[i].adjoint());
    }
}

MimoDiamond MimoDiamond::from_scalar(const ScalarDiamond& net) {
    std::vector<ComplexMatrix> h_bc;
    std::vector<ComplexMatrix> h_mac;
    for (std::size_t i = 0; i < net.relays(); ++i) {
        h_bc.push_back(ComplexMatrix::Constant(1, 1, net.h_bc()[i]));
        h_mac.push_back(ComplexMatrix::Constant(1, 1, net.h_mac()[i]));
    }
    return MimoDiamond(1, 1, std::vector<std::size_t>(net.relays(), 1), std::move(h_bc), std::move(h_mac), net.snr());
}

bool MimoDiamond::all_single_antenna() const noexcept {
    return n_s_ == 1 && n_d_ == 1 && std::all_of(antennas_.begin(), antennas_.end(), [](std::size_t a) { return a == 1; });
}

double logdet_rate(const ComplexMatrix& gram) {
    if (gram.rows() != gram.cols()) throw std::invalid_argument("logdet_rate: matrix is " + shape(gram));
    if (gram.size() == 0) return 0.0;
    const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
    if ((gram - gram.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw std::invalid_argument("logdet_rate: matrix is not Hermitian");
    }
    if (gram.rows() > 1) {
        const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -1e-7) {
            throw std::invalid_argument("logdet_rate: matrix is not positive semidefinite");
        }
    } else if (gram(0, 0).real() < -1e-7) {
        throw std::invalid_argument("logdet_rate: matrix is not positive semidefinite");
    }
    const ComplexMatrix shifted = ComplexMatrix::Identity(gram.rows(), gram.cols()) + gram;
    const Eigen::LLT<ComplexMatrix> chol(shifted);
    if (chol.info() != Eigen::Success) throw std::invalid_argument("logdet_rate: I + gram is not positive definite");
    double bits = 0.0;
    for (Eigen::Index i = 0; i < shifted.rows(); ++i) bits += std::log2(chol.matrixLLT()(i, i).real());
    return std::max(0.0, 2.0 * bits);
}

std::vector<double> squared_singular_values(const ComplexMatrix& h) {
    const ComplexMatrix gram = h.adjoint() * h;
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram, Eigen::EigenvaluesOnly);
    std::vector<double> out(static_cast<std::size_t>(gram.rows()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(0.0, eig.eigenvalues()(static_cast<Eigen::Index>(i)));
    return out;
}

WaterfillResult waterfill(std::span<const double> gains, double total_power) {
    if (!(total_power > 0.0) || !std::isfinite(total_power)) {
        throw std::invalid_argument("waterfill: total power must be positive and finite");
    }
    if (gains.empty()) throw std::invalid_argument("waterfill: no modes");
    for (double g : gains) {
        if (!std::isfinite(g) || g < 0.0) throw std::invalid_argument("waterfill: gains must be finite and >= 0");
    }

    WaterfillResult out;
    out.allocation.assign(gains.size(), 0.0);
    double floor = std::numeric_limits<double>::infinity();
    for (double g : gains) {
        if (g > 0.0) floor = std::min(floor, 1.0 / g);
    }
    if (!std::isfinite(floor)) {
        std::fill(out.allocation.begin(), out.allocation.end(), total_power / static_cast<double>(gains.size()));
        out.water_level = total_power / static_cast<double>(gains.size());
        return out;
    }

    auto poured = [&](double level) {
        double total = 0.0;
        for (double g : gains) {
            if (g > 0.0) total += std::max(0.0, level - 1.0 / g);
        }
        return total;
    };
    double lo = floor;
    double hi = floor + total_power;
    const double tolerance = 1e-12 * std::max(1.0, total_power);
    double level = hi;
    for (int iter = 0; iter < 400; ++iter) {
        level = 0.5 * (lo + hi);
        const double residual = poured(level) - total_power;
        if (std::fabs(residual) <= tolerance || level == lo || level == hi) break;
        (residual < 0.0 ? lo : hi) = level;
    }

    out.water_level = level;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        if (gains[i] > 0.0) out.allocation[i] = std::max(0.0, level - 1.0 / gains[i]);
        out.capacity += std::log2(1.0 + out.allocation[i] * gains[i]);
    }
    return out;
}

double lemma1_bound(std::size_t n_t, std::size_t n_r) {
    if (n_t == 0 || n_r == 0) throw std::invalid_argument("lemma1_bound: antenna counts must be >= 1");
    const double n = static_cast<double>(std::min(n_t, n_r));
    return n * std::log2(1.0 + (static_cast<double>(n_t) - 1.0) / n);
}

namespace {

// Accumulates scale_i * gram_i over the relays in `set`.
template <class Scale>
ComplexMatrix weighted_sum(const MimoDiamond& net, SubsetMask set, bool bc_side, Scale&& scale) {
    const Eigen::Index dim = static_cast<Eigen::Index>(bc_side ? net.source_antennas() : net.destination_antennas());
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < net.relays(); ++i) {
        if (set >> i & 1U) sum += scale(i) * (bc_side ? net.bc_gram(i) : net.mac_gram(i));
    }
    return sum;
}

double antenna_correction(const MimoDiamond& net) {
    const auto ant = net.antennas();
    const double n_s = static_cast<double>(net.source_antennas());
    const double n_d = static_cast<double>(net.destination_antennas());
    const double m = static_cast<double>(net.total_relay_antennas());
    const double min_relay = static_cast<double>(*std::min_element(ant.begin(), ant.end()));
    const double n_a = std::min(n_s, min_relay);
    const double n_b = std::min(n_d, min_relay);
    return n_s * std::log2(1.0 + (n_s - 1.0) / n_a) + n_d * std::log2(1.0 + (m - 1.0) / n_b);
}

}  // namespace

double mimo_cutset_proxy(const MimoDiamond& net) {
    const std::size_t n = net.relays();
    detail::require_enumerable(n, kMaxSetFunctionSize, "mimo_cutset_proxy");
    const double snr = net.snr();
    // Equal power SNR/n_s per source antenna; antenna_correction() carries the
    // waterfilling slack on both hops.
    const double source_scale = snr / static_cast<double>(net.source_antennas());
    const SubsetMask full = static_cast<SubsetMask>((std::size_t{1} << n) - 1);
    double best = std::numeric_limits<double>::infinity();
    for (SubsetMask cut = 0; cut <= full; ++cut) {
        const double simo =
            logdet_rate(weighted_sum(net, full & ~cut, true, [&](std::size_t) { return source_scale; }));
        const double miso = logdet_rate(weighted_sum(net, cut, false, [&](std::size_t) { return snr; }));
        best = std::min(best, simo + miso);
    }
    return best + antenna_correction(net);
}

double mimo_nnc_rate(const MimoDiamond& net) {
    const std::size_t n = net.relays();
    detail::require_enumerable(n, kMaxSetFunctionSize, "mimo_nnc_rate");
    const double snr = net.snr();
    const double m = static_cast<double>(net.total_relay_antennas());
    const double source_scale = snr / (static_cast<double>(net.source_antennas()) * (m + 1.0));
    const double per_antenna_penalty = std::log2(1.0 + 1.0 / m);
    const SubsetMask full = static_cast<SubsetMask>((std::size_t{1} << n) - 1);
    double best = std::numeric_limits<double>::infinity();
    for (SubsetMask cut = 0; cut <= full; ++cut) {
        const double first = logdet_rate(weighted_sum(net, full & ~cut, true, [&](std::size_t) { return source_scale; }));
        const double second = logdet_rate(weighted_sum(
            net, cut, false, [&](std::size_t i) { return snr / static_cast<double>(net.antennas()[i]); }));
        double penalty = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (cut >> i & 1U) penalty += static_cast<double>(net.antennas()[i]) * per_antenna_penalty;
        }
        best = std::min(best, first + second - penalty);
    }
    return std::max(0.0, best);
}

SetFunction mimo_mac_set_function(const MimoDiamond& net) {
    detail::require_enumerable(net.relays(), kMaxSetFunctionSize, "mimo_mac_set_function");
    const double snr = net.snr();
    return SetFunction::tabulate(net.relays(), [&](SubsetMask s) {
        return logdet_rate(
            weighted_sum(net, s, false, [&](std::size_t i) { return snr / static_cast<double>(net.antennas()[i]); }));
    });
}

SetFunction mimo_bc_lower_set_function(const MimoDiamond& net) {
    detail::require_enumerable(net.relays(), kMaxSetFunctionSize, "mimo_bc_lower_set_function");
    const double scale = net.snr() / static_cast<double>(net.total_relay_antennas());
    return SetFunction::tabulate(net.relays(), [&](SubsetMask s) {
        return logdet_rate(weighted_sum(net, s, true, [&](std::size_t) { return scale; }));
    });
}

double mimo_pdf_rate(const MimoDiamond& net) {
    return edmonds_max_sum(mimo_mac_set_function(net), mimo_bc_lower_set_function(net)).value;
}

GapConstants mimo_gap_constants(std::size_t n_s, std::size_t n_d, std::span<const std::size_t> antennas) {
    if (n_s == 0 || n_d == 0 || antennas.empty() ||
        std::any_of(antennas.begin(), antennas.end(), [](std::size_t a) { return a == 0; })) {
        throw std::invalid_argument("mimo_gap_constants: antenna counts must be >= 1");
    }
    double m = 0.0;
    std::size_t max_relay = 0;
    std::size_t min_relay = antennas.front();
    for (std::size_t a : antennas) {
        m += static_cast<double>(a);
        max_relay = std::max(max_relay, a);
        min_relay = std::min(min_relay, a);
    }
    const double ns = static_cast<double>(n_s);
    const double nd = static_cast<double>(n_d);
    const double n_a = static_cast<double>(std::min(n_s, min_relay));
    const double n_b = static_cast<double>(std::min(n_d, min_relay));
    const double shared = ns * std::log2(1.0 + (ns - 1.0) / n_a) + nd * std::log2(static_cast<double>(max_relay)) +
                          nd * std::log2(1.0 + (m - 1.0) / n_b);
    return {ns * std::log2(m + 1.0) + shared + 1.0, ns * std::log2(m) + shared};
}

}  // namespace diamond
