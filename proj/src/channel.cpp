// Copyright 2026 The mimo-bitalloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mimoba/channel.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

#include "mimoba/errors.hpp"

namespace mimoba {

using std::complex;

Eigen::VectorXcd ula_response(double angle, int n_elements, double spacing) {
    if (n_elements < 1) {
        throw dimension_error("ula_response: n_elements must be >= 1");
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(n_elements));
    const double phase_step = 2.0 * std::numbers::pi * spacing * std::sin(angle);
    Eigen::VectorXcd a(n_elements);
    for (int k = 0; k < n_elements; ++k) {
        a(k) = std::polar(norm, phase_step * k);
    }
    return a;
}

static void validate(const ChannelParams& p) {
    if (p.array.num_tx < 1 || p.array.num_rx < 1) {
        throw config_error("generate_channel: antenna counts must be >= 1");
    }
    if (p.array.element_spacing <= 0.0) {
        throw config_error("generate_channel: element spacing must be > 0");
    }
    if (p.num_clusters < 1 || p.rays_per_cluster < 1) {
        throw config_error("generate_channel: cluster/ray counts must be >= 1");
    }
    if (p.angle_spread < 0.0) {
        throw config_error("generate_channel: angle spread must be >= 0");
    }
}

Eigen::MatrixXcd generate_channel(const ChannelParams& params, std::mt19937_64& rng) {
    validate(params);
    const int n_t = params.array.num_tx;
    const int n_r = params.array.num_rx;
    const int total_rays = params.num_clusters * params.rays_per_cluster;
    const double scale =
        std::sqrt(static_cast<double>(n_t) * n_r / static_cast<double>(total_rays));

    std::uniform_real_distribution<double> center_dist(-std::numbers::pi / 2.0,
                                                       std::numbers::pi / 2.0);
    std::normal_distribution<double> offset_dist(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n_r, n_t);
    for (int c = 0; c < params.num_clusters; ++c) {
        // cluster 0 is centered on the LOS direction (boresight)
        double center_rx = 0.0;
        double center_tx = 0.0;
        if (c > 0) {
            center_rx = center_dist(rng);
            center_tx = center_dist(rng);
        }
        const double cluster_power = std::pow(10.0, -static_cast<double>(c));  // 10 dB decay
        for (int r = 0; r < params.rays_per_cluster; ++r) {
            complex<double> gain;
            double theta_rx;
            double theta_tx;
            if (c == 0 && r == 0) {
                // dominant LOS ray: deterministic unit gain at boresight
                gain = 1.0;
                theta_rx = 0.0;
                theta_tx = 0.0;
            } else {
                theta_rx = center_rx + params.angle_spread * offset_dist(rng);
                theta_tx = center_tx + params.angle_spread * offset_dist(rng);
                gain = std::sqrt(cluster_power / 2.0) * complex<double>(gauss(rng), gauss(rng));
            }
            const Eigen::VectorXcd a_rx =
                ula_response(theta_rx, n_r, params.array.element_spacing);
            const Eigen::VectorXcd a_tx =
                ula_response(theta_tx, n_t, params.array.element_spacing);
            h.noalias() += (scale * gain) * a_rx * a_tx.adjoint();
        }
    }
    return h;
}

Eigen::MatrixXcd generate_channel(const ChannelParams& params) {
    std::mt19937_64 rng(params.seed);
    return generate_channel(params, rng);
}

ChannelDecomposition svd_decompose(const Eigen::MatrixXcd& h, int n_s, double sigma_floor) {
    const int rank_max = static_cast<int>(std::min(h.rows(), h.cols()));
    if (n_s < 1 || n_s > rank_max) {
        throw dimension_error("svd_decompose: n_s must be in [1, min(N_r, N_t)]");
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);

    ChannelDecomposition d;
    d.u = svd.matrixU().leftCols(n_s);
    d.sigma = svd.singularValues().head(n_s);
    d.f_opt = svd.matrixV().leftCols(n_s);
    d.n_s = n_s;

    if (sigma_floor > 0.0 && d.sigma(0) > 0.0) {
        int keep = 0;
        while (keep < n_s && d.sigma(keep) >= sigma_floor * d.sigma(0)) {
            ++keep;
        }
        keep = std::max(keep, 1);
        d.u = d.u.leftCols(keep).eval();
        d.sigma = d.sigma.head(keep).eval();
        d.f_opt = d.f_opt.leftCols(keep).eval();
        d.n_s = keep;
    }

    // phase fix: largest-magnitude entry of each u column made real positive
    for (int i = 0; i < d.n_s; ++i) {
        Eigen::Index k;
        d.u.col(i).cwiseAbs().maxCoeff(&k);
        const complex<double> pivot = d.u(k, i);
        if (std::abs(pivot) > 0.0) {
            const complex<double> rot = std::conj(pivot) / std::abs(pivot);
            d.u.col(i) *= rot;
            d.f_opt.col(i) *= rot;
        }
    }
    return d;
}

void save_channel(std::ostream& out, const Eigen::MatrixXcd& h) {
    out.precision(17);
    out << h.rows() << " " << h.cols() << "\n";
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
        for (Eigen::Index c = 0; c < h.cols(); ++c) {
            out << h(r, c).real() << " " << h(r, c).imag();
            out << (c + 1 == h.cols() ? "\n" : " ");
        }
    }
}

Eigen::MatrixXcd load_channel(std::istream& in) {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    if (!(in >> rows >> cols) || rows < 1 || cols < 1) {
        throw config_error("load_channel: bad header");
    }
    Eigen::MatrixXcd h(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            double re = 0.0;
            double im = 0.0;
            if (!(in >> re >> im)) {
                throw config_error("load_channel: truncated matrix body");
            }
            h(r, c) = complex<double>(re, im);
        }
    }
    return h;
}

}  // namespace mimoba
