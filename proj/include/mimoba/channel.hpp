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

#ifndef MIMOBA_CHANNEL_HPP
#define MIMOBA_CHANNEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <random>

namespace mimoba {

/// Uniform linear array geometry at both link ends.
struct ArrayConfig {
    int num_tx = 32;
    int num_rx = 64;
    double element_spacing = 0.5;  // in wavelengths
};

/// Geometric clustered LOS channel: one deterministic boresight ray plus
/// scattered rays grouped in clusters, 10 dB power decay per cluster.
struct ChannelParams {
    ArrayConfig array;
    int num_clusters = 2;
    int rays_per_cluster = 10;
    double angle_spread = 0.1;  // radians, intra-cluster
    double carrier_ghz = 28.0;
    std::uint64_t seed = 1;
};

/// Truncated SVD of the channel, H ~= u * diag(sigma) * f_opt^H.
/// Column phases are fixed so the largest-magnitude entry of each u column
/// is real positive.
struct ChannelDecomposition {
    Eigen::MatrixXcd u;      // N_r x N_s, orthonormal columns
    Eigen::VectorXd sigma;   // length N_s, descending, >= 0
    Eigen::MatrixXcd f_opt;  // N_t x N_s, orthonormal columns
    int n_s = 0;
};

/// Array response of an n-element ULA, entries (1/sqrt n) exp(j 2 pi d k sin a).
Eigen::VectorXcd ula_response(double angle, int n_elements, double spacing);

Eigen::MatrixXcd generate_channel(const ChannelParams& params, std::mt19937_64& rng);

/// Convenience overload seeding the stream from params.seed.
Eigen::MatrixXcd generate_channel(const ChannelParams& params);

/// Leading n_s singular triplets. sigma_floor > 0 discards trailing paths
/// with sigma_i < sigma_floor * sigma_1 (default keeps all n_s).
ChannelDecomposition svd_decompose(const Eigen::MatrixXcd& h, int n_s, double sigma_floor = 0.0);

/// Text fixture format: header "N_r N_t", then row-major "re im" pairs.
void save_channel(std::ostream& out, const Eigen::MatrixXcd& h);
Eigen::MatrixXcd load_channel(std::istream& in);

}  // namespace mimoba

#endif
