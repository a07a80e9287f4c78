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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mimoba/channel.hpp"
#include "mimoba/errors.hpp"

using namespace mimoba;

TEST_CASE("ula_response boresight is uniform") {
    const auto a = ula_response(0.0, 4, 0.5);
    for (int k = 0; k < 4; ++k) {
        CHECK(a(k).real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(a(k).imag() == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("ula_response endfire two elements") {
    const auto a = ula_response(std::numbers::pi / 2.0, 2, 0.5);
    const double c = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(a(0) - std::complex<double>(c, 0)) < 1e-12);
    CHECK(std::abs(a(1) - std::complex<double>(-c, 0)) < 1e-12);
}

TEST_CASE("ula_response is unit norm with constant-modulus entries") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ang(-std::numbers::pi / 2, std::numbers::pi / 2);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 8;
        const auto a = ula_response(ang(rng), n, 0.5);
        CHECK(std::abs(a.norm() - 1.0) < 1e-12);
        for (int k = 0; k < n; ++k) {
            CHECK(std::abs(std::abs(a(k)) - 1.0 / std::sqrt(double(n))) < 1e-12);
        }
    }
}

TEST_CASE("ula_response rejects empty array") {
    CHECK_THROWS_AS(ula_response(0.0, 0, 0.5), dimension_error);
}

TEST_CASE("single-ray channel is a scaled outer product") {
    ChannelParams p;
    p.array.num_tx = 4;
    p.array.num_rx = 6;
    p.num_clusters = 1;
    p.rays_per_cluster = 1;
    const auto h = generate_channel(p);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
    const auto sv = svd.singularValues();
    CHECK(sv(0) == doctest::Approx(std::sqrt(24.0)).epsilon(1e-12));
    CHECK(sv(1) < 1e-12 * sv(0));
}

TEST_CASE("channel generation is deterministic in the seed") {
    ChannelParams p;
    p.array.num_tx = 8;
    p.array.num_rx = 8;
    p.seed = 42;
    const auto h1 = generate_channel(p);
    const auto h2 = generate_channel(p);
    CHECK((h1 - h2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("two-cluster channel has numerical rank >= 2 almost always") {
    ChannelParams p;  // defaults carry the 32x64, 2-cluster geometry
    std::mt19937_64 rng(2026);
    int ok = 0;
    const int draws = 1000;
    for (int i = 0; i < draws; ++i) {
        const auto h = generate_channel(p, rng);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
        const auto sv = svd.singularValues();
        if (sv(1) / sv(0) > 1e-8) {
            ++ok;
        }
    }
    CHECK(ok >= draws * 99 / 100);
}

TEST_CASE("svd of a diagonal matrix") {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    h(0, 0) = 3.0;
    h(1, 1) = 1.0;
    const auto d = svd_decompose(h, 2);
    CHECK(d.sigma(0) == doctest::Approx(3.0));
    CHECK(d.sigma(1) == doctest::Approx(1.0));
    // phase fix makes u exactly the identity, not just up to phase
    CHECK((d.u - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("svd of identity keeps orthonormal truncation") {
    const Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(4, 4);
    const auto d = svd_decompose(h, 2);
    CHECK(d.sigma(0) == doctest::Approx(1.0));
    CHECK(d.sigma(1) == doctest::Approx(1.0));
    CHECK((d.u.adjoint() * d.u - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-10);
}

TEST_CASE("full-rank svd reconstructs the channel") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd h(6, 4);
    for (int r = 0; r < 6; ++r) {
        for (int c = 0; c < 4; ++c) {
            h(r, c) = std::complex<double>(g(rng), g(rng));
        }
    }
    const auto d = svd_decompose(h, 4);
    const Eigen::MatrixXcd recon = d.u * d.sigma.asDiagonal() * d.f_opt.adjoint();
    CHECK((h - recon).norm() <= 1e-10 * h.norm());
    CHECK((d.u.adjoint() * d.u - Eigen::MatrixXcd::Identity(4, 4)).norm() <= 1e-10);
    CHECK((d.f_opt.adjoint() * d.f_opt - Eigen::MatrixXcd::Identity(4, 4)).norm() <= 1e-10);
}

TEST_CASE("truncated reconstruction error matches the tail singular values") {
    ChannelParams p;
    p.array.num_tx = 8;
    p.array.num_rx = 12;
    p.seed = 11;
    const auto h = generate_channel(p);
    const auto full = svd_decompose(h, 8);
    const int n_s = 3;
    const auto trunc = svd_decompose(h, n_s);
    const Eigen::MatrixXcd recon =
        trunc.u * trunc.sigma.asDiagonal() * trunc.f_opt.adjoint();
    const double tail = full.sigma.tail(8 - n_s).squaredNorm();
    CHECK(std::abs((h - recon).norm() - std::sqrt(tail)) < 1e-8);
}

TEST_CASE("svd singular values descend and a floor can trim tiny paths") {
    ChannelParams p;
    p.array.num_tx = 4;
    p.array.num_rx = 6;
    p.num_clusters = 1;
    p.rays_per_cluster = 1;
    const auto h = generate_channel(p);
    const auto d = svd_decompose(h, 3, 1e-6);
    CHECK(d.n_s == 1);  // rank-1 channel, trailing paths below the floor

    ChannelParams q;
    q.array.num_tx = 8;
    q.array.num_rx = 8;
    q.seed = 3;
    const auto d2 = svd_decompose(generate_channel(q), 6);
    for (int i = 1; i < d2.n_s; ++i) {
        CHECK(d2.sigma(i) <= d2.sigma(i - 1));
        CHECK(d2.sigma(i) >= 0.0);
    }
}

TEST_CASE("svd rejects oversized stream counts") {
    const Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(4, 3);
    CHECK_THROWS_AS(svd_decompose(h, 4), dimension_error);
}

TEST_CASE("channel text fixtures round-trip exactly") {
    ChannelParams p;
    p.array.num_tx = 5;
    p.array.num_rx = 7;
    p.seed = 9;
    const auto h = generate_channel(p);
    std::stringstream buf;
    save_channel(buf, h);
    const auto back = load_channel(buf);
    CHECK(back.rows() == h.rows());
    CHECK(back.cols() == h.cols());
    CHECK((h - back).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("load_channel rejects malformed input") {
    std::stringstream bad("3 0\n");
    CHECK_THROWS_AS(load_channel(bad), config_error);
    std::stringstream truncated("2 2\n1 0 0 1\n");
    CHECK_THROWS_AS(load_channel(truncated), config_error);
}

TEST_CASE("invalid channel parameters are rejected") {
    ChannelParams p;
    p.array.num_tx = 0;
    CHECK_THROWS_AS(generate_channel(p), config_error);
    ChannelParams q;
    q.num_clusters = 0;
    CHECK_THROWS_AS(generate_channel(q), config_error);
}
