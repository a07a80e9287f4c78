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

#ifndef MIMOBA_METRICS_HPP
#define MIMOBA_METRICS_HPP

#include <Eigen/Dense>
#include <random>

#include "mimoba/channel.hpp"
#include "mimoba/quantization.hpp"

namespace mimoba {

/// Receive chain used by the link metrics. "ideal" applies the left
/// singular vectors directly as the analog stage (digital factor identity);
/// "factored" carries a constant-modulus analog factor and its digital
/// completion, with the factorization residual propagating into the model.
struct CombinerDesign {
    Eigen::MatrixXcd analog;   // N_r x N_rs
    Eigen::MatrixXcd digital;  // N_rs x N_s, analog * digital ~= U
    double residual = 0.0;
};

CombinerDesign ideal_combiner(const ChannelDecomposition& decomp);
CombinerDesign factored_combiner(const ChannelDecomposition& decomp, int n_rf,
                                 int max_iters = 200, double tol = 1e-9);

/// Which diagonal feeds D_q^2: the loading form diag(I + W_D^H Sigma^2 W_D)
/// or the analog-combined channel form diag(W_A^H H (W_A^H H)^H + I).
enum class DqForm { loading, channel };

/// Baseband observation y = K x + n1, n1 = G n + W_D^H n_q.
struct LinkModel {
    Eigen::VectorXd sigma;       // singular values, length N_s
    Eigen::MatrixXcd k;          // N_s x N_s symbol gain
    Eigen::MatrixXcd g;          // N_s x N_r noise gain
    Eigen::MatrixXcd w_d;        // N_rs x N_s effective digital combiner
    Eigen::VectorXd dq_squared;  // N_rs quantization noise variances
    double sigma_n2 = 1.0;
    double p = 1.0;

    /// Noise covariance Phi = sigma_n^2 G G^H + W_D^H diag(dq^2) W_D.
    Eigen::MatrixXcd phi() const;
};

/// Builds the link model with the digital stage completed so that K = I
/// (pseudo-inverse equalization of the quantized, analog-combined channel).
/// h is only consulted for DqForm::channel; when absent the truncated
/// reconstruction u * diag(sigma) * f_opt^H stands in.
LinkModel make_link_model(const ChannelDecomposition& decomp, const CombinerDesign& combiner,
                          const BitVector& bits, const QuantTable& table, double sigma_n2,
                          double p, DqForm form = DqForm::loading,
                          const Eigen::MatrixXcd* h = nullptr);

/// MSE(x) = p (K - I)(K - I)^H + sigma_n^2 G G^H + W_D^H D_q^2 W_D.
Eigen::MatrixXcd mse_matrix(const LinkModel& model);
double mse_delta(const LinkModel& model);

/// (K^H Phi^-1 K)^-1 for the linear observation model.
Eigen::MatrixXcd crlb(const LinkModel& model);

/// N_s log2 p + log2 det(crlb^-1 + (1/p) I), in bits per channel use.
double capacity(const LinkModel& model);

/// Closed diagonal forms for the ideal structure (K = I, W_A^H = U^H):
/// delta = Sum (sigma_n^2 + g(b_i) l_i) / sigma_i^2,
/// C = Sum log2(p sigma_i^2 / (sigma_n^2 + g(b_i) l_i) + 1).
double mse_delta_ideal(const Eigen::VectorXd& sigma, const BitVector& bits,
                       const Eigen::VectorXd& loading, const QuantTable& table, double sigma_n2);
double capacity_ideal(const Eigen::VectorXd& sigma, const BitVector& bits,
                      const Eigen::VectorXd& loading, const QuantTable& table, double sigma_n2,
                      double p);

/// Transmit power split across eigenchannels with gains (rho/N_s) sigma_i^2.
struct WaterfillAllocation {
    Eigen::VectorXd eps;  // nonnegative, sums to n_s
    double water_level = 0.0;
};

WaterfillAllocation waterfill(const Eigen::VectorXd& sigma, double rho, int n_s);

/// Infinite-resolution capacity Sum log2(eps_i (rho/N_s) sigma_i^2 + 1);
/// uniform allocation (eps_i = 1) when eps is null.
double capacity_inf(const Eigen::VectorXd& sigma, double rho, int n_s,
                    const WaterfillAllocation* eps = nullptr);

/// One draw of y = K x + G n + W_D^H D_q w.
Eigen::VectorXcd simulate_rx(const Eigen::VectorXcd& x, const LinkModel& model,
                             std::mt19937_64& rng);

/// Average ||y - x||^2 over trials with x ~ CN(0, p I).
double empirical_mse(const LinkModel& model, int trials, std::mt19937_64& rng);

/// Max-abs entry of the empirical pseudo-covariance E[n1 n1^T]. Circular
/// inputs should drive it to zero; circular=false injects real Gaussian
/// noise as a negative control.
double pseudo_covariance_check(const LinkModel& model, int trials, std::mt19937_64& rng,
                               bool circular = true);

}  // namespace mimoba

#endif
