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

#include "mimoba/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mimoba/errors.hpp"
#include "mimoba/hybrid_factor.hpp"

namespace mimoba {

using std::complex;

namespace {

constexpr double kConditionGuard = 1e12;

// Hermitian PSD inverse with condition-number guard.
Eigen::MatrixXcd guarded_inverse(const Eigen::MatrixXcd& m, const char* what) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo <= 0.0 || hi / lo > kConditionGuard) {
        throw singular_matrix_error(what);
    }
    return m.llt().solve(Eigen::MatrixXcd::Identity(m.rows(), m.cols()));
}

double log2_det_hermitian(const Eigen::MatrixXcd& m, const char* what) {
    Eigen::LLT<Eigen::MatrixXcd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw singular_matrix_error(what);
    }
    const Eigen::MatrixXcd l = llt.matrixL();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        acc += 2.0 * std::log2(l(i, i).real());
    }
    return acc;
}

Eigen::VectorXcd draw_cn(std::mt19937_64& rng, Eigen::Index n, double variance) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(i) = complex<double>(re, im);
    }
    return v;
}

// real-valued Gaussian of the same total variance; deliberately not CSCG
Eigen::VectorXcd draw_real_gaussian(std::mt19937_64& rng, Eigen::Index n, double variance) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(variance));
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = complex<double>(gauss(rng), 0.0);
    }
    return v;
}

}  // namespace

CombinerDesign ideal_combiner(const ChannelDecomposition& decomp) {
    CombinerDesign c;
    c.analog = decomp.u;
    c.digital = Eigen::MatrixXcd::Identity(decomp.n_s, decomp.n_s);
    c.residual = 0.0;
    return c;
}

CombinerDesign factored_combiner(const ChannelDecomposition& decomp, int n_rf, int max_iters,
                                 double tol) {
    const HybridFactorization f = factor(decomp.u, n_rf, max_iters, tol);
    CombinerDesign c;
    c.analog = f.analog;
    c.digital = f.digital;
    c.residual = f.residual;
    return c;
}

Eigen::MatrixXcd LinkModel::phi() const {
    return sigma_n2 * (g * g.adjoint()) + w_d.adjoint() * dq_squared.asDiagonal() * w_d;
}

LinkModel make_link_model(const ChannelDecomposition& decomp, const CombinerDesign& combiner,
                          const BitVector& bits, const QuantTable& table, double sigma_n2,
                          double p, DqForm form, const Eigen::MatrixXcd* h) {
    const int n_s = decomp.n_s;
    if (static_cast<int>(bits.size()) != static_cast<int>(combiner.analog.cols())) {
        throw dimension_error("make_link_model: one ADC resolution per RF path required");
    }
    if (sigma_n2 < 0.0) {
        throw std::domain_error("make_link_model: sigma_n2 must be >= 0");
    }

    Eigen::VectorXd loading;
    if (form == DqForm::loading) {
        loading = loading_terms(combiner.digital.adjoint(), decomp.sigma);
    } else {
        const Eigen::MatrixXcd h_eff =
            h != nullptr
                ? Eigen::MatrixXcd(combiner.analog.adjoint() * (*h))
                : Eigen::MatrixXcd(combiner.analog.adjoint() * decomp.u *
                                   decomp.sigma.asDiagonal() * decomp.f_opt.adjoint());
        loading = (h_eff * h_eff.adjoint()).diagonal().real().array() + 1.0;
    }

    const AqnmModel aqnm = build_aqnm(bits, loading, table);

    // quantized analog-combined channel, then digital pseudo-inverse so K = I
    const Eigen::MatrixXcd m = aqnm.w_alpha.asDiagonal() *
                               (combiner.analog.adjoint() * decomp.u) *
                               decomp.sigma.asDiagonal().toDenseMatrix();
    const Eigen::MatrixXcd c = m.completeOrthogonalDecomposition().pseudoInverse();

    LinkModel model;
    model.sigma = decomp.sigma;
    model.k = c * m;
    model.g = c * aqnm.w_alpha.asDiagonal() * combiner.analog.adjoint();
    model.w_d = c.adjoint();
    model.dq_squared = aqnm.dq_squared;
    model.sigma_n2 = sigma_n2;
    model.p = p;
    if (model.k.rows() != n_s || model.k.cols() != n_s) {
        throw dimension_error("make_link_model: inconsistent dimensions");
    }
    return model;
}

Eigen::MatrixXcd mse_matrix(const LinkModel& model) {
    const auto n_s = model.k.rows();
    const Eigen::MatrixXcd err = model.k - Eigen::MatrixXcd::Identity(n_s, n_s);
    return model.p * (err * err.adjoint()) + model.phi();
}

double mse_delta(const LinkModel& model) {
    return mse_matrix(model).trace().real();
}

Eigen::MatrixXcd crlb(const LinkModel& model) {
    const Eigen::MatrixXcd phi_inv = guarded_inverse(model.phi(), "crlb: Phi near singular");
    const Eigen::MatrixXcd fisher = model.k.adjoint() * phi_inv * model.k;
    return guarded_inverse(fisher, "crlb: Fisher information near singular");
}

double capacity(const LinkModel& model) {
    if (model.p <= 0.0) {
        throw std::domain_error("capacity: p must be > 0");
    }
    const auto n_s = model.k.rows();
    const Eigen::MatrixXcd phi_inv = guarded_inverse(model.phi(), "capacity: Phi near singular");
    const Eigen::MatrixXcd fisher = model.k.adjoint() * phi_inv * model.k;
    return static_cast<double>(n_s) * std::log2(model.p) +
           log2_det_hermitian(
               fisher + (1.0 / model.p) * Eigen::MatrixXcd::Identity(n_s, n_s),
               "capacity: log-det failed");
}

double mse_delta_ideal(const Eigen::VectorXd& sigma, const BitVector& bits,
                       const Eigen::VectorXd& loading, const QuantTable& table,
                       double sigma_n2) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        const double g = g_of_b(bits[static_cast<std::size_t>(i)], table);
        acc += (sigma_n2 + g * loading(i)) / (sigma(i) * sigma(i));
    }
    return acc;
}

double capacity_ideal(const Eigen::VectorXd& sigma, const BitVector& bits,
                      const Eigen::VectorXd& loading, const QuantTable& table, double sigma_n2,
                      double p) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        const double g = g_of_b(bits[static_cast<std::size_t>(i)], table);
        const double q = p * sigma(i) * sigma(i) / (sigma_n2 + g * loading(i));
        acc += std::log2(q + 1.0);
    }
    return acc;
}

WaterfillAllocation waterfill(const Eigen::VectorXd& sigma, double rho, int n_s) {
    if (sigma.size() == 0 || sigma.maxCoeff() <= 0.0) {
        throw std::domain_error("waterfill: at least one sigma_i must be > 0");
    }
    const auto n = sigma.size();
    Eigen::VectorXd inv_gain(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double gain = (rho / n_s) * sigma(i) * sigma(i);
        inv_gain(i) = gain > 0.0 ? 1.0 / gain : std::numeric_limits<double>::infinity();
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return inv_gain(a) < inv_gain(b); });

    // fill the k cheapest channels; shrink k until the water level clears them all
    double level = 0.0;
    Eigen::Index active = 0;
    double prefix = 0.0;
    for (Eigen::Index k = 1; k <= n; ++k) {
        const double cost = inv_gain(order[static_cast<std::size_t>(k - 1)]);
        if (!std::isfinite(cost)) {
            break;
        }
        prefix += cost;
        const double candidate = (static_cast<double>(n_s) + prefix) / static_cast<double>(k);
        if (candidate > cost) {
            level = candidate;
            active = k;
        }
    }

    WaterfillAllocation alloc;
    alloc.eps = Eigen::VectorXd::Zero(n);
    alloc.water_level = level;
    for (Eigen::Index k = 0; k < active; ++k) {
        const Eigen::Index i = order[static_cast<std::size_t>(k)];
        alloc.eps(i) = std::max(0.0, level - inv_gain(i));
    }
    return alloc;
}

double capacity_inf(const Eigen::VectorXd& sigma, double rho, int n_s,
                    const WaterfillAllocation* eps) {
    if (rho < 0.0) {
        throw std::domain_error("capacity_inf: rho must be >= 0");
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        const double e = eps != nullptr ? eps->eps(i) : 1.0;
        acc += std::log2(e * (rho / n_s) * sigma(i) * sigma(i) + 1.0);
    }
    return acc;
}

Eigen::VectorXcd simulate_rx(const Eigen::VectorXcd& x, const LinkModel& model,
                             std::mt19937_64& rng) {
    const Eigen::VectorXcd n = draw_cn(rng, model.g.cols(), model.sigma_n2);
    Eigen::VectorXcd nq = draw_cn(rng, model.dq_squared.size(), 1.0);
    nq.array() *= model.dq_squared.array().sqrt();
    return model.k * x + model.g * n + model.w_d.adjoint() * nq;
}

double empirical_mse(const LinkModel& model, int trials, std::mt19937_64& rng) {
    if (trials < 1) {
        throw config_error("empirical_mse: trials must be >= 1");
    }
    const auto n_s = model.k.cols();
    double sum = 0.0;
    double comp = 0.0;  // Kahan correction
    for (int t = 0; t < trials; ++t) {
        const Eigen::VectorXcd x = draw_cn(rng, n_s, model.p);
        const Eigen::VectorXcd y = simulate_rx(x, model, rng);
        const double term = (y - x).squaredNorm() - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum / trials;
}

double pseudo_covariance_check(const LinkModel& model, int trials, std::mt19937_64& rng,
                               bool circular) {
    if (trials < 1) {
        throw config_error("pseudo_covariance_check: trials must be >= 1");
    }
    const auto n_s = model.k.rows();
    Eigen::MatrixXcd pseudo = Eigen::MatrixXcd::Zero(n_s, n_s);
    for (int t = 0; t < trials; ++t) {
        const Eigen::VectorXcd n = circular
                                       ? draw_cn(rng, model.g.cols(), model.sigma_n2)
                                       : draw_real_gaussian(rng, model.g.cols(), model.sigma_n2);
        Eigen::VectorXcd w = circular ? draw_cn(rng, model.dq_squared.size(), 1.0)
                                      : draw_real_gaussian(rng, model.dq_squared.size(), 1.0);
        w.array() *= model.dq_squared.array().sqrt();
        const Eigen::VectorXcd n1 = model.g * n + model.w_d.adjoint() * w;
        pseudo.noalias() += n1 * n1.transpose();
    }
    pseudo /= static_cast<double>(trials);
    return pseudo.cwiseAbs().maxCoeff();
}

}  // namespace mimoba
