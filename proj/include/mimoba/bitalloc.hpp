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

#ifndef MIMOBA_BITALLOC_HPP
#define MIMOBA_BITALLOC_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <functional>

#include "mimoba/quantization.hpp"

namespace mimoba {

/// All bit vectors in {1..n_b}^n_s within the ADC power budget, in
/// lexicographic order. Materialized up to kMaterializeLimit members;
/// beyond that only (n_s, n_b, budget) are kept and for_each re-enumerates.
struct BSet {
    static constexpr std::size_t kMaterializeLimit = std::size_t{1} << 24;

    std::vector<BitVector> vectors;  // empty when streaming
    PowerModel budget;
    int n_s = 0;
    int n_b = 0;
    std::size_t count = 0;

    bool streaming() const { return vectors.empty() && count > 0; }
    std::size_t size() const { return count; }

    /// Visits every feasible vector in lexicographic order.
    void for_each(const std::function<void(const BitVector&)>& visit) const;
};

BSet enumerate_bset(int n_s, int n_b, const PowerModel& pm);

enum class BaScheme { crlb, es_mse, es_capacity, mmqse, fixed };

struct BaResult {
    BitVector chosen;
    double score = 0.0;           // K_f value or metric value at the optimum
    std::size_t evaluations = 0;  // mu or gamma
    BaScheme scheme = BaScheme::fixed;
};

/// K_f(b) = Sum_i p sigma_i^2 / (sigma_n^2 + g(b_i) l_i). The factor p
/// scales every score equally and never moves the argmax.
double kf_score(const BitVector& bits, const Eigen::VectorXd& sigma, double sigma_n2,
                const Eigen::VectorXd& loading, const QuantTable& table, double p = 1.0);

/// Argmax of kf_score over the feasible set; ties resolve to the
/// lexicographically smallest vector. Results are identical for any
/// parallelism degree.
BaResult crlb_ba(const Eigen::VectorXd& sigma, const Eigen::VectorXd& loading,
                 const QuantTable& table, double sigma_n2, const BSet& bset, int n_threads = 1);

enum class EsMetric { mse_delta, capacity };

/// Exhaustive search over the true link metric: argmin of the analytic MSE
/// trace or argmax of capacity, one evaluation per feasible vector.
BaResult es_ba(EsMetric metric, const std::function<double(const BitVector&)>& evaluate,
               const BSet& bset, int n_threads = 1);

/// rev-MMQSE baseline: b_i = offset + log2(||row_i||^(2/3) / Sum_j
/// ||row_j||^(2/3)); binary search finds the largest offset whose
/// rounded-and-clamped integer vector stays within budget.
BaResult mmqse_ba(const Eigen::MatrixXcd& h_eff, int n_b, const PowerModel& pm);

}  // namespace mimoba

#endif
