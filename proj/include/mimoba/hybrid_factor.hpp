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

#ifndef MIMOBA_HYBRID_FACTOR_HPP
#define MIMOBA_HYBRID_FACTOR_HPP

#include <Eigen/Dense>
#include <vector>

namespace mimoba {

/// target ~= analog * digital, where every analog entry has magnitude
/// 1/sqrt(analog rows) and digital is rescaled so that
/// ||analog * digital||_F^2 equals the number of target columns.
struct HybridFactorization {
    Eigen::MatrixXcd analog;
    Eigen::MatrixXcd digital;
    double residual = 0.0;  // ||target - analog*digital||_F after normalization
    int iterations = 0;
    std::vector<double> residual_history;  // non-increasing, pre-normalization
};

/// Alternating minimization: least-squares digital update, then entrywise
/// phase projection of the analog factor onto the constant-modulus set.
/// An analog update is only accepted if it does not increase the residual.
HybridFactorization factor(const Eigen::MatrixXcd& target,
                           int n_rf,
                           int max_iters = 200,
                           double tol = 1e-9);

}  // namespace mimoba

#endif
