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

#include "mimoba/hybrid_factor.hpp"

#include <cmath>
#include <numbers>

#include "mimoba/errors.hpp"

namespace mimoba {

using std::complex;

namespace {

// project every entry onto the circle of radius cm, keeping its phase
Eigen::MatrixXcd phase_project(const Eigen::MatrixXcd& m, double cm) {
    return m.unaryExpr([cm](complex<double> v) {
        const double mag = std::abs(v);
        return mag > 0.0 ? complex<double>(cm * v.real() / mag, cm * v.imag() / mag)
                         : complex<double>(cm, 0.0);
    });
}

}  // namespace

HybridFactorization factor(const Eigen::MatrixXcd& target, int n_rf, int max_iters, double tol) {
    const auto rows = target.rows();
    const auto cols = target.cols();
    if (n_rf < cols) {
        throw dimension_error("factor: n_rf must be >= number of target columns");
    }
    const double gram_err =
        (target.adjoint() * target - Eigen::MatrixXcd::Identity(cols, cols)).cwiseAbs().maxCoeff();
    if (gram_err > 1e-8) {
        throw config_error("factor: target columns must be orthonormal");
    }

    const double cm = 1.0 / std::sqrt(static_cast<double>(rows));

    // seed the analog factor with DFT phases: full rank, and exactly unitary
    // when rows == n_rf, so constant-modulus unitary targets converge at once
    Eigen::MatrixXcd analog(rows, n_rf);
    for (int j = 0; j < n_rf; ++j) {
        for (Eigen::Index k = 0; k < rows; ++k) {
            analog(k, j) =
                std::polar(cm, 2.0 * std::numbers::pi * static_cast<double>(k) * j / rows);
        }
    }

    HybridFactorization result;
    Eigen::MatrixXcd digital = analog.completeOrthogonalDecomposition().solve(target);
    double residual = (target - analog * digital).norm();
    result.residual_history.push_back(residual);

    int iter = 0;
    for (; iter < max_iters; ++iter) {
        const Eigen::MatrixXcd analog_next = phase_project(target * digital.adjoint(), cm);
        const Eigen::MatrixXcd digital_next =
            analog_next.completeOrthogonalDecomposition().solve(target);
        const double residual_next = (target - analog_next * digital_next).norm();
        if (residual_next > residual) {
            break;  // keep the previous iterate
        }
        const double improvement = residual - residual_next;
        analog = analog_next;
        digital = digital_next;
        residual = residual_next;
        result.residual_history.push_back(residual);
        if (improvement < tol) {
            ++iter;
            break;
        }
    }

    // power normalization acts on the digital factor only
    const double product_norm = (analog * digital).norm();
    if (product_norm > 0.0) {
        digital *= std::sqrt(static_cast<double>(cols)) / product_norm;
    }

    result.analog = std::move(analog);
    result.digital = std::move(digital);
    result.residual = (target - result.analog * result.digital).norm();
    result.iterations = iter;
    return result;
}

}  // namespace mimoba
