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

#include "mimoba/quantization.hpp"

#include <cmath>

#include "mimoba/errors.hpp"

namespace mimoba {

double f_of_b(int b, const QuantTable& table) {
    if (b < 1) {
        throw unsupported_resolution_error("f_of_b: b must be >= 1");
    }
    if (table.mode == QuantMode::table) {
        const auto it = table.f_values.find(b);
        if (it == table.f_values.end()) {
            throw unsupported_resolution_error("f_of_b: b outside table domain");
        }
        return it->second;
    }
    const double g = table.approx_c * std::exp2(-table.approx_d * b);
    return g / (1.0 + g);
}

double g_of_b(int b, const QuantTable& table) {
    const double f = f_of_b(b, table);
    return f / (1.0 - f);
}

Eigen::VectorXd loading_terms(const Eigen::MatrixXcd& w_d, const Eigen::VectorXd& sigma) {
    if (w_d.rows() != sigma.size()) {
        throw dimension_error("loading_terms: W_D rows must match sigma length");
    }
    const Eigen::MatrixXcd scaled = sigma.array().square().matrix().asDiagonal() * w_d;
    Eigen::VectorXd l(w_d.cols());
    for (Eigen::Index i = 0; i < w_d.cols(); ++i) {
        l(i) = 1.0 + (w_d.col(i).adjoint() * scaled.col(i)).real()(0);
    }
    return l;
}

AqnmModel build_aqnm(const BitVector& bits, const Eigen::VectorXd& loading,
                     const QuantTable& table) {
    if (static_cast<Eigen::Index>(bits.size()) != loading.size()) {
        throw dimension_error("build_aqnm: bits and loading lengths differ");
    }
    AqnmModel m;
    const auto n = loading.size();
    m.w_alpha.resize(n);
    m.w_one_minus_alpha.resize(n);
    m.dq_squared.resize(n);
    m.loading = loading;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double f = f_of_b(bits[static_cast<std::size_t>(i)], table);
        m.w_alpha(i) = 1.0 - f;
        m.w_one_minus_alpha(i) = f;
        m.dq_squared(i) = f * (1.0 - f) * loading(i);
    }
    return m;
}

double adc_power(const BitVector& bits, const PowerModel& pm) {
    double total = 0.0;
    for (const int b : bits) {
        total += pm.c_per_step * pm.f_s * std::exp2(b);
    }
    return total;
}

}  // namespace mimoba
