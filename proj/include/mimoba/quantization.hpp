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

#ifndef MIMOBA_QUANTIZATION_HPP
#define MIMOBA_QUANTIZATION_HPP

#include <Eigen/Dense>
#include <map>
#include <vector>

namespace mimoba {

/// One ADC resolution per RF path, each entry in [1, N_b].
using BitVector = std::vector<int>;

enum class QuantMode { table, approximation };

/// Distortion ratio f(b) of an MMSE non-uniform quantizer: table of the
/// published values for b in 1..5, plus the exponential fit
/// g(b) = approx_c * 2^(-approx_d * b), f = g/(1+g), for larger b.
struct QuantTable {
    std::map<int, double> f_values = {
        {1, 0.3634}, {2, 0.1175}, {3, 0.03454}, {4, 0.009497}, {5, 0.002499}};
    double approx_c = 2.40667;
    double approx_d = 2.0765;
    QuantMode mode = QuantMode::table;
};

/// Ratio of mean-square quantization error to signal power, in (0, 1).
double f_of_b(int b, const QuantTable& table);

/// g(b) = f(b) / (1 - f(b)); strictly decreasing in b.
double g_of_b(int b, const QuantTable& table);

/// l_i = 1 + [W_D^H diag(sigma^2) W_D]_ii, the per-path signal loading seen
/// by the quantizer through the digital combiner.
Eigen::VectorXd loading_terms(const Eigen::MatrixXcd& w_d, const Eigen::VectorXd& sigma);

/// Diagonal AQNM matrices for a given allocation. All diagonals are stored
/// as vectors; dq_squared(i) = f(b_i) * (1 - f(b_i)) * l_i.
struct AqnmModel {
    Eigen::VectorXd w_alpha;            // 1 - f(b_i)
    Eigen::VectorXd w_one_minus_alpha;  // f(b_i)
    Eigen::VectorXd dq_squared;
    Eigen::VectorXd loading;
};

AqnmModel build_aqnm(const BitVector& bits, const Eigen::VectorXd& loading,
                     const QuantTable& table);

/// ADC power draw Sum_i c * f_s * 2^b_i.
struct PowerModel {
    double c_per_step = 1.0;  // watts per conversion step
    double f_s = 1.0;         // Hz
    double p_adc = 0.0;       // budget, watts
};

double adc_power(const BitVector& bits, const PowerModel& pm);

}  // namespace mimoba

#endif
