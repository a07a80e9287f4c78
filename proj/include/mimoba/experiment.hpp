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

#ifndef MIMOBA_EXPERIMENT_HPP
#define MIMOBA_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mimoba/bitalloc.hpp"
#include "mimoba/channel.hpp"
#include "mimoba/quantization.hpp"

namespace mimoba {

enum class Scheme { one_bit, two_bit, infinite, es, crlb, mmqse };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

/// SNR sweep over a single channel realization. SNR is rho = 1 / sigma_n^2
/// with unit total transmit power split evenly across streams (p = 1/n_s).
struct ExperimentConfig {
    ChannelParams channel;
    int n_s = 8;
    int n_b = 4;
    PowerModel power;  // p_adc = 0 means "default to n_s * c * f_s * 2^3"
    std::vector<double> snr_db = {-10, -5, 0, 5, 10, 15, 20, 25, 30};
    std::vector<Scheme> schemes = {Scheme::one_bit, Scheme::two_bit, Scheme::infinite,
                                   Scheme::es,      Scheme::crlb,    Scheme::mmqse};
    int trials = 0;  // 0 disables the empirical-MSE column
    std::uint64_t seed = 1;
    bool factored = false;  // false: ideal combiner (W_A^H = U^H)
    QuantTable table;
};

/// Flat "key = value" format, "#" comments, comma-separated lists.
/// Quantizer overrides via keys f_b1 .. f_bN.
ExperimentConfig parse_config(std::istream& in);

struct ResultRow {
    double snr_db = 0.0;
    Scheme scheme = Scheme::crlb;
    int n_s = 0;
    BitVector bits;  // empty for the infinite-resolution line
    std::optional<double> delta_analytic;
    std::optional<double> delta_empirical;
    std::optional<double> capacity_bits;
    std::optional<double> adc_power_watts;
    bool feasible = true;
};

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, int n_threads = 1);

/// header: snr_db,scheme,n_s,bits,delta_analytic,delta_empirical,
///         capacity_bits,adc_power_watts,feasible
void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out);
std::vector<ResultRow> parse_csv(std::istream& in);

/// Closed-form operation counts for one BA scheme; gamma counts full-metric
/// evaluations (ES) and mu counts K_f evaluations (CRLB scheme).
struct ComplexityReport {
    Scheme scheme = Scheme::crlb;
    long long complex_mults = 0;
    long long real_mults = 0;
    long long complex_adds = 0;
    long long real_adds = 0;
    long long gamma = 0;
    long long mu = 0;
    int t_order = 5;
};

ComplexityReport complexity_counts(Scheme scheme, int n_s, int n_b, long long gamma,
                                   long long mu, int t_order = 5);

}  // namespace mimoba

#endif
