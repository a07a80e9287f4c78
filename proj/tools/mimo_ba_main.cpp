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

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "mimoba/errors.hpp"
#include "mimoba/experiment.hpp"

namespace {

int thread_cap() {
    const char* env = std::getenv("MIMO_BA_THREADS");
    if (env == nullptr) {
        return 1;
    }
    const int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

void print_complexity(const mimoba::ExperimentConfig& cfg, long long gamma, long long mu,
                      std::ostream& out) {
    using mimoba::Scheme;
    for (const Scheme s : {Scheme::es, Scheme::crlb, Scheme::mmqse}) {
        const auto r = mimoba::complexity_counts(s, cfg.n_s, cfg.n_b, gamma, mu);
        out << scheme_name(s) << ": complex_mults=" << r.complex_mults
            << " real_mults=" << r.real_mults << " complex_adds=" << r.complex_adds
            << " real_adds=" << r.real_adds << " gamma=" << r.gamma << " mu=" << r.mu
            << " t=" << r.t_order << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SNR-sweep link simulator with variable-resolution ADC bit allocation"};

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    bool complexity_only = false;

    app.add_option("--config", config_path, "experiment config file (key = value lines)");
    app.add_option("--out", out_path, "output CSV path (default: stdout)");
    app.add_option("--seed", seed, "override the config seed");
    app.add_option("--trials", trials, "override Monte-Carlo trials per point");
    app.add_flag("--complexity-only", complexity_only,
                 "print operation counts for the configured sizes and exit");

    CLI11_PARSE(app, argc, argv);

    mimoba::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "cannot open config: " << config_path << "\n";
                return 2;
            }
            cfg = mimoba::parse_config(in);
        }
        if (seed.has_value()) {
            cfg.seed = *seed;
        }
        if (trials.has_value()) {
            cfg.trials = *trials;
        }
    } catch (const mimoba::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (complexity_only) {
            // gamma and mu both equal the feasible-set size when measured here
            mimoba::PowerModel pm = cfg.power;
            if (pm.p_adc <= 0.0) {
                pm.p_adc = cfg.n_s * pm.c_per_step * pm.f_s * 8.0;
            }
            const auto bset = mimoba::enumerate_bset(cfg.n_s, cfg.n_b, pm);
            const auto count = static_cast<long long>(bset.size());
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                print_complexity(cfg, count, count, out);
            } else {
                print_complexity(cfg, count, count, std::cout);
            }
            return 0;
        }

        const auto rows = mimoba::run_experiment(cfg, thread_cap());
        // the infinite-resolution rows carry no ADC, so they never decide
        // whether the budget was payable
        bool any_quantized = false;
        bool any_feasible = false;
        for (const auto& r : rows) {
            if (r.scheme == mimoba::Scheme::infinite) {
                continue;
            }
            any_quantized = true;
            any_feasible = any_feasible || r.feasible;
        }
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "cannot open output: " << out_path << "\n";
                return 2;
            }
            mimoba::emit_csv(rows, out);
        } else {
            mimoba::emit_csv(rows, std::cout);
        }
        return (!any_quantized || any_feasible) ? 0 : 3;
    } catch (const mimoba::infeasible_budget_error& e) {
        std::cerr << "infeasible budget: " << e.what() << "\n";
        return 3;
    } catch (const mimoba::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
