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

#include "mimoba/bitalloc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mimoba/errors.hpp"

namespace mimoba {

namespace {

// lexicographic enumeration of {1..n_b}^n_s with prefix-power pruning
void enumerate_rec(int depth, int n_s, int n_b, double unit, double p_adc, double used,
                   BitVector& bits, const std::function<void(const BitVector&)>& visit) {
    if (depth == n_s) {
        visit(bits);
        return;
    }
    const double tail_min = unit * 2.0 * (n_s - depth - 1);  // all-ones completion
    for (int b = 1; b <= n_b; ++b) {
        const double cost = used + unit * std::exp2(b);
        if (cost + tail_min > p_adc) {
            break;  // larger b only costs more
        }
        bits[static_cast<std::size_t>(depth)] = b;
        enumerate_rec(depth + 1, n_s, n_b, unit, p_adc, cost, bits, visit);
    }
}

void enumerate_feasible(int n_s, int n_b, const PowerModel& pm,
                        const std::function<void(const BitVector&)>& visit) {
    BitVector bits(static_cast<std::size_t>(n_s), 1);
    enumerate_rec(0, n_s, n_b, pm.c_per_step * pm.f_s, pm.p_adc, 0.0, bits, visit);
}

}  // namespace

void BSet::for_each(const std::function<void(const BitVector&)>& visit) const {
    if (!vectors.empty()) {
        for (const auto& b : vectors) {
            visit(b);
        }
        return;
    }
    enumerate_feasible(n_s, n_b, budget, visit);
}

BSet enumerate_bset(int n_s, int n_b, const PowerModel& pm) {
    if (n_s < 1 || n_b < 1) {
        throw config_error("enumerate_bset: n_s and n_b must be >= 1");
    }
    BSet set;
    set.budget = pm;
    set.n_s = n_s;
    set.n_b = n_b;

    const double cardinality = std::pow(static_cast<double>(n_b), n_s);
    const bool materialize = cardinality <= static_cast<double>(BSet::kMaterializeLimit);

    enumerate_feasible(n_s, n_b, pm, [&](const BitVector& b) {
        ++set.count;
        if (materialize) {
            set.vectors.push_back(b);
        }
    });
    if (set.count == 0) {
        throw infeasible_budget_error("enumerate_bset: no bit vector fits the ADC budget");
    }
    return set;
}

double kf_score(const BitVector& bits, const Eigen::VectorXd& sigma, double sigma_n2,
                const Eigen::VectorXd& loading, const QuantTable& table, double p) {
    if (sigma_n2 < 0.0) {
        throw std::domain_error("kf_score: sigma_n2 must be >= 0");
    }
    if (static_cast<Eigen::Index>(bits.size()) != sigma.size() ||
        sigma.size() != loading.size()) {
        throw dimension_error("kf_score: bits, sigma and loading lengths differ");
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        const double g = g_of_b(bits[static_cast<std::size_t>(i)], table);
        acc += p * sigma(i) * sigma(i) / (sigma_n2 + g * loading(i));
    }
    return acc;
}

namespace {

struct ScanBest {
    double score;
    std::size_t index;
    BitVector bits;
};

// deterministic argbest over the feasible set; lower index wins ties
BaResult scan_bset(const BSet& bset, bool maximize,
                   const std::function<double(const BitVector&)>& score_fn, int n_threads,
                   BaScheme scheme) {
    if (bset.size() == 0) {
        throw infeasible_budget_error("bit allocation search: empty feasible set");
    }
    const auto better = [maximize](double a, double b) { return maximize ? a > b : a < b; };

    ScanBest best{0.0, 0, {}};
    bool have_best = false;

    if (bset.streaming() || n_threads <= 1 || bset.vectors.size() < 2) {
        std::size_t index = 0;
        bset.for_each([&](const BitVector& b) {
            const double s = score_fn(b);
            if (!have_best || better(s, best.score)) {
                best = ScanBest{s, index, b};
                have_best = true;
            }
            ++index;
        });
    } else {
        const std::size_t n = bset.vectors.size();
        const std::size_t workers =
            std::min<std::size_t>(static_cast<std::size_t>(n_threads), n);
        std::vector<ScanBest> partial(workers, ScanBest{0.0, 0, {}});
        std::vector<char> filled(workers, 0);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                const std::size_t lo = n * w / workers;
                const std::size_t hi = n * (w + 1) / workers;
                for (std::size_t i = lo; i < hi; ++i) {
                    const double s = score_fn(bset.vectors[i]);
                    if (!filled[w] || better(s, partial[w].score)) {
                        partial[w] = ScanBest{s, i, bset.vectors[i]};
                        filled[w] = 1;
                    }
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
        for (std::size_t w = 0; w < workers; ++w) {
            if (!filled[w]) {
                continue;
            }
            if (!have_best || better(partial[w].score, best.score) ||
                (partial[w].score == best.score && partial[w].index < best.index)) {
                best = partial[w];
                have_best = true;
            }
        }
    }

    BaResult r;
    r.chosen = std::move(best.bits);
    r.score = best.score;
    r.evaluations = bset.size();
    r.scheme = scheme;
    return r;
}

}  // namespace

BaResult crlb_ba(const Eigen::VectorXd& sigma, const Eigen::VectorXd& loading,
                 const QuantTable& table, double sigma_n2, const BSet& bset, int n_threads) {
    return scan_bset(
        bset, /*maximize=*/true,
        [&](const BitVector& b) { return kf_score(b, sigma, sigma_n2, loading, table); },
        n_threads, BaScheme::crlb);
}

BaResult es_ba(EsMetric metric, const std::function<double(const BitVector&)>& evaluate,
               const BSet& bset, int n_threads) {
    const bool maximize = metric == EsMetric::capacity;
    return scan_bset(bset, maximize, evaluate, n_threads,
                     maximize ? BaScheme::es_capacity : BaScheme::es_mse);
}

BaResult mmqse_ba(const Eigen::MatrixXcd& h_eff, int n_b, const PowerModel& pm) {
    const auto n_s = h_eff.rows();
    if (n_s < 1) {
        throw dimension_error("mmqse_ba: empty channel");
    }

    double norm_sum = 0.0;
    Eigen::VectorXd row_term(n_s);
    for (Eigen::Index i = 0; i < n_s; ++i) {
        const double rn = h_eff.row(i).norm();
        if (rn <= 0.0) {
            throw config_error("mmqse_ba: zero channel row");
        }
        row_term(i) = std::pow(rn, 2.0 / 3.0);
        norm_sum += row_term(i);
    }
    Eigen::VectorXd base(n_s);
    for (Eigen::Index i = 0; i < n_s; ++i) {
        base(i) = std::log2(row_term(i) / norm_sum);
    }

    const auto round_clamp = [&](double offset) {
        BitVector bits(static_cast<std::size_t>(n_s));
        for (Eigen::Index i = 0; i < n_s; ++i) {
            const int b = static_cast<int>(std::lround(offset + base(i)));
            bits[static_cast<std::size_t>(i)] = std::clamp(b, 1, n_b);
        }
        return bits;
    };

    std::size_t evaluations = 0;
    const auto feasible = [&](double offset) {
        ++evaluations;
        return adc_power(round_clamp(offset), pm) <= pm.p_adc;
    };

    double lo = -static_cast<double>(n_b);
    double hi = 2.0 * static_cast<double>(n_b);
    if (!feasible(lo)) {
        throw infeasible_budget_error("mmqse_ba: even the all-ones allocation exceeds budget");
    }
    if (feasible(hi)) {
        lo = hi;
    } else {
        while (hi - lo > 1e-6) {
            const double mid = 0.5 * (lo + hi);
            (feasible(mid) ? lo : hi) = mid;
        }
    }

    BaResult r;
    r.chosen = round_clamp(lo);
    r.score = lo;
    r.evaluations = evaluations;
    r.scheme = BaScheme::mmqse;
    return r;
}

}  // namespace mimoba
