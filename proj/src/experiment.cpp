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

#include "mimoba/experiment.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "mimoba/errors.hpp"
#include "mimoba/metrics.hpp"

namespace mimoba {

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::one_bit:
            return "one_bit";
        case Scheme::two_bit:
            return "two_bit";
        case Scheme::infinite:
            return "infinite";
        case Scheme::es:
            return "es";
        case Scheme::crlb:
            return "crlb";
        case Scheme::mmqse:
            return "mmqse";
    }
    throw config_error("scheme_name: unknown scheme");
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "one_bit") return Scheme::one_bit;
    if (name == "two_bit") return Scheme::two_bit;
    if (name == "infinite") return Scheme::infinite;
    if (name == "es") return Scheme::es;
    if (name == "crlb") return Scheme::crlb;
    if (name == "mmqse") return Scheme::mmqse;
    throw config_error("unknown scheme: " + name);
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream stream(s);
    std::string item;
    while (std::getline(stream, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) {
            throw config_error("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw config_error("bad numeric value for " + key + ": " + value);
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) {
            throw config_error("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw config_error("bad integer value for " + key + ": " + value);
    }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "n_t") {
            cfg.channel.array.num_tx = static_cast<int>(parse_int(key, value));
        } else if (key == "n_r") {
            cfg.channel.array.num_rx = static_cast<int>(parse_int(key, value));
        } else if (key == "element_spacing") {
            cfg.channel.array.element_spacing = parse_double(key, value);
        } else if (key == "num_clusters") {
            cfg.channel.num_clusters = static_cast<int>(parse_int(key, value));
        } else if (key == "rays_per_cluster") {
            cfg.channel.rays_per_cluster = static_cast<int>(parse_int(key, value));
        } else if (key == "angle_spread") {
            cfg.channel.angle_spread = parse_double(key, value);
        } else if (key == "carrier_ghz") {
            cfg.channel.carrier_ghz = parse_double(key, value);
        } else if (key == "n_s") {
            cfg.n_s = static_cast<int>(parse_int(key, value));
        } else if (key == "n_b") {
            cfg.n_b = static_cast<int>(parse_int(key, value));
        } else if (key == "c_per_step") {
            cfg.power.c_per_step = parse_double(key, value);
        } else if (key == "f_s") {
            cfg.power.f_s = parse_double(key, value);
        } else if (key == "p_adc") {
            cfg.power.p_adc = parse_double(key, value);
        } else if (key == "snr_db") {
            cfg.snr_db.clear();
            for (const auto& item : split(value, ',')) {
                cfg.snr_db.push_back(parse_double(key, item));
            }
        } else if (key == "schemes") {
            cfg.schemes.clear();
            for (const auto& item : split(value, ',')) {
                cfg.schemes.push_back(scheme_from_name(item));
            }
        } else if (key == "trials") {
            cfg.trials = static_cast<int>(parse_int(key, value));
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "combiner") {
            if (value == "ideal") {
                cfg.factored = false;
            } else if (value == "factored") {
                cfg.factored = true;
            } else {
                throw config_error("combiner must be ideal or factored");
            }
        } else if (key == "quant_mode") {
            if (value == "table") {
                cfg.table.mode = QuantMode::table;
            } else if (value == "approximation") {
                cfg.table.mode = QuantMode::approximation;
            } else {
                throw config_error("quant_mode must be table or approximation");
            }
        } else if (key.rfind("f_b", 0) == 0) {
            const int b = static_cast<int>(parse_int(key, key.substr(3)));
            const double f = parse_double(key, value);
            if (b < 1 || f <= 0.0 || f >= 1.0) {
                throw config_error("quantizer override must satisfy b >= 1, 0 < f < 1");
            }
            cfg.table.f_values[b] = f;
        } else {
            throw config_error("unknown config key: " + key);
        }
    }
    if (cfg.snr_db.empty()) {
        throw config_error("snr grid must be nonempty");
    }
    if (cfg.n_s < 1 || cfg.n_b < 1) {
        throw config_error("n_s and n_b must be >= 1");
    }
    return cfg;
}

namespace {

struct LinkContext {
    ChannelDecomposition decomp;
    CombinerDesign combiner;
    Eigen::VectorXd loading;
    Eigen::MatrixXcd h_eff;  // analog-combined channel rows, for mmqse
    bool ideal = true;
};

// analytic metrics for a fixed allocation at one SNR point; the unit transmit
// power is split evenly across streams so p = 1 / n_s per symbol
void fill_metrics(ResultRow& row, const LinkContext& ctx, const ExperimentConfig& cfg,
                  double sigma_n2, double p) {
    if (ctx.ideal) {
        row.delta_analytic =
            mse_delta_ideal(ctx.decomp.sigma, row.bits, ctx.loading, cfg.table, sigma_n2);
        row.capacity_bits =
            capacity_ideal(ctx.decomp.sigma, row.bits, ctx.loading, cfg.table, sigma_n2, p);
    } else {
        const LinkModel model =
            make_link_model(ctx.decomp, ctx.combiner, row.bits, cfg.table, sigma_n2, p);
        row.delta_analytic = mse_delta(model);
        row.capacity_bits = capacity(model);
    }
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, int n_threads) {
    if (config.snr_db.empty()) {
        throw config_error("run_experiment: snr grid must be nonempty");
    }

    ChannelParams cp = config.channel;
    cp.seed = config.seed;
    const Eigen::MatrixXcd h = generate_channel(cp);

    LinkContext ctx;
    ctx.decomp = svd_decompose(h, config.n_s);
    ctx.ideal = !config.factored;
    ctx.combiner = config.factored ? factored_combiner(ctx.decomp, config.n_s)
                                   : ideal_combiner(ctx.decomp);
    ctx.loading = loading_terms(ctx.combiner.digital.adjoint(), ctx.decomp.sigma);
    ctx.h_eff = ctx.combiner.analog.adjoint() * h;

    PowerModel pm = config.power;
    if (pm.p_adc <= 0.0) {
        pm.p_adc = config.n_s * pm.c_per_step * pm.f_s * 8.0;  // 3 bits/path on average
    }

    BSet bset;
    bool bset_ok = true;
    try {
        bset = enumerate_bset(config.n_s, config.n_b, pm);
    } catch (const infeasible_budget_error&) {
        bset_ok = false;
    }

    std::vector<ResultRow> rows;
    for (std::size_t si = 0; si < config.snr_db.size(); ++si) {
        const double snr_db = config.snr_db[si];
        const double rho = std::pow(10.0, snr_db / 10.0);
        const double sigma_n2 = 1.0 / rho;
        const double p = 1.0 / ctx.decomp.n_s;

        for (std::size_t ci = 0; ci < config.schemes.size(); ++ci) {
            const Scheme scheme = config.schemes[ci];
            ResultRow row;
            row.snr_db = snr_db;
            row.scheme = scheme;
            row.n_s = ctx.decomp.n_s;

            if (scheme == Scheme::infinite) {
                row.delta_analytic =
                    (sigma_n2 * ctx.decomp.sigma.array().square().inverse()).sum();
                row.capacity_bits = capacity_inf(ctx.decomp.sigma, rho, ctx.decomp.n_s);
                rows.push_back(std::move(row));
                continue;
            }

            try {
                switch (scheme) {
                    case Scheme::one_bit:
                        row.bits.assign(static_cast<std::size_t>(ctx.decomp.n_s), 1);
                        break;
                    case Scheme::two_bit:
                        row.bits.assign(static_cast<std::size_t>(ctx.decomp.n_s), 2);
                        break;
                    case Scheme::crlb: {
                        if (!bset_ok) {
                            throw infeasible_budget_error("empty B_set");
                        }
                        row.bits = crlb_ba(ctx.decomp.sigma, ctx.loading, config.table,
                                           sigma_n2, bset, n_threads)
                                       .chosen;
                        break;
                    }
                    case Scheme::es: {
                        if (!bset_ok) {
                            throw infeasible_budget_error("empty B_set");
                        }
                        const auto evaluate = [&](const BitVector& b) {
                            if (ctx.ideal) {
                                return mse_delta_ideal(ctx.decomp.sigma, b, ctx.loading,
                                                       config.table, sigma_n2);
                            }
                            return mse_delta(make_link_model(ctx.decomp, ctx.combiner, b,
                                                             config.table, sigma_n2, p));
                        };
                        row.bits = es_ba(EsMetric::mse_delta, evaluate, bset, n_threads).chosen;
                        break;
                    }
                    case Scheme::mmqse:
                        row.bits = mmqse_ba(ctx.h_eff, config.n_b, pm).chosen;
                        break;
                    default:
                        break;
                }

                row.adc_power_watts = adc_power(row.bits, pm);
                row.feasible = *row.adc_power_watts <= pm.p_adc;
                if (row.feasible) {
                    fill_metrics(row, ctx, config, sigma_n2, p);
                    if (config.trials > 0) {
                        std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                                          static_cast<std::uint32_t>(config.seed >> 32),
                                          static_cast<std::uint32_t>(si),
                                          static_cast<std::uint32_t>(ci)};
                        std::mt19937_64 rng(seq);
                        const LinkModel model = make_link_model(
                            ctx.decomp, ctx.combiner, row.bits, config.table, sigma_n2, p);
                        row.delta_empirical = empirical_mse(model, config.trials, rng);
                    }
                } else {
                    row.delta_analytic.reset();
                    row.capacity_bits.reset();
                }
            } catch (const infeasible_budget_error&) {
                row.feasible = false;
                row.bits.clear();
                row.delta_analytic.reset();
                row.capacity_bits.reset();
                row.adc_power_watts.reset();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {

std::string format_value(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

std::string format_optional(const std::optional<double>& v) {
    return v.has_value() ? format_value(*v) : "";
}

std::string format_bits(const BitVector& bits) {
    std::string s;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (i > 0) {
            s += '|';
        }
        s += std::to_string(bits[i]);
    }
    return s;
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << "snr_db,scheme,n_s,bits,delta_analytic,delta_empirical,capacity_bits,"
           "adc_power_watts,feasible\n";
    for (const auto& r : rows) {
        out << format_value(r.snr_db) << ',' << scheme_name(r.scheme) << ',' << r.n_s << ','
            << format_bits(r.bits) << ',' << format_optional(r.delta_analytic) << ','
            << format_optional(r.delta_empirical) << ',' << format_optional(r.capacity_bits)
            << ',' << format_optional(r.adc_power_watts) << ','
            << (r.feasible ? "true" : "false") << '\n';
    }
}

std::vector<ResultRow> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw config_error("parse_csv: missing header");
    }
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::string field;
        std::istringstream stream(line);
        while (std::getline(stream, field, ',')) {
            fields.push_back(field);
        }
        while (fields.size() < 9) {
            fields.emplace_back("");  // trailing empty fields
        }
        ResultRow r;
        r.snr_db = parse_double("snr_db", fields[0]);
        r.scheme = scheme_from_name(fields[1]);
        r.n_s = static_cast<int>(parse_int("n_s", fields[2]));
        if (!fields[3].empty()) {
            for (const auto& b : split(fields[3], '|')) {
                r.bits.push_back(static_cast<int>(parse_int("bits", b)));
            }
        }
        const auto opt = [](const std::string& s) -> std::optional<double> {
            if (trim(s).empty()) {
                return std::nullopt;
            }
            return std::stod(s);
        };
        r.delta_analytic = opt(fields[4]);
        r.delta_empirical = opt(fields[5]);
        r.capacity_bits = opt(fields[6]);
        r.adc_power_watts = opt(fields[7]);
        r.feasible = trim(fields[8]) == "true";
        rows.push_back(std::move(r));
    }
    return rows;
}

ComplexityReport complexity_counts(Scheme scheme, int n_s, int n_b, long long gamma,
                                   long long mu, int t_order) {
    if (n_s < 1 || n_b < 1 || t_order < 1) {
        throw config_error("complexity_counts: parameters must be >= 1");
    }
    const long long ns = n_s;
    const long long nb = n_b;
    const long long t = t_order;

    ComplexityReport r;
    r.scheme = scheme;
    r.gamma = gamma;
    r.mu = mu;
    r.t_order = t_order;
    switch (scheme) {
        case Scheme::es:
            r.complex_mults = gamma * (ns * ns + 2 * ns);
            r.real_mults = 3 * ns * ns;
            r.complex_adds = gamma * (ns * (ns - 1) + ns);
            break;
        case Scheme::crlb:
            r.real_mults = 3 * ns * ns + 3 * ns * nb;
            r.real_adds = 3 * ns * ns + ns * nb + mu * (ns - 1);
            break;
        case Scheme::mmqse: {
            const long long log2_ns =
                static_cast<long long>(std::ceil(std::log2(static_cast<double>(ns))));
            r.real_mults = ns * (3 * ns + t * t + t + 1);
            r.real_adds = 2 * ns * ns + ns * (2 * t - 1) + 3 * (ns - 1) * log2_ns;
            break;
        }
        default:
            throw config_error("complexity_counts: scheme has no published count model");
    }
    return r;
}

}  // namespace mimoba
