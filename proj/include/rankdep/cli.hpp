#pragma once

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rankdep/io.hpp"
#include "rankdep/mc_engine.hpp"

namespace rankdep {

namespace detail {

/// Parses "start:step:end" (inclusive of both endpoints within 1e-9) or a
/// single value.
inline std::vector<double> parse_r_grid(const std::string& spec) {
    std::vector<double> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ':') {
            parts.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(std::stod(cur));

    std::vector<double> grid;
    if (parts.size() == 1) {
        grid.push_back(parts[0]);
    } else if (parts.size() == 3) {
        const double start = parts[0], step = parts[1], end = parts[2];
        if (!(step > 0.0)) throw InvalidInput("r grid: step must be positive");
        if (end < start) throw InvalidInput("r grid: end before start");
        for (double v = start; v <= end + 1e-9; v += step) grid.push_back(std::min(v, end));
        if (std::fabs(grid.back() - end) > 1e-9) grid.push_back(end);
    } else {
        throw InvalidInput("r grid: expected 'value' or 'start:step:end'");
    }
    for (double r : grid)
        if (!(r >= -1.0 && r <= 1.0)) throw InvalidInput("r grid: |r| must be <= 1");
    return grid;
}

inline std::uint64_t default_seed() {
    if (const char* env = std::getenv("RANKDEP_SEED")) {
        try {
            return static_cast<std::uint64_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw InvalidInput("RANKDEP_SEED is not an unsigned integer");
        }
    }
    return 2011;
}

inline nlohmann::json result_to_json(const TestResult& res, int n) {
    nlohmann::json j{{"statistic", to_string(res.statistic)},
                     {"n", n},
                     {"value", res.value},
                     {"alpha", res.alpha},
                     {"reject", res.reject}};
    if (res.lower) j["lower"] = *res.lower;
    if (res.upper) j["upper"] = *res.upper;
    return j;
}

} // namespace detail

/// Command-line entry point. Exit codes: 0 success (or test: no rejection),
/// 3 test rejected, 1 usage error, 2 data/computation error.
inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"rank-based independence tests, empirical copulas and the "
                 "copula-graphic estimator"};
    app.require_subcommand(1);

    // Shared statistic parameters.
    int block_size = 5;
    int mfcc_filters = 20;
    double mfcc_floor = 1e-12;
    int threads = 0;
    auto add_stat_params = [&](CLI::App* cmd) {
        cmd->add_option("--block-size", block_size, "T2 block size k")->check(CLI::Range(2, 1000));
        cmd->add_option("--mfcc-filters", mfcc_filters, "mel filter count for T5/T6")
            ->check(CLI::Range(2, 4096));
        cmd->add_option("--mfcc-floor", mfcc_floor, "log floor for mel energies")
            ->check(CLI::PositiveNumber);
    };
    auto make_params = [&]() {
        StatParams p;
        p.block_size = block_size;
        p.mfcc.num_filters = mfcc_filters;
        p.mfcc.log_floor = mfcc_floor;
        return p;
    };

    // quantiles
    auto* q_cmd = app.add_subcommand("quantiles", "simulate null quantile tables");
    std::vector<std::string> q_stats;
    int q_n = 30;
    std::int64_t q_iters = 10000;
    std::uint64_t q_seed = 0;
    std::vector<double> q_probs;
    std::string q_out;
    q_cmd->add_option("--stat", q_stats, "statistic ids (T1..T6, SpearmanRho, KendallT)")
        ->required()
        ->delimiter(',');
    q_cmd->add_option("--n", q_n, "sample size")->required()->check(CLI::Range(2, 1000000));
    q_cmd->add_option("--iters", q_iters, "Monte Carlo iterations")
        ->check(CLI::Range(std::int64_t{100}, std::int64_t{1000000000}));
    auto* q_seed_opt = q_cmd->add_option("--seed", q_seed, "master seed");
    q_cmd->add_option("--probs", q_probs, "probability levels (default the standard nine)")
        ->delimiter(',');
    q_cmd->add_option("--out", q_out, "output JSON path (stdout when omitted)");
    q_cmd->add_option("--threads", threads, "worker threads (0 = auto)")
        ->check(CLI::Range(0, 256));
    add_stat_params(q_cmd);

    // test
    auto* t_cmd = app.add_subcommand("test", "run one independence test on a CSV sample");
    std::string t_stat;
    std::string t_input;
    std::string t_table;
    double t_alpha = 0.05;
    t_cmd->add_option("--stat", t_stat, "statistic id")->required();
    t_cmd->add_option("--input", t_input, "sample CSV (x, y)")->required();
    t_cmd->add_option("--table", t_table, "quantile table JSON (not needed for Tp)");
    t_cmd->add_option("--alpha", t_alpha, "significance level")
        ->check(CLI::Range(1e-6, 0.999999));
    add_stat_params(t_cmd);

    // power
    auto* p_cmd = app.add_subcommand("power", "Monte Carlo power against an alternative");
    std::vector<std::string> p_stats;
    std::string p_alt = "normal";
    std::string p_r = "0";
    int p_n = 30;
    std::int64_t p_iters = 10000;
    std::uint64_t p_seed = 0;
    double p_alpha = 0.05;
    std::string p_table;
    std::string p_out;
    p_cmd->add_option("--stat", p_stats, "statistic ids")->required()->delimiter(',');
    p_cmd->add_option("--alt", p_alt, "alternative family: normal | rwalk")
        ->check(CLI::IsMember({"normal", "rwalk"}));
    p_cmd->add_option("--r", p_r, "correlation value or grid start:step:end")->required();
    p_cmd->add_option("--n", p_n, "sample size")->required()->check(CLI::Range(2, 1000000));
    p_cmd->add_option("--iters", p_iters, "Monte Carlo iterations")
        ->check(CLI::Range(std::int64_t{100}, std::int64_t{1000000000}));
    p_cmd->add_option("--table", p_table, "quantile table JSON (required except for Tp alone)");
    p_cmd->add_option("--alpha", p_alpha, "significance level")
        ->check(CLI::Range(1e-6, 0.999999));
    auto* p_seed_opt = p_cmd->add_option("--seed", p_seed, "master seed");
    p_cmd->add_option("--out", p_out, "output CSV path (stdout when omitted)");
    p_cmd->add_option("--threads", threads, "worker threads (0 = auto)")
        ->check(CLI::Range(0, 256));
    add_stat_params(p_cmd);

    // copula
    auto* c_cmd = app.add_subcommand("copula", "empirical copula grid of a CSV sample");
    std::string c_input;
    std::string c_out;
    bool c_measures = false;
    c_cmd->add_option("--input", c_input, "sample CSV (x, y)")->required();
    c_cmd->add_option("--out", c_out, "grid CSV path")->required();
    c_cmd->add_flag("--measures", c_measures, "also print rho/t/g as JSON");

    // cg-estimate
    auto* g_cmd = app.add_subcommand("cg-estimate",
                                     "copula-graphic survival estimate from (time, delta) CSV");
    std::string g_input;
    std::string g_copula = "independence";
    std::string g_out;
    bool g_jackknife = false;
    double g_tol = 1e-8;
    int g_max_iter = 200;
    g_cmd->add_option("--input", g_input, "competing risks CSV (time, delta)")->required();
    g_cmd->add_option("--copula", g_copula,
                      "independence | clayton:theta | frank:theta");
    g_cmd->add_option("--out", g_out, "survival CSV path")->required();
    g_cmd->add_flag("--jackknife", g_jackknife, "add jackknife variance of F at each grid time");
    g_cmd->add_option("--tol", g_tol, "bisection residual tolerance")->check(CLI::PositiveNumber);
    g_cmd->add_option("--max-iter", g_max_iter, "bisection iteration cap")
        ->check(CLI::Range(1, 100000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        if (*q_cmd) {
            const std::uint64_t seed = q_seed_opt->count() ? q_seed : detail::default_seed();
            const std::vector<double>& probs = q_probs.empty() ? default_probs() : q_probs;
            std::vector<QuantileTable> tables;
            for (const auto& name : q_stats) {
                const StatisticId id = parse_statistic_id(name);
                tables.push_back(simulate_null_quantiles(id, q_n, q_iters, probs, seed,
                                                         make_params(), threads));
            }
            if (q_out.empty()) {
                nlohmann::json j;
                if (tables.size() == 1)
                    j = table_to_json(tables[0]);
                else
                    for (const auto& t : tables) j.push_back(table_to_json(t));
                std::cout << j.dump(2) << '\n';
            } else {
                write_tables_json(q_out, tables);
            }
            return 0;
        }

        if (*t_cmd) {
            const StatisticId id = parse_statistic_id(t_stat);
            const BivariateSample sample = read_sample_csv(t_input);
            std::optional<QuantileTable> table;
            if (id != StatisticId::Tp) {
                if (t_table.empty())
                    throw TableMismatch("statistic " + to_string(id) + " needs --table");
                table = load_table(t_table, id, sample.n());
            }
            const TestResult res =
                run_test(id, sample, table ? &*table : nullptr, t_alpha, make_params());
            std::cout << detail::result_to_json(res, sample.n()).dump(2) << '\n';
            return res.reject ? 3 : 0;
        }

        if (*p_cmd) {
            const std::uint64_t seed = p_seed_opt->count() ? p_seed : detail::default_seed();
            const std::vector<double> grid = detail::parse_r_grid(p_r);
            const AlternativeSpec::Family family = p_alt == "normal"
                                                       ? AlternativeSpec::Family::CorrelatedNormal
                                                       : AlternativeSpec::Family::RandomWalkNormal;
            // All tables are loaded and validated before any simulation runs.
            std::vector<std::pair<StatisticId, std::optional<QuantileTable>>> plan;
            for (const auto& name : p_stats) {
                const StatisticId id = parse_statistic_id(name);
                std::optional<QuantileTable> table;
                if (id != StatisticId::Tp) {
                    if (p_table.empty())
                        throw TableMismatch("statistic " + to_string(id) + " needs --table");
                    table = load_table(p_table, id, p_n);
                }
                plan.emplace_back(id, std::move(table));
            }
            std::vector<PowerRow> rows;
            for (const auto& [id, table] : plan) {
                for (double r : grid) {
                    const double power =
                        estimate_power(id, {family, r}, p_n, p_iters, table ? &*table : nullptr,
                                       p_alpha, seed, make_params(), threads);
                    rows.push_back({id, p_n, r, p_alpha, p_iters, seed, power});
                }
            }
            if (p_out.empty()) {
                std::cout << "statistic,n,r,alpha,iterations,seed,power\n";
                for (const auto& row : rows)
                    std::cout << to_string(row.statistic) << ',' << row.n << ',' << row.r << ','
                              << row.alpha << ',' << row.iterations << ',' << row.seed << ','
                              << row.power << '\n';
            } else {
                write_power_csv(p_out, rows);
            }
            return 0;
        }

        if (*c_cmd) {
            const BivariateSample sample = read_sample_csv(c_input);
            const EmpiricalCopulaGrid grid = empirical_copula(sample);
            write_copula_grid_csv(c_out, grid);
            if (c_measures) {
                const RpvMeasures m = rpv_measures(build_rpv(sample));
                std::cout << nlohmann::json{{"rho_hat", spearman_rho_hat(grid)},
                                            {"kendall_t", m.t},
                                            {"gini_g", m.g}}
                                 .dump(2)
                          << '\n';
            }
            return 0;
        }

        if (*g_cmd) {
            const CompetingRisksData data = read_competing_risks_csv(g_input);
            const auto model = parse_copula(g_copula);
            const StepSurvivalEstimate est = cg_estimate(data, *model, g_tol, g_max_iter);
            if (g_jackknife) {
                std::vector<double> var_f;
                var_f.reserve(est.times.size());
                for (double t : est.times)
                    var_f.push_back(jackknife_variance(data, *model, t, Cause::X, g_tol,
                                                       g_max_iter));
                write_survival_csv(g_out, est, &var_f);
            } else {
                write_survival_csv(g_out, est);
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

inline int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("rankdep");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace rankdep
