#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rankdep/cg_estimator.hpp"
#include "rankdep/empirical_copula.hpp"
#include "rankdep/errors.hpp"
#include "rankdep/quantile_table.hpp"
#include "rankdep/sample.hpp"

namespace rankdep {

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

/// Locale-independent double parse of a whole field.
inline std::optional<double> parse_double(const std::string& field) {
    const std::string t = trim(field);
    if (t.empty()) return std::nullopt;
    double out = 0.0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return out;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

/// Reads a two-column numeric CSV. A single leading header row is accepted
/// when none of its fields parse as numbers.
inline std::vector<std::pair<double, double>> read_two_column_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");

    std::vector<std::pair<double, double>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool first_data_row = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw ParseError("expected 2 columns, got " + std::to_string(fields.size()), line_no);
        const auto a = parse_double(fields[0]);
        const auto b = parse_double(fields[1]);
        if (!a && !b && first_data_row) {
            first_data_row = false; // header row
            continue;
        }
        if (!a) throw ParseError("cannot parse '" + trim(fields[0]) + "' as a number", line_no);
        if (!b) throw ParseError("cannot parse '" + trim(fields[1]) + "' as a number", line_no);
        rows.emplace_back(*a, *b);
        first_data_row = false;
    }
    if (rows.empty()) throw ParseError("'" + path + "' holds no data rows");
    return rows;
}

} // namespace detail

/// Sample CSV: columns (x, y), optional auto-detected header, row order
/// preserved.
inline BivariateSample read_sample_csv(const std::string& path) {
    return BivariateSample(detail::read_two_column_csv(path));
}

/// Competing-risks CSV: columns (time, delta) with delta in {0, 1}.
inline CompetingRisksData read_competing_risks_csv(const std::string& path) {
    const auto rows = detail::read_two_column_csv(path);
    std::vector<CompetingRisksData::Record> records;
    records.reserve(rows.size());
    for (const auto& [t, d] : rows) {
        if (d != 0.0 && d != 1.0)
            throw ParseError("'" + path + "': delta column must be 0 or 1");
        records.push_back({t, static_cast<int>(d)});
    }
    return CompetingRisksData(std::move(records));
}

inline nlohmann::json table_to_json(const QuantileTable& table) {
    return nlohmann::json{{"statistic", to_string(table.statistic)},
                          {"n", table.n},
                          {"probs", table.probs},
                          {"values", table.values},
                          {"iterations", table.iterations},
                          {"seed", table.seed}};
}

inline QuantileTable table_from_json(const nlohmann::json& j) {
    QuantileTable t;
    try {
        t.statistic = parse_statistic_id(j.at("statistic").get<std::string>());
        t.n = j.at("n").get<int>();
        t.probs = j.at("probs").get<std::vector<double>>();
        t.values = j.at("values").get<std::vector<double>>();
        t.iterations = j.at("iterations").get<std::int64_t>();
        t.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("quantile table json: ") + e.what());
    }
    t.validate();
    return t;
}

inline void write_tables_json(const std::string& path, const std::vector<QuantileTable>& tables) {
    nlohmann::json j;
    if (tables.size() == 1) {
        j = table_to_json(tables[0]);
    } else {
        j = nlohmann::json::array();
        for (const auto& t : tables) j.push_back(table_to_json(t));
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

/// Loads every table from a file holding either one table object or an
/// array of them.
inline std::vector<QuantileTable> read_tables_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
    std::vector<QuantileTable> tables;
    if (j.is_array()) {
        for (const auto& item : j) tables.push_back(table_from_json(item));
    } else {
        tables.push_back(table_from_json(j));
    }
    return tables;
}

/// Finds the table for (statistic, n) in a table file.
inline QuantileTable load_table(const std::string& path, StatisticId id, int n) {
    for (const auto& t : read_tables_json(path)) {
        if (t.statistic == id && t.n == n) return t;
    }
    throw TableMismatch("'" + path + "' holds no table for " + to_string(id) + " at n = " +
                        std::to_string(n));
}

namespace detail {

/// Shortest representation that round-trips a double exactly.
inline std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back = 0.0;
        std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
        if (back == v) break;
    }
    return buf;
}

} // namespace detail

struct PowerRow {
    StatisticId statistic;
    int n;
    double r;
    double alpha;
    std::int64_t iterations;
    std::uint64_t seed;
    double power;
};

/// Power curve CSV, one row per (statistic, r), sorted by r within each
/// statistic.
inline void write_power_csv(const std::string& path, std::vector<PowerRow> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const PowerRow& a, const PowerRow& b) {
        if (a.statistic != b.statistic) return a.statistic < b.statistic;
        return a.r < b.r;
    });
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << "statistic,n,r,alpha,iterations,seed,power\n";
    for (const auto& row : rows) {
        out << to_string(row.statistic) << ',' << row.n << ',' << detail::format_double(row.r)
            << ',' << detail::format_double(row.alpha) << ',' << row.iterations << ',' << row.seed
            << ',' << detail::format_double(row.power) << '\n';
    }
}

/// Long-form empirical copula grid: one row per lattice point (u = i/n,
/// v = j/n) with the cumulative value and, for interior points, the cell
/// mass.
inline void write_copula_grid_csv(const std::string& path, const EmpiricalCopulaGrid& grid) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    const int n = grid.n();
    out << "i,j,u,v,C,c\n";
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const double mass = (i >= 1 && j >= 1) ? grid.mass(i, j) : 0.0;
            out << i << ',' << j << ',' << detail::format_double(static_cast<double>(i) / n)
                << ',' << detail::format_double(static_cast<double>(j) / n) << ','
                << detail::format_double(grid.C(i, j)) << ',' << detail::format_double(mass)
                << '\n';
        }
    }
}

/// Survival estimate CSV: (t, F_hat, G_hat) plus var_F when provided.
inline void write_survival_csv(const std::string& path, const StepSurvivalEstimate& est,
                               const std::vector<double>* var_f = nullptr) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << (var_f ? "t,F_hat,G_hat,var_F\n" : "t,F_hat,G_hat\n");
    for (std::size_t i = 0; i < est.times.size(); ++i) {
        out << detail::format_double(est.times[i]) << ',' << detail::format_double(est.f_hat[i])
            << ',' << detail::format_double(est.g_hat[i]);
        if (var_f) out << ',' << detail::format_double((*var_f)[i]);
        out << '\n';
    }
}

} // namespace rankdep
