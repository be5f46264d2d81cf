#pragma once

/// \file
/// Delimited-text formats.
///
/// Samples:
///   # kind=<CGL_NODE|CGL_MID|UNIFORM> N=<n> role=<F_SIDE|f_SIDE>
///   index,abscissa,value          (one row per grid point)
///
/// Solver reports:
///   iteration,ground_truth_error,data_residual
///   <rows>
///   <blank line>
///   key=value                     (termination metadata)

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tht/error.hpp"
#include "tht/report.hpp"
#include "tht/series.hpp"

namespace tht {

/// Shortest decimal text that round-trips the double (17 significant digits).
[[nodiscard]] inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline double parse_double(std::string_view s, std::size_t line) {
    s = trim(s);
    if (s == "nan") return NAN;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw parse_error("not a number: '" + std::string(s) + "'", line);
    return v;
}

inline std::size_t parse_index(std::string_view s, std::size_t line) {
    s = trim(s);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw parse_error("not an index: '" + std::string(s) + "'", line);
    return v;
}

}  // namespace detail

inline void write_samples(std::ostream& os, const SampledFunction& x) {
    os << "# kind=" << to_string(x.grid.kind()) << " N=" << x.grid.size() << " role=" << to_string(x.role)
       << '\n';
    for (std::size_t m = 0; m < x.values.size(); ++m)
        os << m << ',' << format_double(x.grid[m]) << ',' << format_double(x.values[m]) << '\n';
}

/// Parses the samples format. Abscissae must match the declared grid.
[[nodiscard]] inline SampledFunction read_samples(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) throw parse_error("empty input", 1);
    ++lineno;
    std::string_view head = detail::trim(line);
    if (head.substr(0, 1) != "#") throw parse_error("expected header '# kind=... N=... role=...'", lineno);
    std::map<std::string, std::string> kv;
    for (std::string_view tok : detail::split(detail::trim(head.substr(1)), ' ')) {
        if (tok.empty()) continue;
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos) throw parse_error("malformed header token '" + std::string(tok) + "'", lineno);
        kv[std::string(tok.substr(0, eq))] = std::string(tok.substr(eq + 1));
    }
    if (!kv.count("kind") || !kv.count("N") || !kv.count("role"))
        throw parse_error("header must define kind, N and role", lineno);
    GridKind kind;
    SampleRole role;
    std::size_t n = 0;
    try {
        kind = grid_kind_from_string(kv["kind"]);
        role = sample_role_from_string(kv["role"]);
        n = detail::parse_index(kv["N"], lineno);
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what(), lineno);
    }
    if (n == 0) throw parse_error("N must be >= 1", lineno);
    const Grid grid(kind, n);
    std::vector<double> values(n, 0.0);
    std::size_t expected = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string_view row = detail::trim(line);
        if (row.empty()) continue;
        const auto cols = detail::split(row, ',');
        if (cols.size() != 3) throw parse_error("expected 3 comma-separated columns", lineno);
        const std::size_t idx = detail::parse_index(cols[0], lineno);
        if (idx != expected)
            throw parse_error("expected index " + std::to_string(expected) + ", got " + std::to_string(idx), lineno);
        if (idx >= n) throw parse_error("more rows than N = " + std::to_string(n), lineno);
        const double x = detail::parse_double(cols[1], lineno);
        if (!(std::abs(x - grid[idx]) <= 1e-12))
            throw parse_error("abscissa " + format_double(x) + " does not match the " + to_string(kind) +
                                  " grid point " + format_double(grid[idx]),
                              lineno);
        values[idx] = detail::parse_double(cols[2], lineno);
        ++expected;
    }
    if (expected != n)
        throw parse_error("expected " + std::to_string(n) + " rows, found " + std::to_string(expected), lineno);
    return SampledFunction(grid, std::move(values), role);
}

inline void write_report(std::ostream& os, const SolverReport& r) {
    os << "iteration,ground_truth_error,data_residual\n";
    const std::size_t rows = std::max(r.ground_truth_error.size(), r.data_residual.size());
    for (std::size_t k = 0; k < rows; ++k) {
        const double g = k < r.ground_truth_error.size() ? r.ground_truth_error[k] : NAN;
        const double d = k < r.data_residual.size() ? r.data_residual[k] : NAN;
        os << k << ',' << format_double(g) << ',' << format_double(d) << '\n';
    }
    os << '\n';
    os << "termination=" << to_string(r.termination) << '\n';
    os << "iterations=" << r.iterations << '\n';
    if (r.condition_estimate) os << "condition_estimate=" << format_double(*r.condition_estimate) << '\n';
    if (r.cost) os << "cost=" << format_double(*r.cost) << '\n';
    if (r.constant_term) os << "constant_term=" << format_double(*r.constant_term) << '\n';
}

[[nodiscard]] inline SolverReport read_report(std::istream& is) {
    SolverReport r;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line) || detail::trim(line) != "iteration,ground_truth_error,data_residual")
        throw parse_error("expected report header", 1);
    ++lineno;
    bool in_meta = false;
    bool any_truth = false;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string_view row = detail::trim(line);
        if (row.empty()) {
            in_meta = true;
            continue;
        }
        if (!in_meta) {
            const auto cols = detail::split(row, ',');
            if (cols.size() != 3) throw parse_error("expected 3 comma-separated columns", lineno);
            if (detail::parse_index(cols[0], lineno) != r.data_residual.size())
                throw parse_error("iterations out of order", lineno);
            const double g = detail::parse_double(cols[1], lineno);
            any_truth = any_truth || !std::isnan(g);
            r.ground_truth_error.push_back(g);
            r.data_residual.push_back(detail::parse_double(cols[2], lineno));
            continue;
        }
        const auto eq = row.find('=');
        if (eq == std::string_view::npos) throw parse_error("expected key=value", lineno);
        const std::string key(detail::trim(row.substr(0, eq)));
        const std::string_view val = detail::trim(row.substr(eq + 1));
        try {
            if (key == "termination") r.termination = termination_from_string(std::string(val));
            else if (key == "iterations") r.iterations = detail::parse_index(val, lineno);
            else if (key == "condition_estimate") r.condition_estimate = detail::parse_double(val, lineno);
            else if (key == "cost") r.cost = detail::parse_double(val, lineno);
            else if (key == "constant_term") r.constant_term = detail::parse_double(val, lineno);
            else throw parse_error("unknown key '" + key + "'", lineno);
        } catch (const std::invalid_argument& e) {
            throw parse_error(e.what(), lineno);
        }
    }
    if (!any_truth) r.ground_truth_error.clear();
    return r;
}

}  // namespace tht
