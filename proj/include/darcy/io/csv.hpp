#pragma once

// Convergence tables as CSV. Numbers are printed with 17 significant digits
// so a table read back reproduces the doubles exactly.

#include "darcy/convergence.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace darcy::io {

inline const char* csv_header = "problem,method,degree,nx,ny,h,l2_p,h1_p,l2_u,l2_div,rate_l2_p,rate_h1_p,rate_l2_u,rate_l2_div";

inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(std::ostream& os, const ConvergenceReport& rep)
{
    os << csv_header << '\n';
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        os << rep.problem << ',' << to_string(rep.method) << ',' << rep.degree << ',' << r.nx << ',' << r.ny << ',' << format_double(r.h)
           << ',' << format_double(r.l2_p) << ',' << format_double(r.h1_p) << ',' << format_double(r.l2_u) << ','
           << format_double(r.l2_div);
        if (i == 0) {
            os << ",,,,";
        } else {
            const ErrorRates q = rep.pairwise_rate(i - 1);
            os << ',' << format_double(q.l2_p) << ',' << format_double(q.h1_p) << ',' << format_double(q.l2_u) << ','
               << format_double(q.l2_div);
        }
        os << '\n';
    }
}

inline std::string to_csv(const ConvergenceReport& rep)
{
    std::ostringstream os;
    write_csv(os, rep);
    return os.str();
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_double(const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("malformed number '" + s + "' in CSV");
    }
    DARCY_REQUIRE(used == s.size(), InvalidArgument, "malformed number '" + s + "' in CSV");
    return v;
}

} // namespace detail

/// Inverse of write_csv; rates are recomputed from the rows.
inline ConvergenceReport read_csv(std::istream& is)
{
    std::string line;
    DARCY_REQUIRE(std::getline(is, line) && line == csv_header, InvalidArgument, "missing or unexpected CSV header");
    ConvergenceReport rep;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto c = detail::split_csv_line(line);
        DARCY_REQUIRE(c.size() == 14, InvalidArgument, "CSV row has " + std::to_string(c.size()) + " columns, expected 14");
        if (first) {
            rep.problem = c[0];
            rep.method = parse_method(c[1]);
            rep.degree = std::stoi(c[2]);
            first = false;
        }
        ConvergenceRow r;
        r.nx = std::stoll(c[3]);
        r.ny = std::stoll(c[4]);
        r.h = detail::parse_double(c[5]);
        r.l2_p = detail::parse_double(c[6]);
        r.h1_p = detail::parse_double(c[7]);
        r.l2_u = detail::parse_double(c[8]);
        r.l2_div = detail::parse_double(c[9]);
        rep.rows.push_back(r);
    }
    return rep;
}

inline void write_csv_file(const std::string& path, const ConvergenceReport& rep)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    write_csv(os, rep);
    if (!os) throw IoError("failed writing '" + path + "'");
}

inline ConvergenceReport read_csv_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "' for reading");
    return read_csv(is);
}

} // namespace darcy::io
