#pragma once

// Log-log error plots as standalone SVG.

#include "darcy/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>

namespace darcy::io {

inline void write_svg_plot(std::ostream& os, const ConvergenceReport& rep)
{
    constexpr double width = 640, height = 480, margin = 60;
    struct Series {
        const char* name;
        const char* colour;
        double ConvergenceRow::*member;
    };
    const Series series[] = {{"L2(p)", "#1f77b4", &ConvergenceRow::l2_p},
                             {"H1(p)", "#ff7f0e", &ConvergenceRow::h1_p},
                             {"L2(u)", "#2ca02c", &ConvergenceRow::l2_u},
                             {"L2(div u)", "#d62728", &ConvergenceRow::l2_div}};

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& r : rep.rows) {
        xmin = std::min(xmin, -std::log10(r.h));
        xmax = std::max(xmax, -std::log10(r.h));
        for (const auto& s : series) {
            const double v = r.*s.member;
            if (!(v > 0.0)) continue;
            ymin = std::min(ymin, std::log10(v));
            ymax = std::max(ymax, std::log10(v));
        }
    }
    if (!(xmax > xmin)) {
        xmin = 0.0;
        xmax = 1.0;
    }
    if (!(ymax > ymin)) {
        ymin = -1.0;
        ymax = 0.0;
    }
    auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto py = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };
    char buf[160];

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n", margin, margin,
                  width - 2 * margin, height - 2 * margin);
    os << buf;
    os << "<text x=\"" << width / 2 << "\" y=\"30\" text-anchor=\"middle\">" << rep.problem << ' ' << to_string(rep.method) << " Q"
       << rep.degree << "</text>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">-log10(h)</text>\n";
    os << "<text x=\"15\" y=\"" << height / 2 << "\" transform=\"rotate(-90 15 " << height / 2
       << ")\" text-anchor=\"middle\">log10(error)</text>\n";

    int legend = 0;
    for (const auto& s : series) {
        std::string path;
        for (const auto& r : rep.rows) {
            const double v = r.*s.member;
            if (!(v > 0.0)) continue;
            std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", path.empty() ? "M" : " L", px(-std::log10(r.h)), py(std::log10(v)));
            path += buf;
            std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n", px(-std::log10(r.h)),
                          py(std::log10(v)), s.colour);
            os << buf;
        }
        if (path.empty()) continue;
        os << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << s.colour << "\"/>\n";
        const double ly = margin + 15 + 18 * legend++;
        std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" fill=\"%s\">%s</text>\n", width - margin - 90, ly, s.colour, s.name);
        os << buf;
    }
    os << "</svg>\n";
}

inline void write_svg_plot_file(const std::string& path, const ConvergenceReport& rep)
{
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    write_svg_plot(os, rep);
    if (!os) throw IoError("failed writing '" + path + "'");
}

} // namespace darcy::io
