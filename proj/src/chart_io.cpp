#include "thomtwist/chart_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace tt {

namespace {

std::string fmt1(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", x);
    return buf;
}

void rstrip(std::string& s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
}

}  // namespace

ChartStyle ChartStyle::defaults() {
    ChartStyle st;
    st.edges["h0"] = {1, 1, "#000000", ""};
    st.edges["v1"] = {1, 3, "#7a7a7a", ""};
    st.edges["alpha"] = {1, 4, "#1f6feb", ""};
    st.edges["beta"] = {2, 12, "#b23a65", "4 2"};
    return st;
}

std::string emit_ascii(const ExtChart& chart) {
    const int smax = chart.s_max, tmax = chart.t_max;
    int width = 2;
    for (int v = smax; v >= 100; v /= 10) ++width;
    char buf[64];
    std::string out;
    for (int s = smax; s >= 0; --s) {
        std::snprintf(buf, sizeof(buf), "s=%*d |", width, s);
        std::string line = buf;
        for (int stem = 0; stem <= tmax; ++stem) {
            int t = s + stem;
            char c;
            if (t > tmax) {
                c = '?';
            } else {
                int r = chart.rank(s, t);
                c = (r == 0) ? ' ' : (r <= 9 ? static_cast<char>('0' + r) : '#');
            }
            line += ' ';
            line += c;
        }
        rstrip(line);
        out += line;
        out += '\n';
    }
    out += std::string(width + 3, ' ') + '+' + std::string(2 * (tmax + 1), '-') + '\n';
    if (tmax >= 10) {
        std::string tens(width + 4, ' ');
        for (int stem = 0; stem <= tmax; ++stem) {
            tens += ' ';
            tens += (stem >= 10) ? static_cast<char>('0' + (stem / 10) % 10) : ' ';
        }
        rstrip(tens);
        out += tens;
        out += '\n';
    }
    std::string ones = "stem";
    ones.resize(width + 4, ' ');
    for (int stem = 0; stem <= tmax; ++stem) {
        ones += ' ';
        ones += static_cast<char>('0' + stem % 10);
    }
    out += ones;
    out += '\n';
    return out;
}

std::map<std::pair<int, int>, int> ascii_ranks(const std::string& text) {
    std::map<std::pair<int, int>, int> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("s=", 0) != 0) continue;
        size_t bar = line.find('|');
        if (bar == std::string::npos) continue;
        int s = std::atoi(line.substr(2, bar - 2).c_str());
        for (size_t pos = bar + 2; pos < line.size(); pos += 2) {
            int stem = static_cast<int>((pos - bar - 2) / 2);
            char c = line[pos];
            if (c == ' ' || c == '?') continue;
            out[{s, s + stem}] = (c == '#') ? -1 : c - '0';
        }
    }
    return out;
}

std::string emit_svg(const ExtChart& chart, const ChartStyle& st) {
    for (const auto& e : chart.edges) {
        auto it = st.edges.find(e.cls);
        if (it == st.edges.end())
            throw std::invalid_argument("no edge style for product class '" + e.cls + "'");
        if (it->second.ds != e.s2 - e.s || it->second.dt != e.t2 - e.t)
            throw std::invalid_argument("edge style slope for '" + e.cls +
                                        "' does not match the class bidegree");
    }
    const int stems = chart.t_max + 1, rows = chart.s_max + 1;
    const int W = 2 * st.margin + stems * st.cell;
    const int H = 2 * st.margin + rows * st.cell;
    auto cx = [&](int stem) { return st.margin + stem * st.cell + st.cell / 2.0; };
    auto cy = [&](int s) { return H - st.margin - s * st.cell - st.cell / 2.0; };
    auto dotx = [&](int stem, int rank, int i) {
        return cx(stem) + (i - (rank - 1) / 2.0) * (2.0 * st.dot_radius + 2.0);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" "
           "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">"
           "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#bbbbbb\" "
           "stroke-width=\"1\"/></pattern></defs>\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H
        << "\" fill=\"#ffffff\"/>\n";

    // Masked region: cells whose internal degree leaves the trusted window.
    for (int s = 0; s <= chart.s_max; ++s)
        for (int stem = 0; stem <= chart.t_max; ++stem) {
            if (s + stem <= chart.t_max) continue;
            svg << "<rect class=\"masked\" x=\"" << st.margin + stem * st.cell << "\" y=\""
                << H - st.margin - (s + 1) * st.cell << "\" width=\"" << st.cell
                << "\" height=\"" << st.cell << "\" fill=\"url(#hatch)\"/>\n";
        }

    // Axes and labels.
    svg << "<line x1=\"" << st.margin << "\" y1=\"" << H - st.margin << "\" x2=\""
        << W - st.margin << "\" y2=\"" << H - st.margin
        << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << st.margin << "\" y1=\"" << st.margin << "\" x2=\"" << st.margin
        << "\" y2=\"" << H - st.margin << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    for (int stem = 0; stem <= chart.t_max; ++stem)
        svg << "<text x=\"" << fmt1(cx(stem)) << "\" y=\"" << H - st.margin + 14
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" << stem
            << "</text>\n";
    for (int s = 0; s <= chart.s_max; ++s)
        svg << "<text x=\"" << st.margin - 6 << "\" y=\"" << fmt1(cy(s) + 4)
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">" << s
            << "</text>\n";

    // Product edges first, so dots sit on top of the segment ends.
    for (const auto& e : chart.edges) {
        const EdgeStyle& es = st.edges.at(e.cls);
        int r1 = chart.rank(e.s, e.t), r2 = chart.rank(e.s2, e.t2);
        svg << "<line class=\"edge " << e.cls << "\" x1=\"" << fmt1(dotx(e.t - e.s, r1, e.i))
            << "\" y1=\"" << fmt1(cy(e.s)) << "\" x2=\"" << fmt1(dotx(e.t2 - e.s2, r2, e.i2))
            << "\" y2=\"" << fmt1(cy(e.s2)) << "\" stroke=\"" << es.stroke
            << "\" stroke-width=\"1\"";
        if (!es.dash.empty()) svg << " stroke-dasharray=\"" << es.dash << "\"";
        svg << "/>\n";
    }

    // One dot per rank unit (std::map order: deterministic).
    for (const auto& [cell, r] : chart.ranks) {
        auto [s, t] = cell;
        int stem = t - s;
        if (stem < 0 || t > chart.t_max) continue;
        for (int i = 0; i < r; ++i)
            svg << "<circle class=\"dot\" data-s=\"" << s << "\" data-t=\"" << t << "\" cx=\""
                << fmt1(dotx(stem, r, i)) << "\" cy=\"" << fmt1(cy(s)) << "\" r=\""
                << st.dot_radius << "\" fill=\"#000000\"/>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace tt
