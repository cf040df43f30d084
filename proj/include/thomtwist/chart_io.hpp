#pragma once
// ASCII and SVG renderers for Ext charts. Chart coordinates follow the Adams
// convention: x = t - s (stem), y = s (filtration). Cells with t beyond the
// trusted window are masked: '?' in ASCII, hatched in SVG.

#include <map>
#include <string>
#include <utility>

#include "thomtwist/resolution.hpp"

namespace tt {

struct EdgeStyle {
    int ds = 1, dt = 1;  // bidegree shift (filtration, internal degree) of the class
    std::string stroke = "#000000";
    std::string dash;  // stroke-dasharray; empty = solid
};

struct ChartStyle {
    int cell = 28;  // px per lattice step
    int dot_radius = 3;
    int margin = 36;
    std::map<std::string, EdgeStyle> edges;  // keyed by product class name
    // h0 vertical (shift (1,1)), v1 rising one row over two columns (1,3),
    // alpha one row over three columns (1,4), beta two rows over ten (2,12).
    static ChartStyle defaults();
};

// Grid text, one row per filtration (top row = s_max) and one two-character
// column per stem: blank = rank 0, digit = rank 1..9, '#' = rank above 9,
// '?' = masked.
std::string emit_ascii(const ExtChart& chart);

// Deterministic standalone SVG 1.1 document: one dot per rank unit, one line
// per product edge, masked cells hatched. Throws std::invalid_argument when an
// edge's class has no style or the style's slope disagrees with the edge's
// actual bidegree shift.
std::string emit_svg(const ExtChart& chart, const ChartStyle& style = ChartStyle::defaults());

// Parse the rank function back out of emit_ascii output (for cross-checks).
// '#' cells come back as -1 (meaning "above 9"); masked cells are omitted.
std::map<std::pair<int, int>, int> ascii_ranks(const std::string& text);

}  // namespace tt
