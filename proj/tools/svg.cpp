#include "svg.hpp"

#include <algorithm>
#include <sstream>

namespace ainf::cli {

namespace {

constexpr int kUnit = 40;    // pixels per filtration step
constexpr int kRow = 12;     // pixels per bar
constexpr int kLeft = 60;
constexpr int kPanelGap = 36;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string barcode_svg(const std::vector<Barcode>& codes, const std::string& title) {
    std::size_t last = 0;
    for (const auto& b : codes) last = std::max(last, b.last_index);
    const int steps = static_cast<int>(last) + 1;
    const int width = kLeft + (steps + 1) * kUnit + 20;

    std::ostringstream body;
    int y = 40;
    for (const auto& b : codes) {
        const long long rows = std::max<long long>(b.total(), 1);
        const int panel = static_cast<int>(rows) * kRow + 8;
        body << "<text x=\"8\" y=\"" << y + 12 << "\" class=\"lbl\">" << escape(b.kind) << " p=" << b.degree << "</text>\n";
        body << "<rect x=\"" << kLeft << "\" y=\"" << y << "\" width=\"" << steps * kUnit << "\" height=\"" << panel
             << "\" class=\"panel\"/>\n";
        int row = 0;
        for (const auto& iv : b.intervals) {
            // closed [i, j] covers steps i..j; an infinite half-open bar runs to the edge
            const bool infinite = b.flavor == Flavor::HalfOpen && iv.last == b.last_index;
            const int x0 = kLeft + static_cast<int>(iv.birth) * kUnit + 4;
            const int x1 = kLeft + static_cast<int>(iv.last + 1) * kUnit - (infinite ? 0 : 4);
            for (long long m = 0; m < iv.multiplicity; ++m, ++row) {
                const int by = y + 4 + row * kRow;
                body << "<rect x=\"" << x0 << "\" y=\"" << by << "\" width=\"" << x1 - x0 << "\" height=\"" << kRow - 4
                     << "\" class=\"" << (infinite ? "bar inf" : "bar") << "\"/>\n";
            }
        }
        y += panel + kPanelGap;
    }
    const int axis = y - kPanelGap + 12;
    for (int t = 0; t <= steps; ++t) {
        const int x = kLeft + t * kUnit;
        body << "<line x1=\"" << x << "\" y1=\"" << axis << "\" x2=\"" << x << "\" y2=\"" << axis + 6 << "\" class=\"tick\"/>\n";
        if (t < steps) body << "<text x=\"" << x + kUnit / 2 << "\" y=\"" << axis + 20 << "\" class=\"num\">" << t << "</text>\n";
    }
    const int height = axis + 32;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width
        << " " << height << "\">\n";
    out << "<style>.bar{fill:#2b6cb0}.inf{fill:#c05621}.panel{fill:none;stroke:#cbd5e0}.tick{stroke:#4a5568}"
           ".lbl,.num,.title{font-family:monospace;font-size:11px}.num{text-anchor:middle}</style>\n";
    out << "<text x=\"8\" y=\"20\" class=\"title\">" << escape(title) << "</text>\n";
    out << body.str();
    out << "<line x1=\"" << kLeft << "\" y1=\"" << axis << "\" x2=\"" << kLeft + steps * kUnit << "\" y2=\"" << axis
        << "\" class=\"tick\"/>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace ainf::cli
