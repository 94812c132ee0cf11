#include "cagl/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cagl/error.hpp"
#include "cagl/io_util.hpp"

namespace cagl {

namespace {

struct range {
    double lo = 0.0, hi = 1.0;
    void widen(double v) {
        if (std::isnan(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

void write_svg_line_chart(const std::filesystem::path& path, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::vector<plot_series>& series, int width, int height) {
    for (const auto& s : series)
        if (s.x.size() != s.y.size())
            raise(errc::invalid_argument, "plot series \"" + s.label + "\": x/y length mismatch");

    bool any = false;
    range rx, ry;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (std::isnan(s.y[i])) continue;
            if (!any) {
                rx = {s.x[i], s.x[i]};
                ry = {s.y[i], s.y[i]};
                any = true;
            } else {
                rx.widen(s.x[i]);
                ry.widen(s.y[i]);
            }
        }
    if (!any) {
        rx = {0.0, 1.0};
        ry = {0.0, 1.0};
    }
    if (rx.hi == rx.lo) rx.hi = rx.lo + 1.0;
    if (ry.hi == ry.lo) {
        ry.lo -= 0.5;
        ry.hi += 0.5;
    }
    // A little headroom so lines do not hug the frame.
    double pad_y = 0.05 * (ry.hi - ry.lo);
    ry.lo -= pad_y;
    ry.hi += pad_y;

    const double ml = 70, mr = 20, mt = 40, mb = 50;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto sx = [&](double v) { return ml + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto sy = [&](double v) { return mt + ph - (v - ry.lo) / (ry.hi - ry.lo) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title) << "</text>\n";

    // Frame and ticks.
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double fx = rx.lo + (rx.hi - rx.lo) * i / 5.0;
        double fy = ry.lo + (ry.hi - ry.lo) * i / 5.0;
        double px = sx(fx), py = sy(fy);
        svg << "<line x1=\"" << px << "\" y1=\"" << mt + ph << "\" x2=\"" << px << "\" y2=\""
            << mt + ph + 5 << "\" stroke=\"#444\"/>\n";
        svg << "<text x=\"" << px << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(fx) << "</text>\n";
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << py << "\" x2=\"" << ml << "\" y2=\"" << py
            << "\" stroke=\"#444\"/>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(fy) << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape(x_label) << "</text>\n";
    svg << "<text transform=\"translate(16," << mt + ph / 2
        << ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape(y_label) << "</text>\n";

    for (const auto& s : series) {
        svg << "<path fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
        if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << " d=\"";
        bool pen_down = false;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (std::isnan(s.y[i])) {
                pen_down = false;
                continue;
            }
            svg << (pen_down ? 'L' : 'M') << format_double(sx(s.x[i])) << ' '
                << format_double(sy(s.y[i])) << ' ';
            pen_down = true;
        }
        svg << "\"/>\n";
    }

    double ly = mt + 14;
    for (const auto& s : series) {
        svg << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly - 4 << "\" x2=\""
            << ml + pw - 125 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
        svg << "<text x=\"" << ml + pw - 118 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label)
            << "</text>\n";
        ly += 16;
    }
    svg << "</svg>\n";
    write_file_atomic(path, svg.str());
}

} // namespace cagl
