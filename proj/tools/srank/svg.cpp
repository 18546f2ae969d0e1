#include "svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <sra/errors.hpp>

namespace srank {

namespace {

constexpr const char* kCurveColors[] = {"#2b6cb0", "#c05621", "#2f855a", "#6b46c1", "#b83280"};
constexpr const char* kBandFill = "#4a7fb5";

std::string fixed2(double v) {
    char buf[40];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, p);
}

std::string shortest(double v) {
    char buf[40];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string xml_escape(const std::string& text) {
    std::string out;
    for (const char c : text) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

// Smallest 1-2-5 multiple of a power of ten that is >= raw.
double nice125(double raw) {
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (const double m : {1.0, 2.0, 5.0, 10.0})
        if (mag * m >= raw * (1.0 - 1e-12)) return mag * m;
    return mag * 10.0;
}

struct Frame {
    double left, right, top, bottom;  // plot rectangle in pixels
    std::size_t depths;
    double ymax;

    double x(double d) const {
        if (depths == 1) return 0.5 * (left + right);
        return left + (d - 1.0) / (static_cast<double>(depths) - 1.0) * (right - left);
    }
    double y(double v) const { return bottom - v / ymax * (bottom - top); }
};

std::string points_attr(const Frame& f, std::span<const double> values, std::size_t from,
                        std::size_t to) {
    std::string out;
    for (std::size_t i = from; i < to; ++i) {
        if (!out.empty()) out += ' ';
        out += fixed2(f.x(static_cast<double>(i) + 1.0)) + ',' + fixed2(f.y(values[i]));
    }
    return out;
}

void append_polyline(std::string& svg, const Frame& f, std::span<const double> values,
                     std::size_t from, std::size_t to, const char* color, bool dashed) {
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.8\"";
    if (dashed) svg += " stroke-dasharray=\"6 4\"";
    svg += " points=\"" + points_attr(f, values, from, to) + "\"/>\n";
}

}  // namespace

std::string render_svg(const std::vector<PlotCurve>& curves, const sra::ReferenceBand* band,
                       const PlotOptions& options) {
    std::size_t depths = 0;
    if (band) depths = band->depth_count();
    for (const auto& c : curves) {
        if (depths != 0 && c.curve.depth_count() != depths)
            throw sra::InvalidInputError(
                "plotted curves and band must cover one shared depth range (got " +
                std::to_string(c.curve.depth_count()) + " and " + std::to_string(depths) + ")");
        depths = c.curve.depth_count();
    }
    if (depths == 0) throw sra::InvalidInputError("nothing to plot");

    double ymax = 0.0;
    for (const auto& c : curves)
        for (const double v : c.curve.values) ymax = std::max(ymax, v);
    if (band)
        for (const auto& q : band->quantile_curves)
            for (const double v : q) ymax = std::max(ymax, v);
    if (ymax <= 0.0) ymax = 1.0;
    ymax *= 1.06;

    const double W = options.width, H = options.height;
    Frame f{56.0, W - 16.0, options.title.empty() ? 18.0 : 36.0, H - 46.0, depths, ymax};

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed2(W) + "\" height=\"" +
           fixed2(H) + "\" viewBox=\"0 0 " + fixed2(W) + " " + fixed2(H) + "\">\n";
    svg += "<rect width=\"" + fixed2(W) + "\" height=\"" + fixed2(H) + "\" fill=\"#ffffff\"/>\n";

    if (!options.title.empty())
        svg += "<text x=\"" + fixed2(f.left) + "\" y=\"22\" font-family=\"sans-serif\" "
               "font-size=\"13\" fill=\"#1a202c\">" + xml_escape(options.title) + "</text>\n";

    // y grid and tick labels
    const double ystep = nice125(ymax / 4.5);
    for (double v = 0.0; v <= ymax * 1.0001; v += ystep) {
        const std::string yy = fixed2(f.y(v));
        svg += "<line x1=\"" + fixed2(f.left) + "\" y1=\"" + yy + "\" x2=\"" + fixed2(f.right) +
               "\" y2=\"" + yy + "\" stroke=\"#e2e8f0\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fixed2(f.left - 6.0) + "\" y=\"" + fixed2(f.y(v) + 3.5) +
               "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#4a5568\" "
               "text-anchor=\"end\">" + shortest(v) + "</text>\n";
    }

    // band regions between consecutive quantile curves
    if (band) {
        const auto& q = band->quantile_curves;
        for (std::size_t i = 0; i + 1 < q.size(); ++i) {
            std::string d = "M";
            for (std::size_t k = 0; k < depths; ++k)
                d += (k ? " L" : "") + std::string(" ") +
                     fixed2(f.x(static_cast<double>(k) + 1.0)) + " " + fixed2(f.y(q[i][k]));
            for (std::size_t k = depths; k-- > 0;)
                d += " L " + fixed2(f.x(static_cast<double>(k) + 1.0)) + " " +
                     fixed2(f.y(q[i + 1][k]));
            d += " Z";
            svg += "<path d=\"" + d + "\" fill=\"" + std::string(kBandFill) +
                   "\" fill-opacity=\"0.18\" stroke=\"none\"/>\n";
        }
        if (q.size() == 1)
            svg += "<path fill=\"none\" stroke=\"#718096\" stroke-width=\"1.2\" d=\"M " +
                   points_attr(f, q[0], 0, depths) + "\"/>\n";
    }

    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& pc = curves[i];
        const char* color = kCurveColors[i % std::size(kCurveColors)];
        const auto values = std::span<const double>(pc.curve.values);
        if (pc.flagged_from && *pc.flagged_from >= 1 &&
            static_cast<std::size_t>(*pc.flagged_from) < depths) {
            const auto split = static_cast<std::size_t>(*pc.flagged_from);
            append_polyline(svg, f, values, 0, split, color, false);
            append_polyline(svg, f, values, split - 1, depths, color, true);
        } else {
            append_polyline(svg, f, values, 0, depths, color, false);
        }
    }

    // axes on top of the data
    svg += "<line x1=\"" + fixed2(f.left) + "\" y1=\"" + fixed2(f.top) + "\" x2=\"" +
           fixed2(f.left) + "\" y2=\"" + fixed2(f.bottom) +
           "\" stroke=\"#1a202c\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + fixed2(f.left) + "\" y1=\"" + fixed2(f.bottom) + "\" x2=\"" +
           fixed2(f.right) + "\" y2=\"" + fixed2(f.bottom) +
           "\" stroke=\"#1a202c\" stroke-width=\"1\"/>\n";

    // x ticks: every depth when few, else a 1-2-5 stride plus depth 1
    std::vector<std::size_t> xticks;
    if (depths <= 10) {
        for (std::size_t d = 1; d <= depths; ++d) xticks.push_back(d);
    } else {
        const auto step =
            static_cast<std::size_t>(nice125(static_cast<double>(depths) / 6.0));
        xticks.push_back(1);
        for (std::size_t d = step; d <= depths; d += step) xticks.push_back(d);
    }
    for (const std::size_t d : xticks) {
        const std::string xx = fixed2(f.x(static_cast<double>(d)));
        svg += "<line x1=\"" + xx + "\" y1=\"" + fixed2(f.bottom) + "\" x2=\"" + xx + "\" y2=\"" +
               fixed2(f.bottom + 4.0) + "\" stroke=\"#1a202c\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + xx + "\" y=\"" + fixed2(f.bottom + 16.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#4a5568\" "
               "text-anchor=\"middle\">" + std::to_string(d) + "</text>\n";
    }

    svg += "<text x=\"" + fixed2(0.5 * (f.left + f.right)) + "\" y=\"" + fixed2(H - 12.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#1a202c\" "
           "text-anchor=\"middle\">depth</text>\n";
    svg += "<text x=\"14\" y=\"" + fixed2(0.5 * (f.top + f.bottom)) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#1a202c\" "
           "text-anchor=\"middle\" transform=\"rotate(-90 14 " +
           fixed2(0.5 * (f.top + f.bottom)) + ")\">" + xml_escape(options.y_label) + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace srank
