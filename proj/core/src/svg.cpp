#include "sgefem/svg.hpp"

#include "sgefem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sgefem {

namespace {

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;

    double map(double v, double plo, double phi) const {
        double t;
        if (log) {
            t = (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
        } else {
            t = (v - lo) / (hi - lo);
        }
        return plo + t * (phi - plo);
    }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            const int e0 = static_cast<int>(std::floor(std::log10(lo)));
            const int e1 = static_cast<int>(std::ceil(std::log10(hi)));
            for (int e = e0; e <= e1; ++e) {
                const double v = std::pow(10.0, e);
                if (v >= lo * 0.999 && v <= hi * 1.001) out.push_back(v);
            }
        } else {
            const double span = hi - lo;
            const double raw = span / 6.0;
            const double mag = std::pow(10.0, std::floor(std::log10(raw)));
            double step = mag;
            for (double s : {1.0, 2.0, 5.0, 10.0}) {
                if (raw <= s * mag) {
                    step = s * mag;
                    break;
                }
            }
            double v = std::ceil(lo / step) * step;
            for (; v <= hi + 0.5 * step; v += step) out.push_back(v);
        }
        return out;
    }
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

} // namespace

std::string render_svg_plot(const PlotSpec& spec, const std::vector<PlotSeries>& series) {
    const double ml = 70, mr = 20, mt = 36, mb = 50;
    const double px0 = ml, px1 = spec.width - mr;
    const double py0 = spec.height - mb, py1 = mt;  // y grows upward

    Axis ax, ay;
    ax.log = spec.logx;
    ay.log = spec.logy;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double x = s.x[i], y = s.y[i];
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (spec.logx && x <= 0.0) continue;
            if (spec.logy && y <= 0.0) continue;
            if (first) {
                ax.lo = ax.hi = x;
                ay.lo = ay.hi = y;
                first = false;
            }
            ax.lo = std::min(ax.lo, x);
            ax.hi = std::max(ax.hi, x);
            ay.lo = std::min(ay.lo, y);
            ay.hi = std::max(ay.hi, y);
        }
    }
    if (first) {
        ax = {0, 1, spec.logx};
        ay = {0, 1, spec.logy};
    }
    auto pad = [](Axis& a) {
        if (a.log) {
            a.lo /= 1.3;
            a.hi *= 1.3;
        } else {
            const double span = (a.hi > a.lo) ? a.hi - a.lo : std::max(1.0, std::abs(a.hi));
            a.lo -= 0.06 * span;
            a.hi += 0.06 * span;
        }
    };
    pad(ax);
    pad(ay);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
        << "\" height=\"" << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << spec.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-size=\"14\">" << spec.title << "</text>\n";

    // axes box and ticks
    out << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << px1 - px0
        << "\" height=\"" << py0 - py1 << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ax.ticks()) {
        const double x = ax.map(t, px0, px1);
        out << "<line x1=\"" << x << "\" y1=\"" << py0 << "\" x2=\"" << x << "\" y2=\""
            << py0 + 4 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << py0 + 18 << "\" text-anchor=\"middle\">"
            << fmt(t) << "</text>\n";
        out << "<line x1=\"" << x << "\" y1=\"" << py0 << "\" x2=\"" << x << "\" y2=\""
            << py1 << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    }
    for (double t : ay.ticks()) {
        const double y = ay.map(t, py0, py1);
        out << "<line x1=\"" << px0 - 4 << "\" y1=\"" << y << "\" x2=\"" << px0
            << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px0 - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
        out << "<line x1=\"" << px0 << "\" y1=\"" << y << "\" x2=\"" << px1 << "\" y2=\""
            << y << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    }
    out << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"" << spec.height - 10
        << "\" text-anchor=\"middle\">" << spec.xlabel << "</text>\n";
    out << "<text transform=\"translate(16," << (py0 + py1) / 2
        << ") rotate(-90)\" text-anchor=\"middle\">" << spec.ylabel << "</text>\n";

    // series
    double ly = py1 + 14;
    for (const auto& s : series) {
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double x = s.x[i], y = s.y[i];
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (spec.logx && x <= 0.0) continue;
            if (spec.logy && y <= 0.0) continue;
            pts << ax.map(x, px0, px1) << ',' << ay.map(y, py0, py1) << ' ';
        }
        out << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\""
            << s.color << "\" stroke-width=\"1.5\""
            << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                const double x = s.x[i], y = s.y[i];
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                if (spec.logx && x <= 0.0) continue;
                if (spec.logy && y <= 0.0) continue;
                out << "<circle cx=\"" << ax.map(x, px0, px1) << "\" cy=\""
                    << ay.map(y, py0, py1) << "\" r=\"2.5\" fill=\"" << s.color
                    << "\"/>\n";
            }
        }
        if (!s.label.empty()) {
            out << "<line x1=\"" << px1 - 150 << "\" y1=\"" << ly << "\" x2=\""
                << px1 - 120 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
                << "\" stroke-width=\"1.5\""
                << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
            out << "<text x=\"" << px1 - 114 << "\" y=\"" << ly + 4 << "\">" << s.label
                << "</text>\n";
            ly += 16;
        }
    }
    out << "</svg>\n";
    return out.str();
}

void write_svg_plot(const std::string& path, const PlotSpec& spec,
                    const std::vector<PlotSeries>& series) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open plot output: " + path);
    out << render_svg_plot(spec, series);
}

} // namespace sgefem
