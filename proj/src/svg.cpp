#include "stiffid/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace stiffid::svg {

namespace {

constexpr int kPanelW = 360;
constexpr int kPanelH = 280;
constexpr int kTitleH = 30;
constexpr double kLeft = 62, kRight = 12, kTop = 26, kBottom = 40;

const char* const kComponentNames[6] = {"rho_x", "rho_y", "rho_z", "eps_x", "eps_y", "eps_z"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v) {
    if (std::abs(v) < 1e-300) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(lo <= hi)) lo = 0, hi = 1;
        if (hi - lo < 1e-300 * std::max(1.0, std::abs(hi))) {
            const double d = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
            lo -= d, hi += d;
        }
        const double m = (hi - lo) * 0.05;
        lo -= m, hi += m;
    }
    double span() const { return hi - lo; }
};

void draw_panel(std::ostringstream& o, const Panel& p, double ox, double oy) {
    Range xr, yr;
    for (const auto& s : p.series)
        for (const auto& [x, y] : s.points) xr.add(x), yr.add(y);
    xr.pad();
    yr.pad();
    const double w = kPanelW - kLeft - kRight;
    const double h = kPanelH - kTop - kBottom;
    if (p.equal_aspect) {
        const double scale = std::max(xr.span() / w, yr.span() / h);
        const double cx = (xr.lo + xr.hi) / 2, cy = (yr.lo + yr.hi) / 2;
        xr.lo = cx - scale * w / 2, xr.hi = cx + scale * w / 2;
        yr.lo = cy - scale * h / 2, yr.hi = cy + scale * h / 2;
    }
    const auto px = [&](double x) { return ox + kLeft + (x - xr.lo) / xr.span() * w; };
    const auto py = [&](double y) { return oy + kTop + h - (y - yr.lo) / yr.span() * h; };

    o << "<g>\n";
    o << "<rect x=\"" << fmt(ox + kLeft) << "\" y=\"" << fmt(oy + kTop) << "\" width=\"" << fmt(w) << "\" height=\""
      << fmt(h) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    o << "<text x=\"" << fmt(ox + kPanelW / 2.0) << "\" y=\"" << fmt(oy + 16)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(p.title) << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xr.lo + xr.span() * i / 4.0;
        const double yv = yr.lo + yr.span() * i / 4.0;
        o << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << fmt(oy + kTop + h + 14)
          << "\" text-anchor=\"middle\" font-size=\"9\">" << tick(xv) << "</text>\n";
        o << "<text x=\"" << fmt(ox + kLeft - 4) << "\" y=\"" << fmt(py(yv) + 3)
          << "\" text-anchor=\"end\" font-size=\"9\">" << tick(yv) << "</text>\n";
    }
    o << "<text x=\"" << fmt(ox + kLeft + w / 2) << "\" y=\"" << fmt(oy + kPanelH - 8)
      << "\" text-anchor=\"middle\" font-size=\"10\">" << escape(p.x_label) << "</text>\n";
    o << "<text x=\"" << fmt(ox + 12) << "\" y=\"" << fmt(oy + kTop + h / 2) << "\" text-anchor=\"middle\" font-size=\"10\" "
      << "transform=\"rotate(-90 " << fmt(ox + 12) << " " << fmt(oy + kTop + h / 2) << ")\">" << escape(p.y_label)
      << "</text>\n";

    int legend = 0;
    for (const auto& s : p.series) {
        if (s.line && s.points.size() > 1) {
            o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\"";
            if (s.dashed) o << " stroke-dasharray=\"4 3\"";
            o << " points=\"";
            for (std::size_t i = 0; i < s.points.size(); ++i)
                o << (i ? " " : "") << fmt(px(s.points[i].first)) << "," << fmt(py(s.points[i].second));
            o << "\"/>\n";
        }
        if (s.markers)
            for (const auto& [x, y] : s.points)
                o << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"2.5\" fill=\"" << s.color
                  << "\"/>\n";
        if (!s.name.empty()) {
            const double ly = oy + kTop + 10 + 11 * legend++;
            o << "<text x=\"" << fmt(ox + kLeft + 6) << "\" y=\"" << fmt(ly) << "\" font-size=\"9\" fill=\"" << s.color
              << "\">" << escape(s.name) << "</text>\n";
        }
    }
    o << "</g>\n";
}

}  // namespace

std::string render(const std::vector<Panel>& panels, int columns, const std::string& title) {
    columns = std::max(1, columns);
    const int rows = static_cast<int>((panels.size() + static_cast<std::size_t>(columns) - 1) / columns);
    const int width = kPanelW * columns;
    const int height = kTitleH + kPanelH * std::max(rows, 1);
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\" font-family=\"sans-serif\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
      << "</text>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const double ox = kPanelW * static_cast<double>(i % static_cast<std::size_t>(columns));
        const double oy = kTitleH + kPanelH * static_cast<double>(i / static_cast<std::size_t>(columns));
        draw_panel(o, panels[i], ox, oy);
    }
    o << "</svg>\n";
    return o.str();
}

std::string fit_plot(const CaseReduction& c) {
    std::vector<Panel> panels;
    for (std::size_t k = 0; k < 6; ++k) {
        const auto& f = c.fits[k];
        const double unit = 1e6;  // urad or um
        Series charge{"charge", {}, "#d62728", true, true};
        Series discharge{"discharge", {}, "#1f77b4", true, true};
        Series mid{"midpoints C", {}, "#2ca02c", false, true};
        Series line{"midline", {}, "#000000", true, false, true};
        for (std::size_t i = 0; i < f.levels.size(); ++i) {
            const double x = f.levels[i];
            charge.points.emplace_back(x, (f.midpoints[i] + f.half_widths[i]) * unit);
            discharge.points.emplace_back(x, (f.midpoints[i] - f.half_widths[i]) * unit);
            mid.points.emplace_back(x, f.midpoints[i] * unit);
        }
        if (!f.levels.empty()) {
            line.points.emplace_back(f.levels.front(), (f.intercept + f.slope * f.levels.front()) * unit);
            line.points.emplace_back(f.levels.back(), (f.intercept + f.slope * f.levels.back()) * unit);
        }
        char title[96];
        std::snprintf(title, sizeof title, "%s  (error %.2f %%)", kComponentNames[k], c.error_percent[k]);
        panels.push_back({title, "force (N)", k < 3 ? "rotation (urad)" : "translation (um)",
                          {charge, discharge, mid, line}});
    }
    return render(panels, 3, "load case " + c.label);
}

std::string center_plot(const CenterMeasurement& m, const CenterSolution& s) {
    static const std::array<std::array<int, 2>, 3> kProjections{{{0, 1}, {1, 2}, {0, 2}}};
    static const char* const kNames[3] = {"xy", "yz", "xz"};
    static const char* const kColors[3] = {"#d62728", "#2ca02c", "#1f77b4"};

    double extent = 0.0;
    for (std::size_t a = 0; a < 3; ++a) extent = std::max(extent, norm(s.axes[a].M - s.CR));
    extent = std::max(extent, 0.05);

    std::vector<Panel> panels;
    for (std::size_t p = 0; p < 3; ++p) {
        const auto [i, j] = kProjections[p];
        const auto proj = [&](const Vec3& v) { return std::pair{v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]}; };
        Panel panel{std::string("projection ") + kNames[p], std::string(1, "xyz"[i]) + " (m)",
                    std::string(1, "xyz"[j]) + " (m)", {}, true};
        for (std::size_t a = 0; a < 3; ++a) {
            for (const auto& l : m.pairs[a]) {
                const Point3 q = s.axes[a].M;
                const double t = dot(q - l.point, l.direction);
                Series seg{"", {proj(l.point), proj(l.point + l.direction * t)}, kColors[a], true, false};
                seg.points.insert(seg.points.begin(), proj(l.point - l.direction * (0.1 * extent)));
                panel.series.push_back(seg);
            }
            const Vec3 n = s.planes[a].normal;
            const Point3 q = s.axes[a].M;
            panel.series.push_back({std::string("normal ") + "xyz"[a], {proj(q - n * extent), proj(q + n * extent)},
                                    kColors[a], true, false, true});
            panel.series.push_back({std::string("M") + "xyz"[a], {proj(q)}, kColors[a], false, true});
        }
        panel.series.push_back({"CR", {proj(s.CR)}, "#000000", false, true});
        panels.push_back(panel);
    }
    return render(panels, 3, "stiffness center");
}

std::string sweep_plot(const std::vector<SweepRow>& rows) {
    Series delta{"", {}, "#1f77b4", true, true};
    Series k{"", {}, "#d62728", true, true};
    for (const auto& r : rows) {
        delta.points.emplace_back(r.length_mm, r.result.delta_mm * 1e3);
        k.points.emplace_back(r.length_mm, r.result.stiffness_n_per_m);
    }
    return render({{"tip deflection", "length L (mm)", "deflection (um)", {delta}},
                   {"flexural stiffness", "length L (mm)", "k (N/m)", {k}}},
                  2, "holding fixture sizing");
}

}  // namespace stiffid::svg
