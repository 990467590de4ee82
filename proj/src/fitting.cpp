#include "stiffid/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stiffid/errors.hpp"
#include "stiffid/json_text.hpp"

namespace stiffid {

namespace {

constexpr const char* kModule = "fitting";
constexpr double kLevelTolerance = 1e-6;  // N

std::vector<ForcePoint> sorted_by_force(std::vector<ForcePoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const ForcePoint& a, const ForcePoint& b) { return a.first < b.first; });
    return pts;
}

}  // namespace

LineFit fit_line(std::span<const ForcePoint> points) {
    const auto n = static_cast<double>(points.size());
    if (points.size() < 2) throw DegenerateAbscissa(kModule, "need at least 2 points");

    // Centered sums keep the normal equations well conditioned.
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) throw DegenerateAbscissa(kModule, "all forces are equal");

    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (const auto& [x, y] : points) {
        const double r = y - (fit.slope * x + fit.intercept);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

void ChargePath::validate() const {
    if (points.size() < 2) throw InvalidArgument(kModule, to_string(phase) + " path needs at least 2 points");
    bool up = true, down = true;
    for (std::size_t i = 1; i < points.size(); ++i) {
        up = up && points[i].first > points[i - 1].first;
        down = down && points[i].first < points[i - 1].first;
    }
    if (!up && !down) throw InvalidArgument(kModule, to_string(phase) + " forces must be strictly monotone");
}

double MidlineFit::full_scale() const {
    double m = 0.0;
    for (double c : midpoints) m = std::max(m, std::abs(c));
    return m;
}

MidlineFit midline(const ChargePath& charge, const ChargePath& discharge) {
    charge.validate();
    discharge.validate();
    const auto a = sorted_by_force(charge.points);
    const auto b = sorted_by_force(discharge.points);

    std::vector<std::string> unmatched;
    std::size_t j = 0;
    MidlineFit out;
    std::vector<ForcePoint> mids;
    for (const auto& [force, value] : a) {
        while (j < b.size() && b[j].first < force - kLevelTolerance) unmatched.push_back("discharge " + json_text::shortest(b[j++].first) + " N");
        if (j < b.size() && std::abs(b[j].first - force) <= kLevelTolerance) {
            const double c = (value + b[j].second) / 2.0;
            out.levels.push_back(force);
            out.midpoints.push_back(c);
            out.half_widths.push_back(std::abs(value - b[j].second) / 2.0);
            mids.emplace_back(force, c);
            ++j;
        } else {
            unmatched.push_back("charge " + json_text::shortest(force) + " N");
        }
    }
    while (j < b.size()) unmatched.push_back("discharge " + json_text::shortest(b[j++].first) + " N");
    if (!unmatched.empty()) {
        std::ostringstream msg;
        msg << "charge and discharge force grids differ; unmatched levels:";
        for (const auto& u : unmatched) msg << ' ' << u << ';';
        throw LevelMismatch(kModule, msg.str());
    }

    const LineFit line = fit_line(mids);
    out.slope = line.slope;
    out.intercept = line.intercept;
    out.rms_residual = line.rms_residual;
    for (const auto& [x, c] : mids) out.residuals.push_back(c - (line.slope * x + line.intercept));
    return out;
}

double error_percent(const MidlineFit& fit, double full_scale) {
    if (!(full_scale >= 0.0)) throw InvalidArgument(kModule, "full scale must be >= 0");
    if (full_scale == 0.0) {
        if (fit.rms_residual == 0.0) return 0.0;
        throw ZeroScale(kModule, "zero full-scale value with non-zero residuals");
    }
    return 100.0 * fit.rms_residual / full_scale;
}

}  // namespace stiffid
