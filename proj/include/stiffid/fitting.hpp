#pragma once

// Charge/discharge reduction: least-squares lines and the hysteresis midline.

#include <span>
#include <utility>
#include <vector>

#include "stiffid/ingest.hpp"

namespace stiffid {

/// (force N, value) sample.
using ForcePoint = std::pair<double, double>;

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

/// Ordinary least squares of value on force. Throws DegenerateAbscissa when
/// fewer than two distinct forces are present.
LineFit fit_line(std::span<const ForcePoint> points);

struct ChargePath {
    std::vector<ForcePoint> points;
    Phase phase = Phase::charge;

    /// >= 2 points, forces strictly monotone. Throws InvalidArgument.
    void validate() const;
};

struct MidlineFit {
    double slope = 0.0;      // value per N
    double intercept = 0.0;  // value
    double rms_residual = 0.0;
    std::vector<double> levels;       // N, ascending
    std::vector<double> midpoints;    // C = (A + B) / 2 per level
    std::vector<double> residuals;    // C - line(level)
    std::vector<double> half_widths;  // |A - B| / 2 per level

    /// Largest |C|, the full-scale value of the series.
    double full_scale() const;
};

/// Levels of the two phases must coincide within 1e-6 N; otherwise throws
/// LevelMismatch naming the unmatched levels.
MidlineFit midline(const ChargePath& charge, const ChargePath& discharge);

/// 100 * rms_residual / full_scale. Zero for a perfect fit with zero scale;
/// throws ZeroScale when the scale is zero but residuals are not.
double error_percent(const MidlineFit& fit, double full_scale);

inline double error_percent(const MidlineFit& fit) { return error_percent(fit, fit.full_scale()); }

}  // namespace stiffid
