#pragma once

// Cantilever holding-fixture sizing: round bar clamped at one end, point load at the tip.

#include <vector>

namespace stiffid {

struct BeamSpec {
    double force_n = 0.0;
    double length_mm = 0.0;
    double young_nmm2 = 0.0;
    double diameter_mm = 0.0;

    /// Throws InvalidArgument unless every field is finite and > 0.
    void validate() const;
};

struct Deflection {
    double inertia_mm4 = 0.0;
    double delta_mm = 0.0;
    double stiffness_n_per_m = 0.0;
};

struct SweepRow {
    double length_mm = 0.0;
    Deflection result;
};

/// I = pi D^4 / 64, delta = P L^3 / (3 E I), k = P / delta.
Deflection deflection(const BeamSpec& spec);

/// Rows for L = lo, lo + step, ... up to hi (inclusive within step * 1e-9).
/// Throws InvalidArgument for step <= 0 or hi < lo.
std::vector<SweepRow> sweep_lengths(const BeamSpec& spec, double lo_mm, double hi_mm, double step_mm);

}  // namespace stiffid
