#include "stiffid/sizing.hpp"

#include <cmath>
#include <numbers>

#include "stiffid/errors.hpp"

namespace stiffid {

namespace {
bool positive(double v) { return std::isfinite(v) && v > 0.0; }
}  // namespace

void BeamSpec::validate() const {
    if (!positive(force_n)) throw InvalidArgument("sizing", "force must be > 0 N");
    if (!positive(length_mm)) throw InvalidArgument("sizing", "length must be > 0 mm");
    if (!positive(young_nmm2)) throw InvalidArgument("sizing", "Young modulus must be > 0 N/mm^2");
    if (!positive(diameter_mm)) throw InvalidArgument("sizing", "diameter must be > 0 mm");
}

Deflection deflection(const BeamSpec& spec) {
    spec.validate();
    Deflection out;
    out.inertia_mm4 = std::numbers::pi * std::pow(spec.diameter_mm, 4) / 64.0;
    out.delta_mm = spec.force_n * std::pow(spec.length_mm, 3) / (3.0 * spec.young_nmm2 * out.inertia_mm4);
    out.stiffness_n_per_m = spec.force_n / out.delta_mm * 1e3;
    return out;
}

std::vector<SweepRow> sweep_lengths(const BeamSpec& spec, double lo_mm, double hi_mm, double step_mm) {
    if (!positive(step_mm)) throw InvalidArgument("sizing", "sweep step must be > 0");
    if (!positive(lo_mm) || !std::isfinite(hi_mm) || hi_mm < lo_mm)
        throw InvalidArgument("sizing", "sweep range must satisfy 0 < lo <= hi");
    std::vector<SweepRow> rows;
    const auto n = static_cast<long>(std::floor((hi_mm - lo_mm) / step_mm * (1.0 + 1e-9) + 1e-9));
    for (long i = 0; i <= n; ++i) {
        BeamSpec s = spec;
        s.length_mm = lo_mm + static_cast<double>(i) * step_mm;
        rows.push_back({s.length_mm, deflection(s)});
    }
    return rows;
}

}  // namespace stiffid
