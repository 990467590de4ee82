#pragma once

// Forward simulator: campaigns generated from a known stiffness matrix, with
// phase-dependent hysteresis offsets and Gaussian reading noise.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stiffid/ingest.hpp"
#include "stiffid/linalg.hpp"

namespace stiffid {

/// Stiffness matrices at or above this condition are refused.
inline constexpr double kSynthConditionLimit = 1e6;

struct SynthCase {
    std::string label;
    Vec3 direction;     // unit
    Point3 applied_at;  // m
};

struct SynthSpec {
    Mat6 k_true;
    SensorConfig sensor_config = SensorConfig::cube_default(0.05);
    BlockId block_id = BlockId::BT;
    double step_n = 300.0;
    double max_n = 2000.0;
    std::vector<SynthCase> cases;
    /// Half-width of the charge/discharge offset per reading (m).
    std::array<double, 6> hysteresis{};
    /// Sign of the charge offset per reading; discharge uses the opposite sign.
    std::array<int, 6> hysteresis_sign{1, 1, 1, 1, 1, 1};
    double noise_sigma = 0.0;  // m
    std::uint64_t seed = 0;
    int repetitions = 1;

    /// Throws InvalidArgument for bad protocol values, SingularK for K_true.
    void validate() const;
};

/// Six cases: forces along x, y, z at `tip`, then x, y, z again at tip offset
/// by `lever` along z, x, y respectively, so the moments span all three axes.
std::vector<SynthCase> default_cases(const Point3& tip, double lever);

/// Load levels step, 2 step, ... below max, then max.
std::vector<double> load_levels(double step_n, double max_n);

/// Inverse of readings_to_twist_matrix: (rho, eps) -> six readings.
Mat6 twist_to_readings_matrix(const SensorConfig& cfg);
ReadingSet twist_to_readings(const Twist& t, const SensorConfig& cfg);

/// Deterministic for a fixed spec (seed included).
Campaign simulate_campaign(const SynthSpec& spec);

/// SynthSpec JSON: K_true in SI (6x6 rows), sensor_config as in campaigns,
/// protocol {step_daN|step_N, max_daN|max_N}, cases, hysteresis_um, noise_um, seed.
SynthSpec parse_synth_spec_text(std::string_view text);
SynthSpec parse_synth_spec(const std::filesystem::path& path);

}  // namespace stiffid
