#pragma once

// Measurement campaigns: file formats, validation, and the conversion of raw
// transducer readings and load steps into twists and wrenches.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stiffid/linalg.hpp"
#include "stiffid/torsor.hpp"

namespace stiffid {

inline constexpr int kCampaignSchemaVersion = 1;

enum class Phase { charge, discharge };
enum class BlockId { BT, BW };

std::string to_string(Phase p);
std::string to_string(BlockId b);

/// Two transducers reading along `measure_axis`, placed a distance `spacing`
/// apart along `separation_axis`. Sensor indices are 0-based into the six readings.
struct SensorPair {
    Vec3 measure_axis;
    Vec3 separation_axis;
    double spacing = 0.0;  // m
    std::array<int, 2> sensors{};

    /// Axis of the rotation this pair senses: separation x measure.
    Vec3 rotation_axis() const { return cross(separation_axis, measure_axis); }

    bool operator==(const SensorPair&) const = default;
};

struct SensorConfig {
    std::array<SensorPair, 3> pairs{};
    Point3 expressed_at;  // m

    /// Default cube layout: pair 1 reads x and is split along z, pair 2 reads y
    /// split along x, pair 3 reads z split along y; sensors (1,2), (3,4), (5,6).
    static SensorConfig cube_default(double spacing, const Point3& expressed_at = {});

    /// Throws GeometryError when an invariant is violated.
    void validate() const;

    bool operator==(const SensorConfig&) const = default;
};

struct ReadingSet {
    std::array<double, 6> m{};  // m

    bool operator==(const ReadingSet&) const = default;
};

struct LoadStep {
    double force = 0.0;  // N
    Vec3 direction;      // unit
    Point3 applied_at;   // m, relative to the cube center
    Phase phase = Phase::charge;
    ReadingSet readings;      // mean over repetitions
    ReadingSet readings_std;  // sample standard deviation over repetitions (0 for one)

    bool operator==(const LoadStep&) const = default;
};

struct LoadCase {
    std::string label;
    std::vector<LoadStep> steps;
    // Case-level geometry used by the CSV importer when steps carry none.
    std::optional<Vec3> direction;
    std::optional<Point3> applied_at;

    bool operator==(const LoadCase&) const = default;
};

struct Campaign {
    BlockId block_id = BlockId::BT;
    SensorConfig sensor_config;
    std::vector<LoadCase> cases;
    int repetitions = 1;

    /// Schema-level and geometric checks plus, for BT campaigns, the
    /// six-case rank requirement. Throws SchemaError/GeometryError/RankError.
    void validate() const;

    bool operator==(const Campaign&) const = default;
};

/// Unit-force wrench of a load case at `expressed_at` (force = direction).
Wrench unit_case_wrench(const LoadCase& c, const Point3& expressed_at);

/// Linear map from the six readings to (rho, eps).
Mat6 readings_to_twist_matrix(const SensorConfig& cfg);

Twist readings_to_twist(const ReadingSet& r, const SensorConfig& cfg);

Wrench step_to_wrench(const LoadStep& s, const Point3& expressed_at);

Campaign parse_campaign_text(std::string_view text);
Campaign parse_campaign(const std::filesystem::path& path);

/// Canonical JSON (mm, daN, um). parse_campaign_text(write_campaign(c)) == c bit-exactly.
std::string write_campaign(const Campaign& c);

/// Logger dump: one row per step `case,phase,force_daN,m1..m6` (um), optional
/// header. Rows repeating (case, phase, force) are repetitions and are
/// averaged. Geometry comes from `layout` (case-level direction/applied_at).
Campaign import_logger_csv(std::string_view csv, const Campaign& layout);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace stiffid
