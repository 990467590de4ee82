#pragma once

// Report documents for each pipeline stage: JSON objects and CSV tables.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stiffid/center.hpp"
#include "stiffid/identify.hpp"
#include "stiffid/json_text.hpp"
#include "stiffid/sizing.hpp"

namespace stiffid {

inline constexpr const char* kToolName = "stiffid";
inline constexpr const char* kToolVersion = "0.1.0";

/// 64-bit FNV-1a, lower-case hex.
std::string fnv1a_hex(std::string_view data);

/// {tool, version, command, inputs: [{name, fnv1a}]}. No timestamps, so reports are reproducible.
json_text::Json report_metadata(const std::string& command,
                                const std::vector<std::pair<std::string, std::string_view>>& inputs);

/// (file name, contents)
using CsvFile = std::pair<std::string, std::string>;

json_text::Json matrix_json(const Mat3& m);
json_text::Json matrix_json(const Mat6& m);
std::string matrix_csv(const Mat3& m);
std::string matrix_csv(const Mat6& m);

json_text::Json principal_json(const PrincipalDecomposition& pd);
json_text::Json angles_json(const std::vector<AngleReport>& angles);

json_text::Json identification_json(const Identification& id, const json_text::Json& meta);
std::vector<CsvFile> identification_csv(const Identification& id);

struct Assembly {
    Mat3 kf_bt;
    Mat3 kf_bw;
    Mat3 kf;  // bt + bw
    std::optional<PrincipalDecomposition> principal, principal_bt, principal_bw;
    std::vector<AngleReport> angles, angles_bt, angles_bw;
    std::vector<std::string> warnings;
};

Assembly assemble_systems(const Mat3& kf_bt, const Mat3& kf_bw, const std::vector<std::string>& planes);

/// Reads the "K_F" member (3 x 3, N/m) of an identify report or a bare {"K_F": ...} file.
Mat3 read_kf_text(std::string_view text, const std::string& source);

json_text::Json assembly_json(const Assembly& a, const json_text::Json& meta);
std::vector<CsvFile> assembly_csv(const Assembly& a);

json_text::Json center_json(const CenterMeasurement& m, const CenterSolution& s, std::optional<double> v3_angle,
                            const json_text::Json& meta);
std::vector<CsvFile> center_csv(const CenterSolution& s, std::optional<double> v3_angle);

json_text::Json sizing_json(const BeamSpec& spec, const Deflection& d, const std::vector<SweepRow>& sweep,
                            const json_text::Json& meta);
std::vector<CsvFile> sizing_csv(const BeamSpec& spec, const Deflection& d, const std::vector<SweepRow>& sweep);

}  // namespace stiffid
