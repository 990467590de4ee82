#pragma once

#include <filesystem>
#include <string>

#include "stiffid/synth.hpp"

namespace testing_support {

inline std::filesystem::path data_path(const std::string& name) {
    return std::filesystem::path(STIFFID_DATA_DIR) / name;
}

/// One-case campaign with two charge and two discharge steps.
inline std::string minimal_campaign(const std::string& spacing = "50") {
    return R"({
  "schema_version": 1,
  "block_id": "BW",
  "sensor_config": {
    "pairs": [
      {"measure_axis": [1, 0, 0], "separation_axis": [0, 0, 1], "spacing_mm": )" + spacing + R"(, "sensors": [1, 2]},
      {"measure_axis": [0, 1, 0], "separation_axis": [1, 0, 0], "spacing_mm": 50, "sensors": [3, 4]},
      {"measure_axis": [0, 0, 1], "separation_axis": [0, 1, 0], "spacing_mm": 50, "sensors": [5, 6]}
    ],
    "expressed_at_mm": [0, 0, 0]
  },
  "cases": [
    {"label": "Fx", "direction": [1, 0, 0], "applied_at_mm": [0, 0, -100],
     "steps": [
       {"force_daN": 30, "phase": "charge", "readings_um": [1.5, 1.7, 0.1, 0.1, 0, 0]},
       {"force_daN": 60, "phase": "charge", "readings_um": [3.1, 3.3, 0.2, 0.2, 0, 0]},
       {"force_daN": 60, "phase": "discharge", "readings_um": [2.9, 3.1, 0.2, 0.2, 0, 0]},
       {"force_daN": 30, "phase": "discharge", "readings_um": [1.4, 1.6, 0.1, 0.1, 0, 0]}
     ]}
  ],
  "repetitions": 1
})";
}

/// Six-case spec around K_true with default protocol and tool-like geometry.
inline stiffid::SynthSpec make_spec(const stiffid::Mat6& k, std::uint64_t seed = 1) {
    stiffid::SynthSpec s;
    s.k_true = k;
    s.cases = stiffid::default_cases({0, 0, -0.1}, 0.06);
    s.seed = seed;
    return s;
}

}  // namespace testing_support
