#pragma once

// JSON pieces of the campaign format shared with other file formats.

#include "stiffid/ingest.hpp"
#include "stiffid/json_text.hpp"

namespace stiffid {

SensorConfig read_sensor_config(const json_text::Json& sc);
json_text::Json write_sensor_config(const SensorConfig& cfg);

}  // namespace stiffid
