#pragma once

// JSON helpers that keep number literals as text, so unit conversions at the
// file boundary can shift the decimal exponent instead of multiplying doubles.

#include <span>
#include <string>
#include <utility>
#include <string_view>

#include "json.hpp"

namespace stiffid::json_text {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that parses back to `value`.
std::string shortest(double value);

/// Parse decimal `text` as if multiplied by 10^shift, rounding once.
double parse_shifted(std::string_view text, int shift);

/// shortest(value) scaled by 10^shift, as decimal text.
std::string format_shifted(double value, int shift);

/// Parse JSON; floating-point literals are kept as marked text nodes.
Json parse(std::string_view text);

/// Number node holding `text` verbatim on output.
Json raw_number(const std::string& text);

/// Dump with raw number nodes emitted unquoted.
std::string dump(const Json& j, int indent = 2);

/// Read a numeric node (marked text, integer or double) scaled by 10^shift.
/// Throws SchemaError naming `field` on any other node type.
double read_number(const Json& j, int shift, const std::string& field);

/// Raw number node for an SI value written in a unit 10^shift smaller.
Json write_number(double value, int shift);

/// A unit suffix on a field name and its power-of-ten factor to SI.
struct UnitTag {
    const char* suffix;
    int shift;
};

inline constexpr UnitTag kLengthUnits[] = {{"mm", -3}, {"m", 0}};
inline constexpr UnitTag kForceUnits[] = {{"daN", 1}, {"N", 0}};
inline constexpr UnitTag kDisplacementUnits[] = {{"um", -6}, {"mm", -3}, {"m", 0}};

/// Finds `base_<tag>` in obj for one of the allowed tags. Untagged or
/// unknown-tag fields throw SchemaError; a missing field returns nullptr when
/// not `required`.
std::pair<const Json*, int> tagged(const Json& obj, const std::string& base, std::span<const UnitTag> units,
                                   const std::string& where, bool required = true);

}  // namespace stiffid::json_text
