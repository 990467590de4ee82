#include "stiffid/json_text.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <regex>
#include <system_error>

#include "stiffid/errors.hpp"

namespace stiffid::json_text {

namespace {

constexpr char kMarker = '\x01';

bool is_raw(const Json& j) {
    return j.is_string() && !j.get_ref<const std::string&>().empty() && j.get_ref<const std::string&>()[0] == kMarker;
}

/// Forwards to the DOM builder but stores float literals as marked text.
class PreservingSax {
public:
    explicit PreservingSax(Json& result) : dom_(result, true) {}

    bool null() { return dom_.null(); }
    bool boolean(bool v) { return dom_.boolean(v); }
    bool number_integer(Json::number_integer_t v) { return dom_.number_integer(v); }
    bool number_unsigned(Json::number_unsigned_t v) { return dom_.number_unsigned(v); }
    bool number_float(Json::number_float_t, const std::string& text) {
        std::string marked = kMarker + text;
        return dom_.string(marked);
    }
    bool string(std::string& v) { return dom_.string(v); }
    bool binary(Json::binary_t& v) { return dom_.binary(v); }
    bool start_object(std::size_t n) { return dom_.start_object(n); }
    bool key(std::string& k) { return dom_.key(k); }
    bool end_object() { return dom_.end_object(); }
    bool start_array(std::size_t n) { return dom_.start_array(n); }
    bool end_array() { return dom_.end_array(); }
    bool parse_error(std::size_t pos, const std::string& token, const nlohmann::detail::exception& ex) {
        return dom_.parse_error(pos, token, ex);
    }

private:
    nlohmann::detail::json_sax_dom_parser<Json> dom_;
};

}  // namespace

std::string shortest(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double parse_shifted(std::string_view text, int shift) {
    std::string mantissa(text);
    long exponent = 0;
    if (const auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
        exponent = std::strtol(mantissa.c_str() + e + 1, nullptr, 10);
        mantissa.resize(e);
    }
    const std::string shifted = mantissa + "e" + std::to_string(exponent + shift);
    char* end = nullptr;
    const double v = std::strtod(shifted.c_str(), &end);
    if (end != shifted.c_str() + shifted.size() || mantissa.empty())
        throw SchemaError("ingest", "malformed number '" + std::string(text) + "'");
    return v;
}

std::string format_shifted(double value, int shift) {
    std::string text = shortest(value);
    if (shift == 0) return text;
    long exponent = 0;
    if (const auto e = text.find('e'); e != std::string::npos) {
        exponent = std::strtol(text.c_str() + e + 1, nullptr, 10);
        text.resize(e);
    }
    exponent += shift;
    return exponent == 0 ? text : text + "e" + std::to_string(exponent);
}

Json parse(std::string_view text) {
    Json result;
    PreservingSax sax(result);
    try {
        Json::sax_parse(text.begin(), text.end(), &sax);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("ingest", std::string("invalid JSON: ") + e.what());
    }
    return result;
}

Json raw_number(const std::string& text) { return Json(kMarker + text); }

std::string dump(const Json& j, int indent) {
    static const std::regex raw(R"re("\\u0001([^"]*)")re");
    return std::regex_replace(j.dump(indent), raw, "$1");
}

double read_number(const Json& j, int shift, const std::string& field) {
    if (is_raw(j)) return parse_shifted(j.get_ref<const std::string&>().substr(1), shift);
    if (j.is_number_integer()) return parse_shifted(std::to_string(j.get<long long>()), shift);
    if (j.is_number_unsigned()) return parse_shifted(std::to_string(j.get<unsigned long long>()), shift);
    if (j.is_number_float()) return parse_shifted(shortest(j.get<double>()), shift);
    throw SchemaError("ingest", "field '" + field + "' must be a number");
}

Json write_number(double value, int shift) { return raw_number(format_shifted(value, -shift)); }

std::pair<const Json*, int> tagged(const Json& obj, const std::string& base, std::span<const UnitTag> units,
                                   const std::string& where, bool required) {
    if (!obj.is_object()) throw SchemaError("ingest", where + " must be an object");
    for (const auto& u : units) {
        const std::string key = base + "_" + u.suffix;
        if (obj.contains(key)) return {&obj.at(key), u.shift};
    }
    if (obj.contains(base))
        throw SchemaError("ingest", where + ": field '" + base + "' needs a unit tag (e.g. '" + base + "_" +
                                        units.front().suffix + "')");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (it.key().rfind(base + "_", 0) == 0)
            throw SchemaError("ingest", where + ": unsupported unit tag in '" + it.key() + "'");
    if (!required) return {nullptr, 0};
    throw SchemaError("ingest", where + ": missing field '" + base + "_" + units.front().suffix + "'");
}

}  // namespace stiffid::json_text
