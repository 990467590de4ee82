#include "stiffid/synth.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "stiffid/errors.hpp"
#include "stiffid/ingest_json.hpp"

namespace stiffid {

namespace {

using json_text::Json;

constexpr const char* kModule = "synth";

Vec3 read_vec3(const Json& j, int shift, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw SchemaError(kModule, where + " must be an array of 3 numbers");
    return {json_text::read_number(j[0], shift, where), json_text::read_number(j[1], shift, where),
            json_text::read_number(j[2], shift, where)};
}

}  // namespace

void SynthSpec::validate() const {
    if (!is_finite(k_true)) throw SingularK(kModule, "K_true has non-finite entries");
    const double cond = condition_number(k_true);
    if (!(cond < kSynthConditionLimit)) {
        std::ostringstream msg;
        msg << "K_true is singular or too ill-conditioned (condition " << cond << ", limit 1e6)";
        throw SingularK(kModule, msg.str());
    }
    if (!(step_n > 0.0) || !(max_n >= step_n) || !std::isfinite(max_n))
        throw InvalidArgument(kModule, "protocol needs 0 < step <= max");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) throw InvalidArgument(kModule, "noise sigma must be >= 0");
    for (std::size_t k = 0; k < 6; ++k) {
        if (!(hysteresis[k] >= 0.0) || !std::isfinite(hysteresis[k]))
            throw InvalidArgument(kModule, "hysteresis half-widths must be >= 0");
        if (hysteresis_sign[k] != 1 && hysteresis_sign[k] != -1)
            throw InvalidArgument(kModule, "hysteresis signs must be +1 or -1");
    }
    if (repetitions < 1) throw InvalidArgument(kModule, "repetitions must be >= 1");
    if (cases.empty()) throw InvalidArgument(kModule, "at least one load case is required");
    sensor_config.validate();
}

std::vector<SynthCase> default_cases(const Point3& tip, double lever) {
    return {{"Fx", {1, 0, 0}, tip},
            {"Fy", {0, 1, 0}, tip},
            {"Fz", {0, 0, 1}, tip},
            {"Fx'", {1, 0, 0}, tip + Vec3{0, 0, lever}},
            {"Fy'", {0, 1, 0}, tip + Vec3{lever, 0, 0}},
            {"Fz'", {0, 0, 1}, tip + Vec3{0, lever, 0}}};
}

std::vector<double> load_levels(double step_n, double max_n) {
    std::vector<double> levels;
    for (int i = 1;; ++i) {
        const double f = step_n * i;
        if (f >= max_n * (1.0 - 1e-12)) break;
        levels.push_back(f);
    }
    levels.push_back(max_n);
    return levels;
}

Mat6 twist_to_readings_matrix(const SensorConfig& cfg) {
    Mat6 out;
    for (const auto& p : cfg.pairs) {
        const Vec3 r = p.rotation_axis();
        const auto i = static_cast<std::size_t>(p.sensors[0]);
        const auto j = static_cast<std::size_t>(p.sensors[1]);
        for (std::size_t c = 0; c < 3; ++c) {
            out(i, c) = -0.5 * p.spacing * r[c];
            out(j, c) = 0.5 * p.spacing * r[c];
            out(i, 3 + c) = p.measure_axis[c];
            out(j, 3 + c) = p.measure_axis[c];
        }
    }
    return out;
}

ReadingSet twist_to_readings(const Twist& t, const SensorConfig& cfg) {
    ReadingSet out;
    out.m = twist_to_readings_matrix(cfg) * t.as_vector();
    return out;
}

Campaign simulate_campaign(const SynthSpec& spec) {
    spec.validate();
    const Point3 at = spec.sensor_config.expressed_at;
    Lu<6> lu(spec.k_true);
    const Mat6 to_readings = twist_to_readings_matrix(spec.sensor_config);

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    Campaign c;
    c.block_id = spec.block_id;
    c.sensor_config = spec.sensor_config;
    c.repetitions = spec.repetitions;

    const auto levels = load_levels(spec.step_n, spec.max_n);
    for (const auto& sc : spec.cases) {
        LoadCase lc;
        lc.label = sc.label;
        const Vec6 unit = wrench_from_point_force(sc.direction, sc.applied_at, at).as_vector();
        const Vec6 unit_twist = lu.solve(unit);
        const Vec6 unit_readings = to_readings * unit_twist;

        auto add_step = [&](double force, Phase phase) {
            const double sign = phase == Phase::charge ? 1.0 : -1.0;
            std::vector<std::array<double, 6>> series(static_cast<std::size_t>(spec.repetitions));
            for (auto& r : series)
                for (std::size_t k = 0; k < 6; ++k) {
                    r[k] = unit_readings[k] * force + sign * spec.hysteresis_sign[k] * spec.hysteresis[k];
                    if (spec.noise_sigma > 0.0) r[k] += spec.noise_sigma * noise(rng);
                }
            LoadStep s;
            s.force = force;
            s.direction = sc.direction;
            s.applied_at = sc.applied_at;
            s.phase = phase;
            if (series.size() == 1) {
                s.readings.m = series.front();
            } else {
                const double n = static_cast<double>(series.size());
                for (std::size_t k = 0; k < 6; ++k) {
                    double sum = 0.0;
                    for (const auto& r : series) sum += r[k];
                    s.readings.m[k] = sum / n;
                    double ss = 0.0;
                    for (const auto& r : series) ss += (r[k] - s.readings.m[k]) * (r[k] - s.readings.m[k]);
                    s.readings_std.m[k] = std::sqrt(ss / (n - 1.0));
                }
            }
            lc.steps.push_back(s);
        };
        for (double f : levels) add_step(f, Phase::charge);
        for (auto it = levels.rbegin(); it != levels.rend(); ++it) add_step(*it, Phase::discharge);
        c.cases.push_back(std::move(lc));
    }
    return c;
}

SynthSpec parse_synth_spec_text(std::string_view text) {
    const Json root = json_text::parse(text);
    if (!root.is_object()) throw SchemaError(kModule, "synth spec must be a JSON object");
    if (!root.contains("schema_version") || root.at("schema_version") != 1)
        throw SchemaError(kModule, "unsupported or missing schema_version (expected 1)");

    SynthSpec spec;
    if (!root.contains("K_true") || !root.at("K_true").is_array() || root.at("K_true").size() != 6)
        throw SchemaError(kModule, "K_true must be 6 rows of 6 numbers");
    for (std::size_t r = 0; r < 6; ++r) {
        const Json& row = root.at("K_true")[r];
        if (!row.is_array() || row.size() != 6) throw SchemaError(kModule, "K_true must be 6 rows of 6 numbers");
        for (std::size_t c = 0; c < 6; ++c) spec.k_true(r, c) = json_text::read_number(row[c], 0, "K_true");
    }
    if (root.contains("sensor_config")) spec.sensor_config = read_sensor_config(root.at("sensor_config"));
    if (root.contains("block_id")) {
        const Json& b = root.at("block_id");
        if (b == "BT") spec.block_id = BlockId::BT;
        else if (b == "BW") spec.block_id = BlockId::BW;
        else throw SchemaError(kModule, "block_id must be 'BT' or 'BW'");
    }
    if (root.contains("protocol")) {
        const Json& p = root.at("protocol");
        if (const auto [step, s] = json_text::tagged(p, "step", json_text::kForceUnits, "protocol", false); step)
            spec.step_n = json_text::read_number(*step, s, "protocol.step");
        if (const auto [mx, s] = json_text::tagged(p, "max", json_text::kForceUnits, "protocol", false); mx)
            spec.max_n = json_text::read_number(*mx, s, "protocol.max");
    }
    if (!root.contains("cases") || !root.at("cases").is_array())
        throw SchemaError(kModule, "synth spec needs a 'cases' array");
    for (std::size_t i = 0; i < root.at("cases").size(); ++i) {
        const Json& cj = root.at("cases")[i];
        const std::string where = "cases[" + std::to_string(i) + "]";
        if (!cj.is_object() || !cj.contains("label") || !cj.at("label").is_string() || !cj.contains("direction"))
            throw SchemaError(kModule, where + " needs 'label' and 'direction'");
        SynthCase sc;
        sc.label = cj.at("label").get<std::string>();
        sc.direction = read_vec3(cj.at("direction"), 0, where + ".direction");
        const auto [at, s] = json_text::tagged(cj, "applied_at", json_text::kLengthUnits, where);
        sc.applied_at = read_vec3(*at, s, where + ".applied_at");
        spec.cases.push_back(sc);
    }
    if (const auto [h, s] = json_text::tagged(root, "hysteresis", json_text::kDisplacementUnits, "synth", false); h) {
        if (!h->is_array() || h->size() != 6) throw SchemaError(kModule, "hysteresis must hold 6 numbers");
        for (std::size_t k = 0; k < 6; ++k) spec.hysteresis[k] = json_text::read_number((*h)[k], s, "hysteresis");
    }
    if (root.contains("hysteresis_sign")) {
        const Json& hs = root.at("hysteresis_sign");
        if (!hs.is_array() || hs.size() != 6) throw SchemaError(kModule, "hysteresis_sign must hold 6 integers");
        for (std::size_t k = 0; k < 6; ++k) {
            if (!hs[k].is_number_integer()) throw SchemaError(kModule, "hysteresis_sign must hold 6 integers");
            spec.hysteresis_sign[k] = hs[k].get<int>();
        }
    }
    if (const auto [n, s] = json_text::tagged(root, "noise", json_text::kDisplacementUnits, "synth", false); n)
        spec.noise_sigma = json_text::read_number(*n, s, "noise");
    if (root.contains("seed")) {
        const Json& sd = root.at("seed");
        if (!sd.is_number_unsigned() && !(sd.is_number_integer() && sd.get<long long>() >= 0))
            throw SchemaError(kModule, "seed must be a non-negative integer");
        spec.seed = sd.get<std::uint64_t>();
    }
    if (root.contains("repetitions")) {
        const Json& r = root.at("repetitions");
        if (!r.is_number_integer()) throw SchemaError(kModule, "repetitions must be an integer");
        spec.repetitions = r.get<int>();
    }
    spec.validate();
    return spec;
}

SynthSpec parse_synth_spec(const std::filesystem::path& path) { return parse_synth_spec_text(read_text_file(path)); }

}  // namespace stiffid
