#include "stiffid/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "stiffid/errors.hpp"
#include "stiffid/ingest_json.hpp"

namespace stiffid {

namespace {

using json_text::Json;

constexpr const char* kModule = "ingest";
constexpr double kUnitTolerance = 1e-6;
constexpr double kRankConditionLimit = 1e8;

using json_text::kDisplacementUnits;
using json_text::kForceUnits;
using json_text::kLengthUnits;
using json_text::tagged;

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) throw SchemaError(kModule, where + " must be an object");
    if (!obj.contains(key)) throw SchemaError(kModule, where + ": missing field '" + key + "'");
    return obj.at(key);
}

Vec3 read_vec3(const Json& j, int shift, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw SchemaError(kModule, where + " must be an array of 3 numbers");
    return {json_text::read_number(j[0], shift, where), json_text::read_number(j[1], shift, where),
            json_text::read_number(j[2], shift, where)};
}

Json write_vec3(const Vec3& v, int shift) {
    return Json::array({json_text::write_number(v.x, shift), json_text::write_number(v.y, shift),
                        json_text::write_number(v.z, shift)});
}

std::array<double, 6> read_six(const Json& j, int shift, const std::string& where) {
    if (!j.is_array() || j.size() != 6) throw SchemaError(kModule, where + " must be an array of 6 numbers");
    std::array<double, 6> out{};
    for (std::size_t i = 0; i < 6; ++i) out[i] = json_text::read_number(j[i], shift, where);
    return out;
}

Json write_six(const std::array<double, 6>& v, int shift) {
    Json arr = Json::array();
    for (double x : v) arr.push_back(json_text::write_number(x, shift));
    return arr;
}

Phase parse_phase(const std::string& s, const std::string& where) {
    if (s == "charge") return Phase::charge;
    if (s == "discharge") return Phase::discharge;
    throw SchemaError(kModule, where + ": phase must be 'charge' or 'discharge', got '" + s + "'");
}

std::pair<ReadingSet, ReadingSet> average(const std::vector<std::array<double, 6>>& series) {
    ReadingSet mean, sd;
    const double n = static_cast<double>(series.size());
    for (std::size_t k = 0; k < 6; ++k) {
        double s = 0.0;
        for (const auto& r : series) s += r[k];
        mean.m[k] = s / n;
        if (series.size() > 1) {
            double ss = 0.0;
            for (const auto& r : series) ss += (r[k] - mean.m[k]) * (r[k] - mean.m[k]);
            sd.m[k] = std::sqrt(ss / (n - 1.0));
        }
    }
    if (series.size() == 1) mean.m = series.front();
    return {mean, sd};
}

bool is_unit(const Vec3& v) { return is_finite(v) && std::abs(norm(v) - 1.0) < kUnitTolerance; }

Vec3 case_direction(const LoadCase& c) {
    if (!c.steps.empty()) return c.steps.front().direction;
    if (c.direction) return *c.direction;
    throw SchemaError(kModule, "case '" + c.label + "' has no direction");
}

Point3 case_point(const LoadCase& c) {
    if (!c.steps.empty()) return c.steps.front().applied_at;
    if (c.applied_at) return *c.applied_at;
    throw SchemaError(kModule, "case '" + c.label + "' has no application point");
}

}  // namespace

std::string to_string(Phase p) { return p == Phase::charge ? "charge" : "discharge"; }

std::string to_string(BlockId b) { return b == BlockId::BT ? "BT" : "BW"; }

SensorConfig SensorConfig::cube_default(double spacing, const Point3& expressed_at) {
    SensorConfig cfg;
    cfg.pairs[0] = {{1, 0, 0}, {0, 0, 1}, spacing, {0, 1}};
    cfg.pairs[1] = {{0, 1, 0}, {1, 0, 0}, spacing, {2, 3}};
    cfg.pairs[2] = {{0, 0, 1}, {0, 1, 0}, spacing, {4, 5}};
    cfg.expressed_at = expressed_at;
    return cfg;
}

void SensorConfig::validate() const {
    std::array<bool, 6> used{};
    Mat3 measure, rotation;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& p = pairs[k];
        const std::string where = "sensor pair " + std::to_string(k + 1);
        if (!is_unit(p.measure_axis)) throw GeometryError(kModule, where + ": measure_axis must be a unit vector");
        if (!is_unit(p.separation_axis))
            throw GeometryError(kModule, where + ": separation_axis must be a unit vector");
        if (std::abs(dot(p.measure_axis, p.separation_axis)) >= kUnitTolerance)
            throw GeometryError(kModule, where + ": measure_axis and separation_axis must be orthogonal");
        if (!(std::isfinite(p.spacing) && p.spacing > 0.0))
            throw GeometryError(kModule, where + ": spacing a must be > 0");
        for (int s : p.sensors) {
            if (s < 0 || s > 5 || used[static_cast<std::size_t>(s)])
                throw GeometryError(kModule, "sensor indices must be a permutation of 1..6");
            used[static_cast<std::size_t>(s)] = true;
        }
        const Vec3 r = p.rotation_axis();
        for (std::size_t c = 0; c < 3; ++c) {
            measure(k, c) = p.measure_axis[c];
            rotation(k, c) = r[c];
        }
    }
    if (std::abs(determinant(measure)) < kUnitTolerance)
        throw GeometryError(kModule, "the three measure axes must span 3D");
    if (std::abs(determinant(rotation)) < kUnitTolerance)
        throw GeometryError(kModule, "the three sensed rotation axes must span 3D");
    if (!is_finite(expressed_at)) throw GeometryError(kModule, "expressed_at must be finite");
}

void Campaign::validate() const {
    sensor_config.validate();
    if (repetitions < 1) throw SchemaError(kModule, "repetitions must be a positive integer");
    if (cases.empty()) throw SchemaError(kModule, "campaign has no load cases");

    for (const auto& c : cases) {
        const std::string where = "case '" + c.label + "'";
        const auto charges = std::count_if(c.steps.begin(), c.steps.end(),
                                           [](const LoadStep& s) { return s.phase == Phase::charge; });
        if (charges < 2) throw SchemaError(kModule, where + ": needs at least 2 charge steps");
        for (const auto& s : c.steps) {
            if (!(std::isfinite(s.force) && s.force >= 0.0))
                throw SchemaError(kModule, where + ": force magnitude must be >= 0");
            if (!is_unit(s.direction)) throw GeometryError(kModule, where + ": direction must be a unit vector");
            if (!is_finite(s.applied_at)) throw GeometryError(kModule, where + ": applied_at must be finite");
            for (double v : s.readings.m)
                if (!std::isfinite(v)) throw SchemaError(kModule, where + ": non-finite reading");
            if (norm(s.direction - c.steps.front().direction) > 1e-12 ||
                norm(s.applied_at - c.steps.front().applied_at) > 1e-12)
                throw GeometryError(kModule, where + ": all steps must share direction and applied_at");
        }
        for (Phase ph : {Phase::charge, Phase::discharge}) {
            std::vector<double> f;
            for (const auto& s : c.steps)
                if (s.phase == ph) f.push_back(s.force);
            bool up = true, down = true;
            for (std::size_t i = 1; i < f.size(); ++i) {
                up = up && f[i] > f[i - 1];
                down = down && f[i] < f[i - 1];
            }
            if (f.size() > 1 && !up && !down)
                throw SchemaError(kModule, where + ": " + to_string(ph) + " forces must be strictly monotone");
        }
    }

    if (block_id == BlockId::BT) {
        if (cases.size() != 6)
            throw RankError(kModule, "BT campaign needs 6 independent load cases, got " +
                                         std::to_string(cases.size()));
        Mat6 t;
        for (std::size_t c = 0; c < 6; ++c) {
            const auto w = unit_case_wrench(cases[c], sensor_config.expressed_at).as_vector();
            for (std::size_t r = 0; r < 6; ++r) t(r, c) = w[r];
        }
        const double cond = condition_number(t);
        if (!(cond < kRankConditionLimit)) {
            std::ostringstream msg;
            msg << "load-case wrenches do not span 6D (condition " << cond << ")";
            throw RankError(kModule, msg.str());
        }
    }
}

Wrench unit_case_wrench(const LoadCase& c, const Point3& expressed_at) {
    return wrench_from_point_force(case_direction(c), case_point(c), expressed_at);
}

Mat6 readings_to_twist_matrix(const SensorConfig& cfg) {
    Mat3 measure, rotation;
    for (std::size_t k = 0; k < 3; ++k) {
        const Vec3 r = cfg.pairs[k].rotation_axis();
        for (std::size_t c = 0; c < 3; ++c) {
            measure(k, c) = cfg.pairs[k].measure_axis[c];
            rotation(k, c) = r[c];
        }
    }
    const auto measure_inv = try_inverse(measure);
    const auto rotation_inv = try_inverse(rotation);
    if (!measure_inv || !rotation_inv) throw GeometryError(kModule, "sensor configuration is not invertible");

    Mat6 out;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& p = cfg.pairs[k];
        const auto i = static_cast<std::size_t>(p.sensors[0]);
        const auto j = static_cast<std::size_t>(p.sensors[1]);
        for (std::size_t r = 0; r < 3; ++r) {
            // rho = R^-1 * theta, theta_k = (m_j - m_i) / a
            out(r, j) += (*rotation_inv)(r, k) / p.spacing;
            out(r, i) -= (*rotation_inv)(r, k) / p.spacing;
            // eps = E^-1 * t, t_k = (m_i + m_j) / 2
            out(3 + r, i) += (*measure_inv)(r, k) * 0.5;
            out(3 + r, j) += (*measure_inv)(r, k) * 0.5;
        }
    }
    return out;
}

Twist readings_to_twist(const ReadingSet& r, const SensorConfig& cfg) {
    Mat3 measure, rotation;
    std::array<double, 3> mean{}, tilt{};
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& p = cfg.pairs[k];
        const double mi = r.m[static_cast<std::size_t>(p.sensors[0])];
        const double mj = r.m[static_cast<std::size_t>(p.sensors[1])];
        mean[k] = (mi + mj) / 2.0;
        tilt[k] = (mj - mi) / p.spacing;
        const Vec3 axis = p.rotation_axis();
        for (std::size_t c = 0; c < 3; ++c) {
            measure(k, c) = p.measure_axis[c];
            rotation(k, c) = axis[c];
        }
    }
    Lu<3> lm(measure), lr(rotation);
    if (!lm.ok() || !lr.ok()) throw GeometryError(kModule, "sensor configuration is not invertible");
    const auto eps = lm.solve(mean);
    const auto rho = lr.solve(tilt);
    return {{rho[0], rho[1], rho[2]}, {eps[0], eps[1], eps[2]}, cfg.expressed_at, kMachineAxes};
}

Wrench step_to_wrench(const LoadStep& s, const Point3& expressed_at) {
    return wrench_from_point_force(s.direction * s.force, s.applied_at, expressed_at);
}

SensorConfig read_sensor_config(const json_text::Json& sc) {
    SensorConfig cfg;
    const Json& pairs = field(sc, "pairs", "sensor_config");
    if (!pairs.is_array() || pairs.size() != 3) throw SchemaError(kModule, "sensor_config.pairs must hold 3 pairs");
    for (std::size_t k = 0; k < 3; ++k) {
        const std::string where = "sensor_config.pairs[" + std::to_string(k) + "]";
        const Json& pj = pairs[k];
        auto& p = cfg.pairs[k];
        p.measure_axis = read_vec3(field(pj, "measure_axis", where), 0, where + ".measure_axis");
        p.separation_axis = read_vec3(field(pj, "separation_axis", where), 0, where + ".separation_axis");
        const auto [spacing, shift] = tagged(pj, "spacing", kLengthUnits, where);
        p.spacing = json_text::read_number(*spacing, shift, where + ".spacing");
        const Json& sensors = field(pj, "sensors", where);
        if (!sensors.is_array() || sensors.size() != 2 || !sensors[0].is_number_integer() ||
            !sensors[1].is_number_integer())
            throw SchemaError(kModule, where + ".sensors must be 2 integers in 1..6");
        p.sensors = {sensors[0].get<int>() - 1, sensors[1].get<int>() - 1};
    }
    {
        const auto [at, shift] = tagged(sc, "expressed_at", kLengthUnits, "sensor_config");
        cfg.expressed_at = read_vec3(*at, shift, "sensor_config.expressed_at");
    }

    return cfg;
}

json_text::Json write_sensor_config(const SensorConfig& cfg) {
    Json pairs = Json::array();
    for (const auto& p : cfg.pairs) {
        Json pj;
        pj["measure_axis"] = write_vec3(p.measure_axis, 0);
        pj["separation_axis"] = write_vec3(p.separation_axis, 0);
        pj["spacing_mm"] = json_text::write_number(p.spacing, -3);
        pj["sensors"] = Json::array({p.sensors[0] + 1, p.sensors[1] + 1});
        pairs.push_back(pj);
    }
    Json out;
    out["pairs"] = pairs;
    out["expressed_at_mm"] = write_vec3(cfg.expressed_at, -3);

    return out;
}

Campaign parse_campaign_text(std::string_view text) {
    const Json root = json_text::parse(text);
    if (!root.is_object()) throw SchemaError(kModule, "campaign must be a JSON object");

    const Json& version = field(root, "schema_version", "campaign");
    if (!version.is_number_integer() || version.get<int>() != kCampaignSchemaVersion)
        throw SchemaError(kModule, "unsupported schema_version (expected " +
                                       std::to_string(kCampaignSchemaVersion) + ")");

    Campaign c;
    const Json& block = field(root, "block_id", "campaign");
    if (block == "BT") c.block_id = BlockId::BT;
    else if (block == "BW") c.block_id = BlockId::BW;
    else throw SchemaError(kModule, "block_id must be 'BT' or 'BW'");

    const Json& reps = field(root, "repetitions", "campaign");
    if (!reps.is_number_integer() || reps.get<long long>() < 1)
        throw SchemaError(kModule, "repetitions must be a positive integer");
    c.repetitions = reps.get<int>();

    c.sensor_config = read_sensor_config(field(root, "sensor_config", "campaign"));

    const Json& cases = field(root, "cases", "campaign");
    if (!cases.is_array()) throw SchemaError(kModule, "cases must be an array");
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        const Json& cj = cases[ci];
        const std::string where = "cases[" + std::to_string(ci) + "]";
        LoadCase lc;
        const Json& label = field(cj, "label", where);
        if (!label.is_string()) throw SchemaError(kModule, where + ".label must be a string");
        lc.label = label.get<std::string>();
        if (cj.contains("direction")) lc.direction = read_vec3(cj.at("direction"), 0, where + ".direction");
        if (const auto [at, shift] = tagged(cj, "applied_at", kLengthUnits, where, false); at)
            lc.applied_at = read_vec3(*at, shift, where + ".applied_at");

        const Json& steps = field(cj, "steps", where);
        if (!steps.is_array()) throw SchemaError(kModule, where + ".steps must be an array");
        for (std::size_t si = 0; si < steps.size(); ++si) {
            const Json& sj = steps[si];
            const std::string sw = where + ".steps[" + std::to_string(si) + "]";
            LoadStep s;
            const auto [force, fshift] = tagged(sj, "force", kForceUnits, sw);
            s.force = json_text::read_number(*force, fshift, sw + ".force");
            if (sj.contains("direction")) s.direction = read_vec3(sj.at("direction"), 0, sw + ".direction");
            else if (lc.direction) s.direction = *lc.direction;
            else throw SchemaError(kModule, sw + ": missing field 'direction'");
            if (const auto [at, shift] = tagged(sj, "applied_at", kLengthUnits, sw, false); at)
                s.applied_at = read_vec3(*at, shift, sw + ".applied_at");
            else if (lc.applied_at) s.applied_at = *lc.applied_at;
            else throw SchemaError(kModule, sw + ": missing field 'applied_at_mm'");
            const Json& phase = field(sj, "phase", sw);
            if (!phase.is_string()) throw SchemaError(kModule, sw + ".phase must be a string");
            s.phase = parse_phase(phase.get<std::string>(), sw);

            const auto [readings, rshift] = tagged(sj, "readings", kDisplacementUnits, sw);
            if (readings->is_array() && !readings->empty() && readings->at(0).is_array()) {
                if (static_cast<int>(readings->size()) != c.repetitions)
                    throw SchemaError(kModule, sw + ": expected " + std::to_string(c.repetitions) +
                                                   " repetition series, got " + std::to_string(readings->size()));
                std::vector<std::array<double, 6>> series;
                for (const auto& rj : *readings) series.push_back(read_six(rj, rshift, sw + ".readings"));
                std::tie(s.readings, s.readings_std) = average(series);
            } else {
                s.readings.m = read_six(*readings, rshift, sw + ".readings");
                if (const auto [sd, sdshift] = tagged(sj, "readings_std", kDisplacementUnits, sw, false); sd)
                    s.readings_std.m = read_six(*sd, sdshift, sw + ".readings_std");
            }
            lc.steps.push_back(s);
        }
        c.cases.push_back(std::move(lc));
    }

    c.validate();
    return c;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(kModule, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Campaign parse_campaign(const std::filesystem::path& path) { return parse_campaign_text(read_text_file(path)); }

std::string write_campaign(const Campaign& c) {
    Json root;
    root["schema_version"] = kCampaignSchemaVersion;
    root["block_id"] = to_string(c.block_id);
    root["sensor_config"] = write_sensor_config(c.sensor_config);
    Json cases = Json::array();
    for (const auto& lc : c.cases) {
        Json cj;
        cj["label"] = lc.label;
        if (lc.direction) cj["direction"] = write_vec3(*lc.direction, 0);
        if (lc.applied_at) cj["applied_at_mm"] = write_vec3(*lc.applied_at, -3);
        Json steps = Json::array();
        for (const auto& s : lc.steps) {
            Json sj;
            sj["force_daN"] = json_text::write_number(s.force, 1);
            sj["direction"] = write_vec3(s.direction, 0);
            sj["applied_at_mm"] = write_vec3(s.applied_at, -3);
            sj["phase"] = to_string(s.phase);
            sj["readings_um"] = write_six(s.readings.m, -6);
            if (s.readings_std != ReadingSet{}) sj["readings_std_um"] = write_six(s.readings_std.m, -6);
            steps.push_back(sj);
        }
        cj["steps"] = steps;
        cases.push_back(cj);
    }
    root["cases"] = cases;
    root["repetitions"] = c.repetitions;
    return json_text::dump(root) + "\n";
}

Campaign import_logger_csv(std::string_view csv, const Campaign& layout) {
    struct Group {
        std::string label;
        Phase phase;
        double force;
        std::vector<std::array<double, 6>> series;
    };
    std::vector<Group> groups;
    std::map<std::tuple<std::string, int, std::string>, std::size_t> index;

    std::istringstream in{std::string(csv)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<std::string> cols;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t");
            const auto e = cell.find_last_not_of(" \t");
            cols.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
        }
        const std::string where = "csv line " + std::to_string(line_no);
        if (cols.size() != 9) throw SchemaError(kModule, where + ": expected 9 columns (case,phase,force_daN,m1..m6)");
        if (line_no == 1 && cols[2] == "force_daN") continue;

        const Phase phase = parse_phase(cols[1], where);
        const auto key = std::make_tuple(cols[0], static_cast<int>(phase), cols[2]);
        std::array<double, 6> r{};
        for (std::size_t k = 0; k < 6; ++k) r[k] = json_text::parse_shifted(cols[3 + k], -6);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, groups.size());
            groups.push_back({cols[0], phase, json_text::parse_shifted(cols[2], 1), {r}});
        } else {
            groups[it->second].series.push_back(r);
        }
    }
    if (groups.empty()) throw SchemaError(kModule, "csv holds no data rows");

    Campaign out;
    out.block_id = layout.block_id;
    out.sensor_config = layout.sensor_config;
    out.repetitions = static_cast<int>(groups.front().series.size());
    for (const auto& lc : layout.cases) {
        LoadCase c;
        c.label = lc.label;
        c.direction = case_direction(lc);
        c.applied_at = case_point(lc);
        out.cases.push_back(c);
    }
    for (const auto& g : groups) {
        if (static_cast<int>(g.series.size()) != out.repetitions)
            throw SchemaError(kModule, "csv: case '" + g.label + "' step " + json_text::shortest(g.force) +
                                           " N has a different repetition count");
        auto target = std::find_if(out.cases.begin(), out.cases.end(),
                                   [&](const LoadCase& c) { return c.label == g.label; });
        if (target == out.cases.end()) throw SchemaError(kModule, "csv: unknown case '" + g.label + "'");
        LoadStep s;
        s.force = g.force;
        s.direction = *target->direction;
        s.applied_at = *target->applied_at;
        s.phase = g.phase;
        std::tie(s.readings, s.readings_std) = average(g.series);
        target->steps.push_back(s);
    }
    out.validate();
    return out;
}

}  // namespace stiffid
