#include "stiffid/center.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stiffid/eig3.hpp"
#include "stiffid/errors.hpp"
#include "stiffid/ingest.hpp"
#include "stiffid/json_text.hpp"

namespace stiffid {

namespace {

constexpr const char* kModule = "center";
constexpr double kParallelTolerance = 1e-8;
constexpr double kDegenerateCondition = 1e8;

double degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Angle at `from` between the line direction u and the ray toward `target`, in [0, 90] degrees.
double sight_angle(const Point3& from, const Vec3& u, const Point3& target) {
    const Vec3 ray = target - from;
    return degrees(std::atan2(norm(cross(ray, u)), std::abs(dot(ray, u))));
}

Mat3 projector(const Vec3& n) { return Mat3::identity() - outer(n, n); }

void check_not_parallel(const Line3& l1, const Line3& l2) {
    const Vec3 n = cross(l1.direction, l2.direction);
    if (norm(n) < kParallelTolerance) {
        const Vec3 w = l1.point - l2.point;
        std::ostringstream msg;
        msg << "lines " << l1.axis << l1.index << " and " << l2.axis << l2.index
            << " are parallel (distance " << norm(cross(w, l2.direction)) << " m); intersection undefined";
        throw ParallelLines(kModule, msg.str());
    }
}

}  // namespace

Line3 line_from_measurement(const Point3& p_mm, const Vec3& d, char axis, int index) {
    const double n = norm(d);
    if (!(n > 0.0) || !std::isfinite(n)) throw ZeroDisplacement(kModule, "displacement vector must be non-zero");
    return {p_mm * 1e-3, d / n, axis, index};
}

AxisIntersection closest_point_pair(const Line3& l1, const Line3& l2) {
    check_not_parallel(l1, l2);
    const Vec3& u1 = l1.direction;
    const Vec3& u2 = l2.direction;
    const Vec3 w = l1.point - l2.point;
    const double b = dot(u1, u2);
    const double d = dot(u1, w);
    const double e = dot(u2, w);
    const double den = 1.0 - b * b;
    const double s = (b * e - d) / den;
    const double t = (e - b * d) / den;
    const Point3 q1 = l1.point + u1 * s;
    const Point3 q2 = l2.point + u2 * t;

    AxisIntersection out;
    out.M = (q1 + q2) * 0.5;
    const Vec3 n = cross(u1, u2);
    out.mu = std::abs(dot(w, n)) / norm(n);
    out.theta = std::max(sight_angle(l1.point, u1, q2), sight_angle(l2.point, u2, q1));
    return out;
}

MeanPlane fit_mean_plane(const Line3& l1, const Line3& l2, const Point3& M) {
    check_not_parallel(l1, l2);
    const Mat3 scatter = outer(l1.direction, l1.direction) + outer(l2.direction, l2.direction);
    Vec3 n = eig3_real(scatter).vectors[0];
    const double lead = std::abs(n.z) > 1e-12 ? n.z : (std::abs(n.y) > 1e-12 ? n.y : n.x);
    if (lead < 0.0) n = -n;
    return {M, n};
}

double sum_squared_distance(const Point3& p, const std::array<Line3, 3>& lines) {
    double s = 0.0;
    for (const auto& l : lines) {
        const Vec3 r = cross(p - l.point, l.direction);
        s += dot(r, r);
    }
    return s;
}

CenterSolution solve_center(const std::array<Line3, 3>& normal_lines) {
    Mat3 a;
    Vec3 rhs;
    for (const auto& l : normal_lines) {
        const Mat3 p = projector(l.direction);
        a = a + p;
        rhs += p * l.point;
    }
    const double cond = condition_number(a);
    if (!(cond <= kDegenerateCondition)) {
        std::ostringstream msg;
        msg << "normal directions do not span 2 dimensions (condition " << cond << ")";
        throw DegenerateDirections(kModule, msg.str());
    }
    Lu<3> lu(a);
    const auto x = lu.solve({rhs.x, rhs.y, rhs.z});

    CenterSolution out;
    out.CR = {x[0], x[1], x[2]};
    out.residual = std::sqrt(sum_squared_distance(out.CR, normal_lines) / 3.0);
    return out;
}

CenterSolution locate_center(const std::array<std::array<Line3, 2>, 3>& pairs) {
    std::array<AxisIntersection, 3> axes{};
    std::array<MeanPlane, 3> planes{};
    std::array<Line3, 3> normals{};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& [l1, l2] = pairs[i];
        axes[i] = closest_point_pair(l1, l2);
        planes[i] = fit_mean_plane(l1, l2, axes[i].M);
        normals[i] = {axes[i].M, planes[i].normal, l1.axis, 0};
    }
    CenterSolution out = solve_center(normals);
    out.axes = axes;
    out.planes = planes;
    return out;
}

double center_direction_angle(const Point3& CR, const Vec3& v3, const Point3& origin) {
    const Vec3 r = CR - origin;
    if (!(norm(r) > 0.0)) throw ZeroVector(kModule, "CR coincides with the origin");
    if (!(norm(v3) > 0.0)) throw ZeroVector(kModule, "v3 is the zero vector");
    const double rad = std::atan2(norm(cross(r, v3)), std::abs(dot(r, v3)));
    return degrees(rad);
}

CenterMeasurement parse_center_measurement_text(std::string_view text) {
    using json_text::Json;
    const Json root = json_text::parse(text);
    if (!root.is_object() || !root.contains("records") || !root.at("records").is_array())
        throw SchemaError(kModule, "center measurement needs a 'records' array");
    if (!root.contains("schema_version") || root.at("schema_version") != 1)
        throw SchemaError(kModule, "unsupported or missing schema_version (expected 1)");

    const auto read3 = [](const Json& j, int shift, const std::string& where) {
        if (!j.is_array() || j.size() != 3) throw SchemaError(kModule, where + " must be an array of 3 numbers");
        return Vec3{json_text::read_number(j[0], shift, where), json_text::read_number(j[1], shift, where),
                    json_text::read_number(j[2], shift, where)};
    };

    CenterMeasurement out;
    std::array<std::array<bool, 2>, 3> seen{};
    const Json& records = root.at("records");
    if (records.size() != 6) throw SchemaError(kModule, "expected 6 records (axes x, y, z; index 1, 2)");
    for (std::size_t i = 0; i < records.size(); ++i) {
        const Json& r = records[i];
        const std::string where = "records[" + std::to_string(i) + "]";
        if (!r.is_object() || !r.contains("axis") || !r.at("axis").is_string() || !r.contains("index") ||
            !r.at("index").is_number_integer())
            throw SchemaError(kModule, where + " needs 'axis' (x|y|z) and 'index' (1|2)");
        const std::string axis = r.at("axis").get<std::string>();
        const int index = r.at("index").get<int>();
        if (axis.size() != 1 || axis[0] < 'x' || axis[0] > 'z' || (index != 1 && index != 2))
            throw SchemaError(kModule, where + ": axis must be x|y|z and index 1|2");
        const std::size_t ai = static_cast<std::size_t>(axis[0] - 'x');
        const std::size_t ii = static_cast<std::size_t>(index - 1);
        if (seen[ai][ii]) throw SchemaError(kModule, where + ": duplicate record " + axis + std::to_string(index));
        seen[ai][ii] = true;

        const auto [p, pshift] = json_text::tagged(r, "P", json_text::kLengthUnits, where);
        const auto [d, dshift] = json_text::tagged(r, "d", json_text::kDisplacementUnits, where);
        const Point3 p_mm = read3(*p, pshift + 3, where + ".P");
        out.pairs[ai][ii] = line_from_measurement(p_mm, read3(*d, dshift, where + ".d"), axis[0], index);
    }
    if (const auto [o, oshift] = json_text::tagged(root, "origin", json_text::kLengthUnits, "center", false); o)
        out.origin = read3(*o, oshift, "origin");
    if (root.contains("v3")) out.v3 = read3(root.at("v3"), 0, "v3");
    return out;
}

CenterMeasurement parse_center_measurement(const std::filesystem::path& path) {
    return parse_center_measurement_text(read_text_file(path));
}

}  // namespace stiffid
