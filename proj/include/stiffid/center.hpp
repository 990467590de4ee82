#pragma once

// Stiffness (rotation) center from per-axis displacement lines.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "stiffid/linalg.hpp"

namespace stiffid {

struct Line3 {
    Point3 point;    // m
    Vec3 direction;  // unit
    char axis = 'x'; // load direction the line belongs to
    int index = 1;   // 1 or 2
};

/// Common-perpendicular result for one load axis.
struct AxisIntersection {
    Point3 M;           // midpoint of the common perpendicular, m
    double mu = 0.0;    // line-to-line distance, m
    double theta = 0.0; // coplanarity deviation, degrees
};

struct MeanPlane {
    Point3 point;
    Vec3 normal;  // unit, sign toward +z
};

struct CenterSolution {
    Point3 CR;
    double residual = 0.0;  // rms distance to the three normal lines, m
    std::array<AxisIntersection, 3> axes{};
    std::array<MeanPlane, 3> planes{};
};

/// P in mm, d in m. Throws ZeroDisplacement for d = 0.
Line3 line_from_measurement(const Point3& p_mm, const Vec3& d, char axis = 'x', int index = 1);

/// Throws ParallelLines when the directions are parallel within 1e-8.
AxisIntersection closest_point_pair(const Line3& l1, const Line3& l2);

/// Normal minimizing the summed squared projections of both directions.
MeanPlane fit_mean_plane(const Line3& l1, const Line3& l2, const Point3& M);

/// Least-squares point nearest to three lines. Throws DegenerateDirections
/// when the normal-equation matrix condition exceeds 1e8.
CenterSolution solve_center(const std::array<Line3, 3>& normal_lines);

/// Sum of squared distances from p to the lines.
double sum_squared_distance(const Point3& p, const std::array<Line3, 3>& lines);

/// Full chain: per-axis closest points, mean planes, normal lines, center.
/// `pairs[i]` holds the two lines of axis x, y, z respectively.
CenterSolution locate_center(const std::array<std::array<Line3, 2>, 3>& pairs);

/// Angle (degrees, [0, 90]) between CR - O and the line along v3.
double center_direction_angle(const Point3& CR, const Vec3& v3, const Point3& origin = {});

struct CenterMeasurement {
    std::array<std::array<Line3, 2>, 3> pairs;
    Point3 origin;            // m
    std::optional<Vec3> v3;   // eigenvector to compare against, if supplied
};

/// Center-measurement JSON: {schema_version, records[6]{axis, index, P_mm[3], d_m[3]}, [origin_mm], [v3]}.
CenterMeasurement parse_center_measurement_text(std::string_view text);
CenterMeasurement parse_center_measurement(const std::filesystem::path& path);

}  // namespace stiffid
