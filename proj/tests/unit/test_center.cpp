#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "stiffid/center.hpp"
#include "stiffid/errors.hpp"
#include "test_support.hpp"

using namespace stiffid;
using testing_support::data_path;

namespace {

Line3 line(const Point3& p, const Vec3& d, char axis = 'x', int index = 1) { return {p, normalized(d), axis, index}; }

/// Six lines through q: each axis pair spans a plane through q.
std::array<std::array<Line3, 2>, 3> concurrent_pairs(const Point3& q, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::array<std::array<Line3, 2>, 3> pairs;
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t j = 0; j < 2; ++j) {
            const Vec3 d{u(rng), u(rng), u(rng)};
            const Point3 p = q + d * (0.2 + 0.1 * static_cast<double>(j));
            pairs[a][j] = line(p, d, "xyz"[a], static_cast<int>(j + 1));
        }
    return pairs;
}

}  // namespace

TEST(LineFromMeasurement, ConvertsUnits) {
    const Line3 l = line_from_measurement({0, 0, 0}, {1e-5, 0, 0});
    EXPECT_EQ(l.point, (Point3{0, 0, 0}));
    EXPECT_EQ(l.direction, (Vec3{1, 0, 0}));
    const Line3 t = line_from_measurement({35, -20, 52}, {9.1e-5, 1.7e-5, 3.4e-5});
    EXPECT_NEAR(t.point.x, 0.035, 1e-15);
    EXPECT_NEAR(t.direction.x, 0.923, 1e-3);
    EXPECT_NEAR(t.direction.y, 0.172, 1e-3);
    EXPECT_NEAR(t.direction.z, 0.345, 1e-3);
    EXPECT_THROW(line_from_measurement({1, 2, 3}, {0, 0, 0}), ZeroDisplacement);
}

TEST(ClosestPointPair, IntersectingAxes) {
    const AxisIntersection r = closest_point_pair(line({0, 0, 0}, {1, 0, 0}), line({0, 0, 0}, {0, 1, 0}));
    EXPECT_EQ(r.M, (Point3{0, 0, 0}));
    EXPECT_EQ(r.mu, 0.0);
    EXPECT_EQ(r.theta, 0.0);
}

TEST(ClosestPointPair, IntersectingLinesAwayFromFoot) {
    const AxisIntersection r =
        closest_point_pair(line({-1, 0, 0}, {1, 0, 0}), line({1, 2, 0}, {-1, -2, 0}, 'x', 2));
    EXPECT_NEAR(norm(r.M), 0.0, 1e-15);
    EXPECT_NEAR(r.mu, 0.0, 1e-15);
    EXPECT_NEAR(r.theta, 0.0, 1e-12);
}

TEST(ClosestPointPair, CommonPerpendicular) {
    const AxisIntersection r = closest_point_pair(line({0, 0, 0}, {1, 0, 0}), line({0, 1, 0}, {0, 0, 1}));
    EXPECT_NEAR(r.M.x, 0.0, 1e-15);
    EXPECT_NEAR(r.M.y, 0.5, 1e-15);
    EXPECT_NEAR(r.M.z, 0.0, 1e-15);
    EXPECT_NEAR(r.mu, 1.0, 1e-15);
}

TEST(ClosestPointPair, SkewThetaFromOffset) {
    // line 2 passes a distance mu below the crossing point, seen from 1 m away
    const double mu = 1e-3;
    const AxisIntersection r = closest_point_pair(line({-1, 0, 0}, {1, 0, 0}), line({0, -1, mu}, {0, 1, 0}));
    EXPECT_NEAR(r.mu, mu, 1e-15);
    EXPECT_NEAR(r.theta, std::atan(mu) * 180.0 / M_PI, 1e-9);
    EXPECT_NEAR(r.M.z, mu / 2, 1e-15);
}

TEST(ClosestPointPair, ParallelLines) {
    EXPECT_THROW(closest_point_pair(line({0, 0, 0}, {1, 0, 0}), line({0, 1, 0}, {-2, 0, 0})), ParallelLines);
}

TEST(ClosestPointPair, SymmetricUnderSwap) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const Line3 a = line({u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)});
        const Line3 b = line({u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)});
        const AxisIntersection ab = closest_point_pair(a, b), ba = closest_point_pair(b, a);
        EXPECT_LT(norm(ab.M - ba.M), 1e-12);
        EXPECT_NEAR(ab.mu, ba.mu, 1e-14);
        EXPECT_NEAR(ab.theta, ba.theta, 1e-9);
    }
}

TEST(FitMeanPlane, Examples) {
    const MeanPlane p = fit_mean_plane(line({0, 0, 0}, {1, 1, 0}), line({1, 0, 0}, {1, -2, 0}), {0, 0, 0});
    EXPECT_NEAR(p.normal.z, 1.0, 1e-12);
    const MeanPlane q = fit_mean_plane(line({0, 0, 0}, {1, 0, 0}), line({0, 0, 0}, {0, 1, 0}), {0, 0, 0});
    EXPECT_EQ(q.normal, (Vec3{0, 0, 1}));
    EXPECT_THROW(fit_mean_plane(line({0, 0, 0}, {1, 0, 0}), line({0, 1, 0}, {1, 0, 0}), {}), ParallelLines);
}

TEST(FitMeanPlane, TablePairMatchesSphereGrid) {
    const auto m = parse_center_measurement(data_path("center_table.json"));
    const auto& [l1, l2] = m.pairs[0];
    const MeanPlane p = fit_mean_plane(l1, l2, {});
    const Vec3 grid = oracle::sphere_grid_normal({l1.direction, l2.direction});
    EXPECT_LT(std::acos(std::min(1.0, std::abs(dot(p.normal, grid)))) * 180.0 / M_PI, 1.0);
}

TEST(SolveCenter, ConcurrentLines) {
    const Point3 q{0.3, -0.2, 0.1};
    const std::array<Line3, 3> lines{line(q + Vec3{1, 0, 0}, {1, 0, 0}), line(q + Vec3{0, 2, 2}, {0, 1, 1}),
                                     line(q, {1, -1, 2})};
    const CenterSolution s = solve_center(lines);
    EXPECT_LT(norm(s.CR - q), 1e-12);
    EXPECT_NEAR(s.residual, 0.0, 1e-12);
}

TEST(SolveCenter, OffsetPerpendicularLinesAgainstGrid) {
    const double delta = 0.01;
    const std::array<Line3, 3> lines{line({0, delta, 0}, {1, 0, 0}), line({0, 0, delta}, {0, 1, 0}),
                                     line({delta, 0, 0}, {0, 0, 1})};
    const CenterSolution s = solve_center(lines);
    const auto f = [&](const Vec3& p) { return sum_squared_distance(p, lines); };
    const Vec3 grid = oracle::grid_minimize(f, {0, 0, 0}, 0.05);
    EXPECT_LT(norm(s.CR - grid), 1e-9);
    // equidistant from the three lines
    double d0 = oracle::line_distance2(s.CR, lines[0].point, lines[0].direction);
    for (const auto& l : lines) EXPECT_NEAR(oracle::line_distance2(s.CR, l.point, l.direction), d0, 1e-15);
    EXPECT_NEAR(s.residual, std::sqrt(f(s.CR) / 3.0), 1e-15);
    EXPECT_GT(s.residual, 0.0);
}

TEST(SolveCenter, DegenerateDirections) {
    const std::array<Line3, 3> lines{line({0, 0, 0}, {1, 0, 0}), line({0, 1, 0}, {1, 0, 0}), line({0, 0, 1}, {1, 0, 0})};
    EXPECT_THROW(solve_center(lines), DegenerateDirections);
}

TEST(SolveCenter, ResidualIsGridMinimum) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int trial = 0; trial < 20; ++trial) {
        std::array<Line3, 3> lines;
        for (auto& l : lines) l = line({u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)});
        const CenterSolution s = solve_center(lines);
        const double best = sum_squared_distance(s.CR, lines);
        for (int i = -2; i <= 2; ++i)
            for (int j = -2; j <= 2; ++j)
                for (int k = -2; k <= 2; ++k) {
                    if (!i && !j && !k) continue;
                    EXPECT_GE(sum_squared_distance(s.CR + Vec3{i * 1e-3, j * 1e-3, k * 1e-3}, lines), best);
                }
    }
}

TEST(LocateCenter, RigidRotationAboutPoint) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        const Point3 q{0.56, -0.58, -0.08};
        const CenterSolution s = locate_center(concurrent_pairs(q, rng));
        EXPECT_LT(norm(s.CR - q), 1e-9);
        EXPECT_NEAR(s.residual, 0.0, 1e-9);
        for (const auto& a : s.axes) EXPECT_NEAR(a.mu, 0.0, 1e-12);
    }
}

TEST(LocateCenter, RigidMotionEquivariance) {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto m = parse_center_measurement(data_path("center_table.json"));
    const CenterSolution base = locate_center(m.pairs);
    for (int trial = 0; trial < 100; ++trial) {
        const Mat3 r = oracle::rotation({u(rng), u(rng), u(rng)}, 3.0 * u(rng));
        const Vec3 t{u(rng), u(rng), u(rng)};
        auto moved = m.pairs;
        for (auto& pair : moved)
            for (auto& l : pair) l = {r * l.point + t, r * l.direction, l.axis, l.index};
        const CenterSolution s = locate_center(moved);
        EXPECT_LT(norm(s.CR - (r * base.CR + t)), 1e-9);
        EXPECT_NEAR(s.residual, base.residual, 1e-9);
        for (std::size_t a = 0; a < 3; ++a) {
            EXPECT_NEAR(s.axes[a].mu, base.axes[a].mu, 1e-9);
            EXPECT_NEAR(s.axes[a].theta, base.axes[a].theta, 1e-9);
        }
    }
}

TEST(CenterDirectionAngle, Examples) {
    EXPECT_NEAR(center_direction_angle({1, 2, 3}, normalized({1, 2, 3})), 0.0, 1e-6);
    EXPECT_NEAR(center_direction_angle({1, 2, 3}, normalized({-1, -2, -3})), 0.0, 1e-6);
    EXPECT_NEAR(center_direction_angle({1, 0, 0}, {0, 1, 0}), 90.0, 1e-12);
    EXPECT_NEAR(center_direction_angle({1.5, 0, 0}, {0, 1, 0}, {0.5, 0, 0}), 90.0, 1e-12);
    EXPECT_THROW(center_direction_angle({1, 1, 1}, {0, 1, 0}, {1, 1, 1}), ZeroVector);
}

TEST(CenterDirectionAngle, ListedEigenvectorAndCenter) {
    const Vec3 v3{0.6336, -0.7713, -0.0603};
    const Point3 cr{0.56, -0.58, -0.08};
    const double hand_cos = std::abs(v3.x * cr.x + v3.y * cr.y + v3.z * cr.z) / (norm(v3) * norm(cr));
    EXPECT_NEAR(hand_cos, 0.996, 5e-4);
    const double angle = center_direction_angle(cr, v3);
    EXPECT_NEAR(angle, std::acos(hand_cos) * 180.0 / M_PI, 1e-9);
    EXPECT_NEAR(angle, 5.1, 0.1);
}

TEST(ParseCenter, TableFile) {
    const auto m = parse_center_measurement(data_path("center_table.json"));
    EXPECT_NEAR(m.pairs[0][0].point.z, 0.052, 1e-15);
    EXPECT_EQ(m.pairs[2][1].axis, 'z');
    EXPECT_EQ(m.pairs[2][1].index, 2);
    ASSERT_TRUE(m.v3.has_value());
    EXPECT_EQ(m.v3->x, 0.6336);
}

TEST(ParseCenter, SchemaErrors) {
    EXPECT_THROW(parse_center_measurement_text("{\"schema_version\": 1}"), SchemaError);
    EXPECT_THROW(parse_center_measurement_text("{\"schema_version\": 1, \"records\": []}"), SchemaError);
    EXPECT_THROW(parse_center_measurement("/nonexistent.json"), IoError);
}
