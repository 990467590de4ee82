#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "stiffid/torsor.hpp"

using namespace stiffid;

namespace {

void expect_vec(const Vec3& a, const Vec3& b, double tol = 0.0) {
    EXPECT_NEAR(a.x, b.x, tol);
    EXPECT_NEAR(a.y, b.y, tol);
    EXPECT_NEAR(a.z, b.z, tol);
}

}  // namespace

TEST(WrenchFromPointForce, ZeroLeverArm) {
    const Wrench w = wrench_from_point_force({0, 0, 100}, {0.3, 0.2, 0.1}, {0.3, 0.2, 0.1});
    expect_vec(w.moment, {0, 0, 0});
    expect_vec(w.force, {0, 0, 100});
}

TEST(WrenchFromPointForce, RightHandRule) {
    const Wrench w = wrench_from_point_force({0, 1000, 0}, {0.1, 0, 0}, {0, 0, 0});
    expect_vec(w.moment, {0, 0, 100}, 1e-12);
    expect_vec(w.at, {0, 0, 0});
}

TEST(WrenchFromPointForce, MaxLoadMatchesHandCross) {
    const Vec3 f{2000, 0, 0}, p{0, 0.05, 0.05};
    const Wrench w = wrench_from_point_force(f, p, {0, 0, 0});
    expect_vec(w.moment, {0, 100, -100}, 1e-12);
    expect_vec(w.moment, oracle::hand_cross(p, f), 0.0);
}

TEST(TransportWrench, SamePointIsIdentity) {
    const Wrench w{{1, 2, 3}, {4, 5, 6}, {0.1, 0.2, 0.3}, kMachineAxes};
    const Wrench t = transport_wrench(w, w.at);
    EXPECT_EQ(t.force, w.force);
    EXPECT_EQ(t.moment, w.moment);
}

TEST(TransportWrench, PureForceSign) {
    const Wrench w{{0, 10, 0}, {0, 0, 0}, {0, 0, 0}, kMachineAxes};
    const Wrench t = transport_wrench(w, {1, 0, 0});
    expect_vec(t.moment, {0, 0, -10}, 1e-15);
    expect_vec(t.force, w.force);
    expect_vec(t.at, {1, 0, 0});
}

TEST(TransportWrench, RoundTrip) {
    const Wrench w{{3, -2, 7}, {0.4, 0.1, -0.9}, {0.1, 0.2, 0.3}, kMachineAxes};
    const Wrench back = transport_wrench(transport_wrench(w, {-0.5, 1.5, 0.25}), w.at);
    expect_vec(back.force, w.force);
    expect_vec(back.moment, w.moment, 1e-14);
}

TEST(TransportWrench, VarignonProperty) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto rv = [&] { return Vec3{u(rng), u(rng), u(rng)}; };
    for (int i = 0; i < 1000; ++i) {
        const Vec3 f = rv() * 1000.0, a = rv(), o = rv();
        const Wrench w{f, rv() * 50.0, a, kMachineAxes};
        const Wrench t = transport_wrench(w, o);
        EXPECT_EQ(t.force, f);
        const Vec3 expected = w.moment + oracle::hand_cross(a - o, f);
        EXPECT_LT(norm(t.moment - expected), 1e-12 * std::max(1.0, norm(expected)));
    }
}

TEST(TransportTwist, PureTranslationUnchanged) {
    const Twist t{{0, 0, 0}, {1e-5, -2e-5, 3e-5}, {0, 0, 0}, kMachineAxes};
    const Twist m = transport_twist(t, {0.4, -0.2, 0.9});
    EXPECT_EQ(m.translation, t.translation);
}

TEST(TransportTwist, RigidRotation) {
    const double theta = 1e-4, r = 0.2;
    const Twist t{{0, 0, theta}, {0, 0, 0}, {0, 0, 0}, kMachineAxes};
    const Twist m = transport_twist(t, {r, 0, 0});
    expect_vec(m.translation, {0, theta * r, 0}, 1e-20);
    expect_vec(m.rotation, t.rotation);
}

TEST(TransportTwist, RoundTripAndComposition) {
    const Twist t{{1e-4, -2e-4, 5e-5}, {1e-5, 2e-5, -3e-5}, {0.1, 0, 0}, kMachineAxes};
    const Point3 b{0.3, -0.1, 0.2}, c{-0.2, 0.4, 0.05};
    const Twist back = transport_twist(transport_twist(t, b), t.at);
    expect_vec(back.translation, t.translation, 1e-18);
    const Twist via = transport_twist(transport_twist(t, b), c);
    const Twist direct = transport_twist(t, c);
    expect_vec(via.translation, direct.translation, 1e-18);
}

TEST(Twist, SmallRotationFlag) {
    EXPECT_TRUE((Twist{{1e-3, 0, 0}, {}, {}, kMachineAxes}.small_rotation()));
    EXPECT_FALSE((Twist{{0, 0.02, 0}, {}, {}, kMachineAxes}.small_rotation()));
}

TEST(Vec3Algebra, CrossAnticommutesAndJacobi) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Vec3 a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)}, c{u(rng), u(rng), u(rng)};
        EXPECT_EQ(cross(a, b), -cross(b, a));
        EXPECT_EQ(cross(a, b), oracle::hand_cross(a, b));
        const Vec3 jacobi = cross(a, cross(b, c)) + cross(b, cross(c, a)) + cross(c, cross(a, b));
        EXPECT_LT(norm(jacobi), 1e-15);
    }
}

TEST(Vectors, AsVectorLayout) {
    const Wrench w{{1, 2, 3}, {4, 5, 6}, {}, kMachineAxes};
    EXPECT_EQ(w.as_vector(), (Vec6{1, 2, 3, 4, 5, 6}));
    const Twist t{{1, 2, 3}, {4, 5, 6}, {}, kMachineAxes};
    EXPECT_EQ(t.as_vector(), (Vec6{1, 2, 3, 4, 5, 6}));
}
