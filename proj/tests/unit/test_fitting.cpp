#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stiffid/errors.hpp"
#include "stiffid/fitting.hpp"

using namespace stiffid;

namespace {

ChargePath path(Phase phase, std::vector<ForcePoint> pts) { return {std::move(pts), phase}; }

}  // namespace

TEST(FitLine, ExactLine) {
    const std::vector<ForcePoint> pts{{0, 1}, {1, 3}, {2, 5}};
    const LineFit f = fit_line(pts);
    EXPECT_NEAR(f.slope, 2.0, 1e-15);
    EXPECT_NEAR(f.intercept, 1.0, 1e-15);
    EXPECT_NEAR(f.rms_residual, 0.0, 1e-15);
}

TEST(FitLine, TwoPoints) {
    const std::vector<ForcePoint> pts{{300, 2e-6}, {600, 5e-6}};
    const LineFit f = fit_line(pts);
    EXPECT_NEAR(f.slope, 1e-8, 1e-22);
    EXPECT_NEAR(f.intercept, -1e-6, 1e-19);
    EXPECT_NEAR(f.rms_residual, 0.0, 1e-20);
}

TEST(FitLine, OutlierAgainstNormalEquations) {
    const double eps = 0.3;
    const std::vector<ForcePoint> pts{{0, 0}, {1, 1 + eps}, {2, 2}};
    const LineFit f = fit_line(pts);
    const auto [slope, intercept] = oracle::normal_equations_line({pts.begin(), pts.end()});
    EXPECT_NEAR(f.slope, slope, 1e-14);
    EXPECT_NEAR(f.intercept, intercept, 1e-14);
    EXPECT_NEAR(f.slope, 1.0, 1e-14);
    // residuals: -eps/3, 2eps/3, -eps/3
    EXPECT_NEAR(f.rms_residual, eps * std::sqrt(2.0) / 3.0, 1e-14);
}

TEST(FitLine, DegenerateAbscissa) {
    const std::vector<ForcePoint> same{{5, 1}, {5, 2}, {5, 3}};
    EXPECT_THROW(fit_line(same), DegenerateAbscissa);
    const std::vector<ForcePoint> one{{5, 1}};
    EXPECT_THROW(fit_line(one), DegenerateAbscissa);
}

TEST(ChargePath, Validation) {
    EXPECT_THROW(path(Phase::charge, {{1, 0}}).validate(), InvalidArgument);
    EXPECT_THROW(path(Phase::charge, {{1, 0}, {3, 0}, {2, 0}}).validate(), InvalidArgument);
    EXPECT_NO_THROW(path(Phase::discharge, {{3, 0}, {2, 0}, {1, 0}}).validate());
}

TEST(Midline, NoHysteresis) {
    const auto c = path(Phase::charge, {{300, 1}, {600, 2.1}, {900, 2.9}});
    const auto d = path(Phase::discharge, {{900, 2.9}, {600, 2.1}, {300, 1}});
    const MidlineFit m = midline(c, d);
    const LineFit direct = fit_line(c.points);
    EXPECT_DOUBLE_EQ(m.slope, direct.slope);
    EXPECT_DOUBLE_EQ(m.intercept, direct.intercept);
    for (double h : m.half_widths) EXPECT_EQ(h, 0.0);
    EXPECT_EQ(m.residuals.size(), 3u);
}

TEST(Midline, SymmetricOffset) {
    const double h = 0.25;
    std::vector<ForcePoint> cp, dp;
    for (double f : {300.0, 600.0, 900.0, 1200.0}) cp.emplace_back(f, f + h);
    for (double f : {1200.0, 900.0, 600.0, 300.0}) dp.emplace_back(f, f - h);
    const MidlineFit m = midline(path(Phase::charge, cp), path(Phase::discharge, dp));
    EXPECT_NEAR(m.slope, 1.0, 1e-15);
    EXPECT_NEAR(m.intercept, 0.0, 1e-12);
    for (double w : m.half_widths) EXPECT_NEAR(w, h, 1e-12);
    EXPECT_EQ(m.levels, (std::vector<double>{300, 600, 900, 1200}));
}

TEST(Midline, LevelMismatchNamesLevels) {
    const auto c = path(Phase::charge, {{300, 1}, {600, 2}});
    const auto d = path(Phase::discharge, {{650, 2}, {300, 1}});
    try {
        midline(c, d);
        FAIL() << "expected LevelMismatch";
    } catch (const LevelMismatch& e) {
        EXPECT_NE(std::string(e.what()).find("600"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("650"), std::string::npos);
    }
}

TEST(Midline, PhaseOrderSymmetry) {
    const auto c = path(Phase::charge, {{300, 1.1}, {600, 2.3}, {900, 2.8}});
    const auto d = path(Phase::discharge, {{900, 2.6}, {600, 1.9}, {300, 0.8}});
    const MidlineFit a = midline(c, d), b = midline(d, c);
    EXPECT_DOUBLE_EQ(a.slope, b.slope);
    EXPECT_DOUBLE_EQ(a.intercept, b.intercept);
    EXPECT_DOUBLE_EQ(a.rms_residual, b.rms_residual);
}

TEST(Midline, OffsetShiftsInterceptOnly) {
    const auto c = path(Phase::charge, {{300, 1.1}, {600, 2.3}, {900, 2.8}});
    const auto d = path(Phase::discharge, {{900, 2.6}, {600, 1.9}, {300, 0.8}});
    auto c2 = c, d2 = d;
    for (auto& p : c2.points) p.second += 10.0;
    for (auto& p : d2.points) p.second += 10.0;
    const MidlineFit a = midline(c, d), b = midline(c2, d2);
    EXPECT_NEAR(b.slope, a.slope, 1e-14);
    EXPECT_NEAR(b.intercept, a.intercept + 10.0, 1e-12);
    EXPECT_NEAR(b.rms_residual, a.rms_residual, 1e-12);
}

TEST(Midline, ScalingKeepsErrorPercent) {
    const auto c = path(Phase::charge, {{300, 1.1}, {600, 2.3}, {900, 2.8}});
    const auto d = path(Phase::discharge, {{900, 2.6}, {600, 1.9}, {300, 0.8}});
    auto c2 = c, d2 = d;
    for (auto& p : c2.points) p.second *= -3e-6;
    for (auto& p : d2.points) p.second *= -3e-6;
    const MidlineFit a = midline(c, d), b = midline(c2, d2);
    EXPECT_NEAR(b.slope, a.slope * -3e-6, 1e-20);
    EXPECT_NEAR(error_percent(b), error_percent(a), 1e-9);
}

TEST(ErrorPercent, Definition) {
    MidlineFit f;
    EXPECT_EQ(error_percent(f, 0.0), 0.0);
    f.rms_residual = 0.01;
    EXPECT_NEAR(error_percent(f, 1.0), 1.0, 1e-14);
    EXPECT_THROW(error_percent(f, 0.0), ZeroScale);
}

TEST(ErrorPercent, PerfectLineIsZero) {
    const auto c = path(Phase::charge, {{300, 3}, {600, 6}, {900, 9}});
    const auto d = path(Phase::discharge, {{900, 9}, {600, 6}, {300, 3}});
    EXPECT_NEAR(error_percent(midline(c, d)), 0.0, 1e-12);
}
