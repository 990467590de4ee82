#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "stiffid/errors.hpp"
#include "stiffid/ingest.hpp"
#include "stiffid/synth.hpp"
#include "test_support.hpp"

using namespace stiffid;
using testing_support::data_path;
using testing_support::make_spec;

TEST(LoadLevels, DefaultProtocol) {
    EXPECT_EQ(load_levels(300, 2000), (std::vector<double>{300, 600, 900, 1200, 1500, 1800, 2000}));
    EXPECT_EQ(load_levels(500, 2000), (std::vector<double>{500, 1000, 1500, 2000}));
}

TEST(Simulate, Structure) {
    std::mt19937_64 rng(51);
    const Campaign c = simulate_campaign(make_spec(oracle::random_stiffness(rng)));
    ASSERT_EQ(c.cases.size(), 6u);
    EXPECT_EQ(c.cases[0].steps.size(), 14u);
    EXPECT_EQ(c.cases[0].steps.front().phase, Phase::charge);
    EXPECT_EQ(c.cases[0].steps.back().phase, Phase::discharge);
    EXPECT_EQ(c.cases[0].steps.back().force, 300.0);
    EXPECT_NO_THROW(c.validate());
}

TEST(Simulate, ReadingsFollowForwardMap) {
    std::mt19937_64 rng(52);
    const SynthSpec spec = make_spec(oracle::random_stiffness(rng));
    const Campaign c = simulate_campaign(spec);
    const Lu<6> lu(spec.k_true);
    for (const auto& lc : c.cases)
        for (const auto& s : lc.steps) {
            const Vec6 d = lu.solve(step_to_wrench(s, spec.sensor_config.expressed_at).as_vector());
            const Twist t = readings_to_twist(s.readings, spec.sensor_config);
            for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(t.as_vector()[k], d[k], 1e-12 * std::abs(d[k]) + 1e-22);
        }
}

TEST(Simulate, HysteresisSignFollowsPhase) {
    SynthSpec spec = make_spec(Mat6::diagonal({1e5, 1e5, 1e5, 1e7, 1e7, 1e7}));
    spec.hysteresis = {1e-6, 1e-6, 1e-6, 1e-6, 1e-6, 1e-6};
    spec.hysteresis_sign = {1, -1, 1, -1, 1, -1};
    const Campaign c = simulate_campaign(spec);
    const auto& steps = c.cases[0].steps;
    const LoadStep& up = steps[0];
    const LoadStep& down = steps.back();
    ASSERT_EQ(up.force, down.force);
    EXPECT_NEAR(up.readings.m[0] - down.readings.m[0], 2e-6, 1e-15);
    EXPECT_NEAR(up.readings.m[1] - down.readings.m[1], -2e-6, 1e-15);
}

TEST(Simulate, SameSeedIsBitIdentical) {
    std::mt19937_64 rng(53);
    SynthSpec spec = make_spec(oracle::random_stiffness(rng), 1234);
    spec.noise_sigma = 1e-7;
    spec.repetitions = 5;
    EXPECT_TRUE(simulate_campaign(spec) == simulate_campaign(spec));
    EXPECT_EQ(write_campaign(simulate_campaign(spec)), write_campaign(simulate_campaign(spec)));
    SynthSpec other = spec;
    other.seed = 1235;
    EXPECT_FALSE(simulate_campaign(spec) == simulate_campaign(other));
}

TEST(Simulate, RejectsBadSpecs) {
    SynthSpec spec = make_spec(Mat6::diagonal({1, 1, 1, 1, 1, 0}));
    EXPECT_THROW(simulate_campaign(spec), SingularK);
    spec.k_true = Mat6::diagonal({1, 1, 1, 1, 1, 1e-7});
    EXPECT_THROW(simulate_campaign(spec), SingularK);
    spec.k_true = Mat6::identity();
    spec.noise_sigma = -1;
    EXPECT_THROW(simulate_campaign(spec), InvalidArgument);
    spec.noise_sigma = 0;
    spec.hysteresis[2] = -1e-6;
    EXPECT_THROW(simulate_campaign(spec), InvalidArgument);
}

TEST(SynthSpecFile, ExampleParsesAndGenerates) {
    const SynthSpec spec = parse_synth_spec(data_path("../examples/synth_bt.json"));
    EXPECT_EQ(spec.cases.size(), 6u);
    EXPECT_EQ(spec.step_n, 300.0);
    EXPECT_EQ(spec.max_n, 2000.0);
    EXPECT_EQ(spec.noise_sigma, 2e-8);
    EXPECT_EQ(spec.hysteresis[0], 1.5e-6);
    EXPECT_EQ(spec.repetitions, 3);
    const Campaign c = simulate_campaign(spec);
    EXPECT_TRUE(parse_campaign_text(write_campaign(c)) == c);
}

TEST(SynthSpecFile, MissingKIsSchemaError) {
    EXPECT_THROW(parse_synth_spec_text("{\"schema_version\": 1, \"cases\": []}"), SchemaError);
}
