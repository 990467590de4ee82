#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "stiffid/errors.hpp"
#include "stiffid/report.hpp"
#include "stiffid/svg.hpp"
#include "test_support.hpp"

using namespace stiffid;
using testing_support::data_path;
using testing_support::make_spec;

TEST(Fnv1a, KnownVectors) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
    EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(Metadata, NoClockFields) {
    const auto meta = report_metadata("identify", {{"c.json", "abc"}});
    EXPECT_EQ(meta.at("tool"), "stiffid");
    EXPECT_EQ(meta.at("inputs")[0].at("fnv1a"), fnv1a_hex("abc"));
    EXPECT_FALSE(meta.contains("timestamp"));
}

TEST(IdentificationReport, Deterministic) {
    std::mt19937_64 rng(61);
    const Identification id = identify(simulate_campaign(make_spec(oracle::random_stiffness(rng))));
    const auto meta = report_metadata("identify", {});
    const std::string a = json_text::dump(identification_json(id, meta));
    EXPECT_EQ(a, json_text::dump(identification_json(id, meta)));
    const auto parsed = json_text::parse(a);
    EXPECT_EQ(parsed.at("K").size(), 6u);
    EXPECT_EQ(parsed.at("K_F").size(), 3u);
    EXPECT_EQ(parsed.at("error_matrix").at("percent").size(), 6u);
    const auto csv = identification_csv(id);
    EXPECT_EQ(csv.front().first, "K.csv");
    EXPECT_EQ(svg::fit_plot(id.cases[0]), svg::fit_plot(id.cases[0]));
}

TEST(Assembly, ReferenceSystemsWarnOnComplexPair) {
    const Mat3 bt = read_kf_text(read_text_file(data_path("k_bt.json")), "k_bt.json");
    const Mat3 bw = read_kf_text(read_text_file(data_path("kf_bw.json")), "kf_bw.json");
    const Assembly a = assemble_systems(bt, bw, {"xy", "yz"});
    EXPECT_EQ(a.kf, bt + bw);
    EXPECT_TRUE(a.principal_bt.has_value());
    const auto j = assembly_json(a, report_metadata("assemble", {}));
    EXPECT_TRUE(j.contains("K_F"));
}

TEST(ReadKf, RejectsMissingMember) {
    EXPECT_THROW(read_kf_text("{\"K\": 1}", "x.json"), SchemaError);
}

TEST(CenterReport, SvgDeterministic) {
    const auto m = parse_center_measurement(data_path("center_table.json"));
    const auto s = locate_center(m.pairs);
    const std::string a = svg::center_plot(m, s);
    EXPECT_EQ(a, svg::center_plot(m, s));
    EXPECT_NE(a.find("<svg"), std::string::npos);
}
