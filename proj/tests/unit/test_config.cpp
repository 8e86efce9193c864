#include <gtest/gtest.h>

#include "config.hpp"

using namespace imdplan;
using namespace imdplan::cli;

namespace {

std::string where_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.where();
  }
  return "<accepted>";
}

}  // namespace

TEST(Config, EmptyObjectGivesDefaults) {
  const auto cfg = parse_config("{}");
  EXPECT_EQ(cfg, RunConfig{});
  EXPECT_EQ(cfg.seed, 1u);
  EXPECT_EQ(cfg.signals.size(), 2u);
}

TEST(Config, SerializationRoundTrips) {
  RunConfig cfg;
  cfg.seed = 42;
  cfg.signals.push_back({6.9, -120.0, 0.25});
  cfg.amplifier.k_per_v2 = 1.5e8;
  cfg.amplifier.p_ip2_dbm.reset();
  cfg.enumerate.band = BandSpec{6.0, 7.0};
  cfg.policy.classes.push_back(ProductClassSpec{1, 1, 1});
  cfg.readout.crosstalk.enabled = false;
  const auto text = to_json(cfg).dump(2);
  const auto back = parse_config(text);
  EXPECT_EQ(back, cfg);
  EXPECT_EQ(to_json(back).dump(2), text);
}

TEST(Config, UnknownKeysAreRejectedWithPointers) {
  EXPECT_EQ(where_of(R"({"bogus": 1})"), "/bogus");
  EXPECT_EQ(where_of(R"({"pump": {"freq_ghz": 7.9, "bogus": 1}})"), "/pump/bogus");
  EXPECT_EQ(where_of(R"({"signals": [{"freq_ghz": 7.0}, {"frq": 7.1}]})"), "/signals/1/frq");
}

TEST(Config, TypeErrorsPointAtTheField) {
  EXPECT_EQ(where_of(R"({"seed": "one"})"), "/seed");
  EXPECT_EQ(where_of(R"({"policy": {"delta_min_mhz": [1]}})"), "/policy/delta_min_mhz");
}

TEST(Config, SemanticErrors) {
  EXPECT_EQ(where_of(R"({"signals": []})"), "/signals");
  EXPECT_NE(where_of(R"({"policy": {"delta_min_mhz": -1}})"), "<accepted>");
  EXPECT_NE(where_of(R"({"band": {"f_min_ghz": 7.5, "f_max_ghz": 7.0}})"), "<accepted>");
  EXPECT_NE(where_of(R"({"mc": {"min_spacing_mhz": 500}})"), "<accepted>");
}

TEST(Config, SyntaxErrorsMentionPosition) {
  try {
    parse_config("{\n  \"seed\": ,\n}");
    FAIL() << "accepted malformed JSON";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
  }
}

TEST(Config, ConversionsCarryValues) {
  RunConfig cfg;
  cfg.amplifier.k_per_v2.reset();
  const auto model = amplifier_model(cfg);
  EXPECT_NEAR(compression_point(model).dbm, -96.7, 1e-9);
  EXPECT_DOUBLE_EQ(model.p_ip_dbm.at(2), -91.0);
  cfg.amplifier.k_per_v2 = 2.0;
  EXPECT_DOUBLE_EQ(amplifier_model(cfg).k_per_v2, 2.0);

  const auto tones = tone_set(cfg);
  EXPECT_EQ(tones.pump().freq, Frequency::ghz(7.92));
  EXPECT_EQ(tones.signals()[0].freq, Frequency::ghz(7.5551));

  cfg.seed = 77;
  EXPECT_EQ(mc_config(cfg).seed, 77u);
  EXPECT_EQ(collision_policy(cfg).delta_min, Frequency::mhz(5.0));
  EXPECT_EQ(readout_scenario(cfg).qutrits.size(), 2u);
}
