#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "tracelab/config.hpp"
#include "tracelab/counterexamples.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/io.hpp"
#include "tracelab/random.hpp"

using namespace tracelab;

TEST(MatrixJson, LayoutAndExactRoundTrip) {
  ComplexMatrix m(2, 2);
  m << Complex(1, 0), Complex(0.1, -0.3), Complex(0.1, 0.3), Complex(2.0 / 3.0, 0);
  Json j = matrix_to_json(m);
  EXPECT_EQ(j["dim"], 2);
  ASSERT_EQ(j["entries"].size(), 4u);
  EXPECT_EQ(j["entries"][1][1].get<double>(), -0.3);
  ComplexMatrix back = matrix_from_json(Json::parse(dump_json(j)));
  EXPECT_EQ(back, m);
}

TEST(MatrixJson, Rectangular) {
  Rng rng(71);
  ComplexMatrix m = ginibre(3, 2, rng);
  Json j = matrix_to_json(m);
  EXPECT_EQ(j["dim"], Json::array({3, 2}));
  EXPECT_EQ(matrix_from_json(Json::parse(dump_json(j))), m);
}

TEST(MatrixJson, RejectsMalformed) {
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"dim": 2, "entries": [[1,0]]})")), Error);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"entries": []})")), Error);
}

TEST(ChannelJson, RoundTrip) {
  auto n = random_channel(2, 3, 2, std::uint64_t{4});
  Json j = channel_to_json(n);
  EXPECT_EQ(j["d_in"], 2);
  EXPECT_EQ(j["d_out"], 3);
  auto back = channel_from_json(Json::parse(dump_json(j)));
  ASSERT_EQ(back.kraus().size(), n.kraus().size());
  for (std::size_t i = 0; i < n.kraus().size(); ++i) EXPECT_EQ(back.kraus()[i], n.kraus()[i]);
}

TEST(WitnessJson, ReplaysAfterRoundTrip) {
  auto res = theorem22_witness(2.0, 1.0, 0.05);
  for (const auto* w : {&*res.convexity_violation, &*res.concavity_violation}) {
    Witness back = witness_from_json(Json::parse(dump_json(witness_to_json(*w))));
    EXPECT_EQ(back.violates, w->violates);
    EXPECT_EQ(back.gap, w->gap);
    EXPECT_EQ(replay_gap(back), replay_gap(*w));
    EXPECT_EQ(back.functional.name(), w->functional.name());
  }
}

TEST(WitnessJson, JointWitnessWithoutFixedOperators) {
  Witness w = remark_joint_witness(1.0);
  Json j = witness_to_json(w);
  EXPECT_TRUE(j["K"].is_null());
  EXPECT_TRUE(j["M"].is_null());
  EXPECT_EQ(j["violates"], "convexity_violation");
  Witness back = witness_from_json(j);
  EXPECT_EQ(replay_gap(back), w.gap);
}

TEST(Settings, ParsesKeysAndComments) {
  Settings s = parse_settings("# defaults\nseed = 9\ntrials=50 # inline\neta = 1e-7\ndpi = 1e-6\n");
  EXPECT_EQ(s.seed, 9u);
  EXPECT_EQ(s.trials, 50);
  EXPECT_FALSE(s.dim.has_value());
  EXPECT_EQ(s.eta, 1e-7);
  EXPECT_EQ(s.tol.dpi, 1e-6);
}

TEST(Settings, RejectsUnknownKeysAndBadValues) {
  try {
    parse_settings("seed = 1\nbogus = 2\n");
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_settings("eta = fast\n"), DomainError);
  EXPECT_THROW(parse_settings("eta\n"), DomainError);
}

TEST(Settings, FileAndEnvironment) {
  const auto path = std::filesystem::temp_directory_path() / "tracelab_test.conf";
  write_text_file(path.string(), "dim = 3\n");
  EXPECT_EQ(load_settings_file(path.string()).dim, 3);
  setenv("TRACELAB_CONFIG", path.string().c_str(), 1);
  EXPECT_EQ(config_path_from_env(), path.string());
  unsetenv("TRACELAB_CONFIG");
  EXPECT_FALSE(config_path_from_env());
  std::filesystem::remove(path);
  EXPECT_THROW(load_settings_file(path.string()), DomainError);
}
