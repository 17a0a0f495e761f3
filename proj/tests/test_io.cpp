#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "lossless/io.hpp"
#include "lossless/synthdata.hpp"

using namespace lossless;
using io::json;

namespace {

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return io::read_dataset(in);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const io::FormatError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ReadDataset, InfersDimensionsFromHeader) {
  const auto ds = parse("x1,x2,y,z1\n0.1,0.2,0.3,0.4\n1,2,3,4\n");
  EXPECT_EQ(ds.d(), 2u);
  EXPECT_EQ(ds.d_prime(), 1u);
  EXPECT_EQ(ds.n(), 2u);
  EXPECT_EQ(ds.y(1), 3.0);
  const auto no_z = parse("x1,y\r\n5,6\r\n\r\n");
  EXPECT_EQ(no_z.d_prime(), 0u);
  EXPECT_EQ(no_z.n(), 1u);
  EXPECT_EQ(parse("\xEF\xBB\xBFx1,y,z1\n1,2,3\n").n(), 1u);
}

TEST(ReadDataset, Errors) {
  EXPECT_EQ(error_of("x1,x2,y,z1\n"), "empty dataset");
  EXPECT_EQ(error_of(""), "empty dataset");
  EXPECT_NE(error_of("a,b\n1,2\n").find("line 1"), std::string::npos);
  EXPECT_NE(error_of("x1,y,z2\n1,2,3\n").find("line 1"), std::string::npos);
  EXPECT_NE(error_of("x1,y\n1,2\n1\n").find("line 3"), std::string::npos);
  const auto bad = error_of("x1,y\n1,2\n1,abc\n");
  EXPECT_NE(bad.find("line 3, column 2"), std::string::npos);
  EXPECT_NE(error_of("x1,y\n1,inf\n").find("non-finite"), std::string::npos);
  std::istringstream in("x1,y,z1\n1,2,3\n");
  EXPECT_THROW(io::read_dataset(in, 2), io::FormatError);
  EXPECT_THROW(io::read_dataset_file("/nonexistent/file.csv"), io::FormatError);
}

TEST(WriteDataset, RoundTripsExactly) {
  H1Config cfg;
  cfg.n = 200;
  cfg.seed = 5;
  const auto ds = gen_h1(cfg);
  std::ostringstream out;
  io::write_dataset(out, ds);
  EXPECT_EQ(out.str().substr(0, 11), "x1,x2,y,z1\n");
  const auto back = parse(out.str());
  ASSERT_EQ(back.values().size(), ds.values().size());
  EXPECT_TRUE(std::equal(ds.values().begin(), ds.values().end(), back.values().begin()));
}

TEST(Json, TestOutcomeKeys) {
  TestOutcome o;
  o.L_n = 0.5;
  o.reject = true;
  const json j = io::to_json(o);
  EXPECT_EQ(j.size(), 8u);
  for (const char* k : {"L_n", "t_n", "m", "m_prime", "m_dprime", "h", "reject", "type1_bound"}) EXPECT_TRUE(j.contains(k));
  EXPECT_EQ(j["reject"], true);
}

TEST(Json, BoundReportKeys) {
  BoundReport r;
  r.corollary = Corollary::envelope;
  r.holds = true;
  const json j = io::to_json(r);
  EXPECT_EQ(j["corollary"], "cor2a");
  EXPECT_FALSE(j.contains("caller_asserted"));
  r.caller_asserted = true;
  EXPECT_EQ(io::to_json(r)["caller_asserted"], true);
}

TEST(Json, JointMapLossRoundTrip) {
  const auto [joint, map] = gen_random_joint({3, 4, 2}, 8);
  const auto j2 = io::joint_from_json(io::to_json(joint));
  EXPECT_EQ(j2.shape(), joint.shape());
  EXPECT_TRUE(std::equal(joint.probs().begin(), joint.probs().end(), j2.probs().begin()));
  const auto m2 = io::map_from_json(io::to_json(map));
  EXPECT_TRUE(std::equal(map.table().begin(), map.table().end(), m2.table().begin()));
  const auto l = gen_random_loss(3, 1.0, 2);
  const auto l2 = io::loss_from_json(io::to_json(l));
  for (std::size_t y = 0; y < 3; ++y)
    for (std::size_t d = 0; d < 3; ++d) EXPECT_EQ(l(y, d), l2(y, d));
}

TEST(Json, MarketRoundTrip) {
  const auto m = gen_market({}, 3);
  const auto m2 = io::market_from_json(io::to_json(m));
  EXPECT_EQ(m2.returns(), m.returns());
  EXPECT_EQ(m2.c_max(), m.c_max());
}

TEST(Json, SchemaDiagnosticsNameTheField) {
  auto message = [](auto&& f) -> std::string {
    try {
      f();
    } catch (const io::FormatError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_EQ(message([] { io::joint_from_json(json::parse(R"({"probs":[1]})"), "joint"); }), "joint.shape: missing");
  EXPECT_NE(message([] { io::joint_from_json(json::parse(R"({"shape":[1,1,1],"probs":[0.5,0.5]})"), "joint"); })
                .find("joint.probs"),
            std::string::npos);
  EXPECT_NE(message([] { io::map_from_json(json::parse(R"({"table":[0,-1]})"), "map"); }).find("map.table[1]"),
            std::string::npos);
  EXPECT_NE(message([] { io::loss_from_json(json::parse(R"({"cost":[[0,1],[1]]})"), "loss"); }).find("loss"),
            std::string::npos);
  EXPECT_NE(message([] { io::joint_from_json(json::parse(R"({"shape":[1,1,1],"probs":[2]})"), "joint"); }).find("joint"),
            std::string::npos);
}
