#include "unitred/scan.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace unitred;

TEST(Classify, Examples) {
  const ScanRecord r10 = classify(10);
  EXPECT_EQ(r10.type, (FieldType{FieldTag::T1, 3}));
  EXPECT_EQ(r10.n_K, 1);
  EXPECT_TRUE(r10.unit_reducible);
  EXPECT_FALSE(r10.witness.has_value());
  EXPECT_TRUE(r10.consistent());

  const ScanRecord r7 = classify(7);
  EXPECT_EQ(r7.type.tag, FieldTag::None);
  EXPECT_EQ(r7.n_K, 2);
  EXPECT_FALSE(r7.unit_reducible);
  EXPECT_TRUE(r7.witness.has_value());
  EXPECT_TRUE(r7.minkowski);
  EXPECT_EQ(r7.unit_norm, 1);
  EXPECT_TRUE(r7.consistent());

  EXPECT_THROW(classify(12), std::invalid_argument);
}

TEST(Classify, JsonRecord) {
  const Json j = to_json(classify(13));
  EXPECT_EQ(j["d"], 13);
  EXPECT_EQ(j["disc"], 13);
  EXPECT_EQ(j["unit"], Json::array({"3/2", "1/2"}));
  EXPECT_EQ(j["unit_norm"], -1);
  EXPECT_EQ(j["type"], "T3");
  EXPECT_EQ(j["m"], 3);
  EXPECT_EQ(j["unit_reducible"], true);
  EXPECT_EQ(j["n_K"], 1);
  EXPECT_TRUE(j["witness"].is_null());
  EXPECT_EQ(j["class_reps"].size(), 1u);
  EXPECT_EQ(j["elapsed_ms"], 0);
  EXPECT_FALSE(j.contains("inconsistencies"));

  const Json w = to_json(classify(7));
  ASSERT_TRUE(w["witness"].is_array());
  QuadField F7(7);
  const QuadElem a(parse_fraction(w["witness"][0][0].get<std::string>()),
                   parse_fraction(w["witness"][0][1].get<std::string>()));
  const QuadElem x(parse_fraction(w["witness"][1][0].get<std::string>()),
                   parse_fraction(w["witness"][1][1].get<std::string>()));
  EXPECT_EQ(w["witness"][0][1], "3/8");
  EXPECT_LT(trace_value(F7, a, x), trace(a));
  EXPECT_FALSE(F7.is_unit(x));
}

TEST(Scan, SquarefreeSieve) {
  EXPECT_EQ(squarefree_up_to(100).size(), 60u);
  EXPECT_EQ(squarefree_up_to(2), std::vector<std::int64_t>{2});
  for (std::int64_t d : squarefree_up_to(500)) EXPECT_TRUE(is_squarefree(d));
}

TEST(Scan, HundredMatchesTypes) {
  std::ostringstream out;
  const ScanSummary s = scan({100, OutputFormat::jsonl, 2, false}, out);
  EXPECT_EQ(s.processed, 60);
  EXPECT_EQ(s.inconsistent, 0);
  std::istringstream lines(out.str());
  std::string line;
  std::int64_t prev = 0;
  int count = 0;
  while (std::getline(lines, line)) {
    const Json j = Json::parse(line);
    EXPECT_GT(j["d"].get<std::int64_t>(), prev);
    prev = j["d"].get<std::int64_t>();
    EXPECT_EQ(j["n_K"] == 1, j["type"] != "None") << line;
    ++count;
  }
  EXPECT_EQ(count, 60);
  std::int64_t typed = 0;
  for (const auto& [k, v] : s.per_type) typed += k == "None" ? 0 : v;
  EXPECT_EQ(typed, s.n_K_histogram.at(1));
}

TEST(Scan, DeterministicAcrossJobCounts) {
  std::ostringstream a, b, c;
  scan({150, OutputFormat::jsonl, 1, false}, a);
  scan({150, OutputFormat::jsonl, 3, false}, b);
  scan({150, OutputFormat::jsonl, 3, false}, c);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(b.str(), c.str());
}

TEST(Scan, SmallestAndCsv) {
  std::ostringstream j;
  const ScanSummary s = scan({2, OutputFormat::jsonl, 1, false}, j);
  EXPECT_EQ(s.processed, 1);
  EXPECT_EQ(Json::parse(j.str())["type"], "T1");

  std::ostringstream c;
  scan({10, OutputFormat::csv, 2, false}, c);
  std::istringstream lines(c.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header, "d,disc,u1,u2,norm,type,unit_reducible,n_K,elapsed_ms");
  EXPECT_EQ(first, "2,8,1/1,1/1,-1,T1,true,1,0");

  EXPECT_THROW(scan({1, OutputFormat::csv, 1, false}, c), std::invalid_argument);
}

TEST(CubicReport, SmallRange) {
  std::ostringstream out;
  const CubicSummary s = cubic_report(5, out);
  EXPECT_EQ(s.monogenic, 4);
  EXPECT_EQ(s.skipped, 2);
  EXPECT_EQ(s.passed, 4);
  EXPECT_EQ(s.failed, 0);
  std::istringstream lines(out.str());
  std::string line;
  std::int64_t t = 0;
  while (std::getline(lines, line)) {
    const Json j = Json::parse(line);
    EXPECT_EQ(j["t"], t);
    if (j["monogenic"] == true) {
      EXPECT_EQ(j["n_K"], 2);
      for (const auto& id : j["identities"]) EXPECT_TRUE(id["pass"].get<bool>()) << id.dump();
    }
    ++t;
  }
  EXPECT_EQ(t, 6);
}
