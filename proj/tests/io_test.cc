// Copyright 2026 The linkprop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "linkprop/io.hpp"

#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "linkprop/synthgen.hpp"
#include "test_util.hpp"

namespace linkprop {
namespace {

TEST(Snapshot, RoundTripsRandomGraphs) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = testing::random_instance(rng, 120).graph;
    std::ostringstream os;
    write_snapshot(os, g);
    std::istringstream in(os.str());
    EXPECT_EQ(read_snapshot(in), g);
  }
}

TEST(Snapshot, RejectsUnknownVersionAndCorruption) {
  auto g = testing::graph_of({{"a.com", "i1"}, {"b.com", "i1"}});
  std::ostringstream os;
  write_snapshot(os, g);
  const std::string good = os.str();

  std::string v2 = good;
  v2.replace(v2.find("\t1\n"), 3, "\t2\n");
  std::istringstream in_v2(v2);
  EXPECT_THROW(read_snapshot(in_v2), Error);

  std::istringstream not_snapshot("hello\n");
  EXPECT_THROW(read_snapshot(not_snapshot), Error);

  std::istringstream truncated(good.substr(0, good.size() - 4));
  EXPECT_THROW(read_snapshot(truncated), Error);

  std::string bad_index = good;
  bad_index.replace(bad_index.rfind("1\t0"), 3, "1\t9");
  std::istringstream in_bad(bad_index);
  EXPECT_THROW(read_snapshot(in_bad), Error);
}

TEST(Scores, FileRoundTripIsBitExact) {
  auto d = generate(PlantedParams{});
  auto f = propagate(d.graph, d.seeds, PropagationConfig{}).scores;
  std::ostringstream os;
  write_scores(os, d.graph, f);
  std::istringstream in(os.str());
  EXPECT_EQ(read_scores(in, d.graph), f);
}

TEST(Scores, LineFormat) {
  auto g = testing::graph_of({{"s.com", "i"}});
  std::ostringstream os;
  write_scores(os, g, ScoreMatrix{{2.0 / 3.0, 0.0}, {1.0 / 3.0, 0.0}});
  EXPECT_EQ(os.str(),
            "site\ts.com\t0.66666666666666663\t0\n"
            "image\ti\t0.33333333333333331\t0\n");
}

TEST(Scores, RejectsIncompleteOrForeignRows) {
  auto g = testing::graph_of({{"s.com", "i"}});
  std::istringstream missing("site\ts.com\t1\t0\n");
  EXPECT_THROW(read_scores(missing, g), Error);
  std::istringstream foreign("site\ts.com\t1\t0\nimage\tj\t0\t0\n");
  EXPECT_THROW(read_scores(foreign, g), Error);
  std::istringstream twice("site\ts.com\t1\t0\nsite\ts.com\t1\t0\n");
  EXPECT_THROW(read_scores(twice, g), Error);
}

TEST(Trace, LineFormat) {
  IterationTrace t;
  t.steps.push_back({1, 0.5, std::nullopt});
  t.steps.push_back({2, 0.25, 1.5});
  std::ostringstream os;
  write_trace(os, t);
  EXPECT_EQ(os.str(), "1\t0.5\n2\t0.25\t1.5\n");
}

TEST(Verdicts, SortedByRankWithRatio) {
  auto g = testing::graph_of({{"s.com", "a"}, {"s.com", "b"}});
  ScoreMatrix f{{0, 0}, {0.1, 0.0}, {0.5, 0.0}};
  auto members = population_vertices(g, Population::kImages);
  auto ranked = rank(f, members, 0.001);
  std::ostringstream os;
  write_verdicts(os, g, ranked, classify_top_k(ranked, 0.5));
  EXPECT_EQ(os.str(), "b\tadult\t500\t1\na\tdecent\t100\t2\n");
}

TEST(Curve, UndefinedPrecisionPrintsNA) {
  std::vector<CurvePoint> curve{{0.01, 0, {0, 0, 3, 5}}, {0.5, 4, {2, 2, 1, 3}}};
  std::ostringstream os;
  write_curve(os, curve);
  EXPECT_EQ(os.str(), "k\tprecision\trecall\n0.01\tNA\t0\n0.5\t0.5\t0.66666666666666663\n");
}

}  // namespace
}  // namespace linkprop
