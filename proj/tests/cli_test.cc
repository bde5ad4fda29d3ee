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

// Drives the linkprop executable end to end through its file interfaces.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "linkprop/linkprop.hpp"

#ifndef LINKPROP_CLI_PATH
#error "LINKPROP_CLI_PATH must name the linkprop executable"
#endif

namespace linkprop {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("linkprop_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    std::string cmd = std::string(LINKPROP_CLI_PATH) + " " + args + " > " +
                      path("stdout.txt") + " 2> " + path("stderr.txt");
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write(const std::string& name, const std::string& body) const {
    std::ofstream(path(name)) << body;
  }

  // gen + ingest into dir_, returning the in-memory dataset for comparison.
  void make_dataset(const std::string& extra = "") {
    ASSERT_EQ(run("gen --out " + dir_.string() + " " + extra), 0) << read("stderr.txt");
    ASSERT_EQ(run("ingest --edges " + path("edges.tsv") + " --out " + dir_.string()), 0)
        << read("stderr.txt");
  }

  BipartiteGraph snapshot() const {
    std::ifstream in(path("graph.snapshot"));
    return read_snapshot(in);
  }

  SeedLabels seeds(const BipartiteGraph& g) const {
    std::ifstream in(path("seeds.tsv"));
    return read_seed_labels(in, g, {});
  }

  fs::path dir_;
};

TEST_F(CliTest, IngestSnapshotMatchesLibraryGraph) {
  write("edges.tsv",
        "# site\timage\n"
        "http://1.regularhost.com/a.html\timg1\n"
        "2.regularhost.com\timg1\n"
        "user1.livejournal.com\timg2\t640\t480\n"
        "user2.livejournal.com\timg3\n"
        "user2.livejournal.com\ticon\t16\t16\n"
        "tiny.org\ticon\n");
  write("hostings.txt", "livejournal.com\n");
  write("clusters.tsv", "img3\tc23\nimg2\tc23\n");
  ASSERT_EQ(run("ingest --edges " + path("edges.tsv") + " --exceptions " + path("hostings.txt") +
                " --clusters " + path("clusters.tsv") + " --out " + dir_.string()),
            0)
      << read("stderr.txt");
  auto g = snapshot();
  EXPECT_EQ(g.site_keys(), (std::vector<std::string>{"regularhost.com", "user1.livejournal.com",
                                                    "user2.livejournal.com"}));
  EXPECT_EQ(g.image_keys(), (std::vector<std::string>{"c23", "img1"}));
  EXPECT_EQ(g.edge_count(), 3u);

  IngestOptions opt;
  opt.exceptions = HostingExceptions{"livejournal.com"};
  opt.clusters = ClusterMap{{"img3", "c23"}, {"img2", "c23"}};
  std::ifstream in(path("edges.tsv"));
  EXPECT_EQ(g, drop_imageless_sites(ingest_edge_stream(in, opt).graph));

  auto summary = read("ingest_summary.txt");
  EXPECT_NE(summary.find("imageless_sites_dropped\t1\n"), std::string::npos) << summary;
  EXPECT_NE(summary.find("small_images\t1\n"), std::string::npos);
}

TEST_F(CliTest, EmptyEdgeFileFailsValidation) {
  write("edges.tsv", "# nothing here\n");
  EXPECT_EQ(run("ingest --edges " + path("edges.tsv") + " --out " + dir_.string()), 2);
  EXPECT_FALSE(fs::exists(path("graph.snapshot")));
}

TEST_F(CliTest, MalformedLinesAreReportedNotFatal) {
  std::string body;
  for (int i = 0; i < 90; ++i) body += "s" + std::to_string(i % 7) + ".com\timg" + std::to_string(i) + "\n";
  for (int i = 0; i < 10; ++i) body += "broken line " + std::to_string(i) + "\n";
  write("edges.tsv", body);
  ASSERT_EQ(run("ingest --edges " + path("edges.tsv") + " --out " + dir_.string()), 0);
  auto summary = read("ingest_summary.txt");
  EXPECT_NE(summary.find("lines_read\t100\n"), std::string::npos);
  EXPECT_NE(summary.find("records_malformed\t10\n"), std::string::npos);
  EXPECT_NE(read("stderr.txt").find("records_malformed\t10"), std::string::npos);
}

TEST_F(CliTest, PropagateMatchesLibraryBitForBit) {
  make_dataset();
  ASSERT_EQ(run("propagate --seeds " + path("seeds.tsv") + " --out " + dir_.string()), 0)
      << read("stderr.txt");
  auto g = snapshot();
  auto result = propagate(g, seeds(g), PropagationConfig{});
  std::ostringstream expected_scores, expected_trace;
  write_scores(expected_scores, g, result.scores);
  write_trace(expected_trace, result.trace);
  EXPECT_EQ(read("scores.tsv"), expected_scores.str());
  EXPECT_EQ(read("trace.tsv"), expected_trace.str());

  const std::string first = read("scores.tsv");
  ASSERT_EQ(run("propagate --seeds " + path("seeds.tsv") + " --out " + dir_.string()), 0);
  EXPECT_EQ(read("scores.tsv"), first) << "rerun must be byte-identical";
}

TEST_F(CliTest, OneIterationIsOneOperatorApplication) {
  make_dataset();
  ASSERT_EQ(run("propagate --iterations 1 --seeds " + path("seeds.tsv") + " --out " +
                dir_.string()),
            0);
  auto g = snapshot();
  auto y = seeds(g).to_matrix();
  auto ay = apply_normalized_operator(g, y);
  ScoreMatrix manual(y.size());
  for (size_t v = 0; v < y.size(); ++v) {
    manual[v] = {0.5 * ay[v].adult + 0.5 * y[v].adult, 0.5 * ay[v].decent + 0.5 * y[v].decent};
  }
  std::ifstream in(path("scores.tsv"));
  EXPECT_EQ(read_scores(in, g), manual);
}

TEST_F(CliTest, ClassifyHonoursCountAndPopulation) {
  make_dataset();
  ASSERT_EQ(run("propagate --seeds " + path("seeds.tsv") + " --out " + dir_.string()), 0);
  auto g = snapshot();
  auto count_adult = [&] {
    std::istringstream in(read("verdicts.tsv"));
    std::string line;
    size_t lines = 0, adult = 0;
    while (std::getline(in, line)) {
      ++lines;
      adult += line.find("\tadult\t") != std::string::npos;
    }
    return std::make_pair(lines, adult);
  };
  ASSERT_EQ(run("classify --k 0.04 --out " + dir_.string()), 0) << read("stderr.txt");
  auto [lines, adult] = count_adult();
  EXPECT_EQ(lines, g.image_count());
  EXPECT_EQ(adult, adult_count(g.image_count(), 0.04));

  ASSERT_EQ(run("classify --k 0.1 --population all --out " + dir_.string()), 0);
  std::tie(lines, adult) = count_adult();
  EXPECT_EQ(lines, g.vertex_count());
  EXPECT_EQ(adult, adult_count(g.vertex_count(), 0.1));

  EXPECT_EQ(run("classify --k 1.5 --out " + dir_.string()), 2);
  EXPECT_EQ(run("classify --population sites --out " + dir_.string()), 2);
}

TEST_F(CliTest, EvaluateWritesReportAndCurve) {
  make_dataset();
  ASSERT_EQ(run("propagate --seeds " + path("seeds.tsv") + " --out " + dir_.string()), 0);
  ASSERT_EQ(run("evaluate --seeds " + path("seeds.tsv") + " --truth " + path("truth.tsv") +
                " --out " + dir_.string()),
            0)
      << read("stderr.txt");
  auto report = read("report.txt");
  for (const char* key : {"propagation_precision\t", "baseline_recall\t", "matched_k\t",
                          "recall_delta\t", "truth_size\t1000\n"}) {
    EXPECT_NE(report.find(key), std::string::npos) << key;
  }
  auto curve = read("curve.tsv");
  EXPECT_EQ(std::count(curve.begin(), curve.end(), '\n'), 9);
  EXPECT_EQ(curve.substr(0, 22), "k\tprecision\trecall\n0.0");
}

TEST_F(CliTest, SweepGridSizeIsProductAndSingletonMatchesEvaluate) {
  make_dataset();
  ASSERT_EQ(run("sweep --seeds " + path("seeds.tsv") + " --truth " + path("truth.tsv") +
                " --n-grid 1,2,5 --alpha-grid 0.2,0.4,0.6,0.8 --k-grid 0.01,0.04 --out " +
                dir_.string()),
            0)
      << read("stderr.txt");
  EXPECT_NE(read("stdout.txt").find("grid_size\t24\n"), std::string::npos);
  auto table = read("sweep.tsv");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 25);

  ASSERT_EQ(run("sweep --seeds " + path("seeds.tsv") + " --truth " + path("truth.tsv") +
                " --n-grid 5 --alpha-grid 0.5 --k-grid 0.04 --out " + dir_.string()),
            0);
  auto single = read("sweep.tsv");
  ASSERT_EQ(run("propagate --seeds " + path("seeds.tsv") + " --out " + dir_.string()), 0);
  ASSERT_EQ(run("evaluate --k 0.04 --seeds " + path("seeds.tsv") + " --truth " +
                path("truth.tsv") + " --out " + dir_.string()),
            0);
  auto report = read("report.txt");
  auto value = [&](const std::string& key) {
    auto at = report.find(key + "\t");
    return report.substr(at + key.size() + 1, report.find('\n', at) - at - key.size() - 1);
  };
  std::istringstream rows(single);
  std::string header, row;
  std::getline(rows, header);
  std::getline(rows, row);
  std::string expected = "5\t0.5\t0.04\t";
  ASSERT_EQ(row.substr(0, expected.size()), expected);
  EXPECT_NE(row.find("\t" + value("propagation_true_positives") + "\t" +
                     value("propagation_false_positives") + "\t" +
                     value("propagation_false_negatives") + "\t" +
                     value("propagation_true_negatives") + "\t" +
                     value("propagation_precision") + "\t" + value("propagation_recall")),
            std::string::npos)
      << row << "\n" << report;
}

TEST_F(CliTest, GenIsDeterministic) {
  ASSERT_EQ(run("gen --seed 7 --out " + path("a")), 0);
  ASSERT_EQ(run("gen --seed 7 --out " + path("b")), 0);
  ASSERT_EQ(run("gen --seed 8 --out " + path("c")), 0);
  EXPECT_EQ(read("a/edges.tsv"), read("b/edges.tsv"));
  EXPECT_EQ(read("a/seeds.tsv"), read("b/seeds.tsv"));
  EXPECT_NE(read("a/edges.tsv"), read("c/edges.tsv"));
  EXPECT_EQ(run("gen --p-in 2 --out " + path("d")), 2);
}

TEST_F(CliTest, ConfigFilePrecedence) {
  make_dataset();
  write("run.conf", "# settings\nalpha = 0.8\niterations = 3\nseeds = " + path("seeds.tsv") +
                        "\nout = " + dir_.string() + "\n");
  ASSERT_EQ(run("propagate --config " + path("run.conf")), 0) << read("stderr.txt");
  auto trace = read("trace.tsv");
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 3);
  auto g = snapshot();
  PropagationConfig cfg;
  cfg.alpha = 0.8;
  cfg.iterations = 3;
  std::ostringstream expected;
  write_scores(expected, g, propagate(g, seeds(g), cfg).scores);
  EXPECT_EQ(read("scores.tsv"), expected.str());

  ASSERT_EQ(run("propagate --config " + path("run.conf") + " --iterations 6"), 0);
  trace = read("trace.tsv");
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 6) << "flag beats file";

  write("bad.conf", "no_such_key = 1\n");
  EXPECT_EQ(run("propagate --config " + path("bad.conf")), 2);
}

TEST_F(CliTest, ExitCodesDistinguishFailureKinds) {
  EXPECT_EQ(run("ingest --edges " + path("missing.tsv") + " --out " + dir_.string()), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("propagate --help"), 0);
  write("edges.tsv", "a.com\timg\n");
  write("blocker", "a file, not a directory\n");
  EXPECT_EQ(run("ingest --edges " + path("edges.tsv") + " --out " + path("blocker")), 3);

  make_dataset();
  write("snap_v9", "LINKPROP-GRAPH\t9\n");
  EXPECT_EQ(run("propagate --snapshot " + path("snap_v9") + " --seeds " + path("seeds.tsv") +
                " --out " + dir_.string()),
            2);
}

}  // namespace
}  // namespace linkprop
