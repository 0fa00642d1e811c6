// Copyright 2026 The bless-iqa Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bless/benchmark.hpp"
#include "bless/cli.hpp"
#include "bless/codec.hpp"
#include "support/synth.hpp"

namespace bless {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int status;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "bless");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bless_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Ten pairs from two references: five blur levels and five JPEG
  // qualities, MOS falling with strength.
  fs::path write_fixture() {
    std::ofstream csv(dir_ / "manifest.csv");
    csv << "ref,dist,mos,distortion\n";
    for (int r = 0; r < 2; ++r) {
      const PlanarImage ref = test::random_image(64, 64, 100 + r);
      const std::string ref_name = "ref" + std::to_string(r) + ".png";
      write_file(dir_ / ref_name, encode_png(ref));
      for (int k = 0; k < 5; ++k) {
        const bool blur = (k + r) % 2 == 0;
        const PlanarImage d = blur ? test::gaussian_blur(ref, 0.5 + k) : test::jpeg_like(ref, 60 - 12 * k);
        const std::string name = "dist" + std::to_string(r) + "_" + std::to_string(k) + ".png";
        write_file(dir_ / name, encode_png(d));
        csv << ref_name << ',' << name << ',' << (9.0 - k - 0.3 * r) << ',' << (blur ? "Blur" : "Compression")
            << '\n';
      }
    }
    return dir_ / "manifest.csv";
  }

  fs::path dir_;
};

TEST_F(CliTest, ScoreIdentityPrintsSixOnes) {
  const std::string img = test::data_image("astronaut").string();
  const CliRun r = run({"score", img, img});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out,
            "FSIM\t1.000000\nFSIMc\t1.000000\nSRSIM\t1.000000\n"
            "BLESS_FSIM\t1.000000\nBLESS_FSIMC\t1.000000\nBLESS_SRSIM\t1.000000\n");
}

TEST_F(CliTest, ScoreSelectedEstimator) {
  const std::string a = test::data_image("coffee").string(), b = test::data_image("chelsea").string();
  const CliRun r = run({"score", "--estimator", "bless", a, b});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("BLESS\t0.", 0), 0u) << r.out;
}

TEST_F(CliTest, MismatchedSizesExitTwo) {
  write_file(dir_ / "small.png", encode_png(test::random_image(32, 32, 1)));
  const CliRun r = run({"score", test::data_image("astronaut").string(), (dir_ / "small.png").string()});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("DimensionMismatch"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"score", "only-one.png"}).status, 2);
  EXPECT_EQ(run({"score", "-e", "nope", "a.png", "b.png"}).status, 2);
  EXPECT_EQ(run({"score", "/missing/a.png", "/missing/b.png"}).status, 2);
}

TEST_F(CliTest, EmitMapsAddsFiles) {
  const std::string a = test::data_image("rocket").string();
  write_file(dir_ / "blur.png", encode_png(test::gaussian_blur(test::load_data_image("rocket"), 2.0)));
  const CliRun plain = run({"score", a, (dir_ / "blur.png").string()});
  const CliRun r = run({"--emit-maps", (dir_ / "maps").string(), "score", a, (dir_ / "blur.png").string()});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, plain.out);
  for (const char* f : {"FSIM_map.png", "FSIM_weight.png", "BLESS_SRSIM_map.png", "tau_ref.png", "tau_dist.pgm"})
    EXPECT_TRUE(fs::exists(dir_ / "maps" / f)) << f;
  EXPECT_EQ(decode_image_file(dir_ / "maps" / "tau_dist.pgm").width(), 256u);
}

TEST_F(CliTest, MapsCommand) {
  const std::string a = test::data_image("hubble").string();
  const CliRun r = run({"maps", a, a, "--out", (dir_ / "m").string(), "-e", "FSIMc"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "m" / "FSIMc_map.png"));
}

TEST_F(CliTest, BenchEndToEndIsDeterministic) {
  const fs::path manifest = write_fixture();
  const CliRun a = run({"bench", "CUSTOM=" + manifest.string(), "--out", (dir_ / "a").string()});
  ASSERT_EQ(a.status, 0) << a.err;
  const CliRun b = run({"--threads", "3", "bench", manifest.string(), "--out", (dir_ / "b").string()});
  ASSERT_EQ(b.status, 0) << b.err;
  for (const char* ext : {".json", ".csv", "_scores.csv"}) {
    const std::string ja = slurp(dir_ / (std::string("a") + ext)), jb = slurp(dir_ / (std::string("b") + ext));
    EXPECT_FALSE(ja.empty());
    EXPECT_EQ(ja, jb) << ext;
  }
  EXPECT_EQ(a.out, b.out);
  const auto rep = report_from_json(slurp(dir_ / "a.json"));
  const auto& groups = rep.srcc.at(Database::kCustom);
  EXPECT_EQ(groups.size(), 3u);  // All, Blur, Compression
  EXPECT_EQ(groups.at(std::nullopt).at(Estimator::kFsim).n, 10u);
  EXPECT_EQ(rep.pairs.size(), 3u);
}

TEST_F(CliTest, BenchSamePairIsZeroChange) {
  const fs::path manifest = write_fixture();
  const CliRun r = run({"bench", manifest.string(), "--pair", "SRSIM:SRSIM", "--out", (dir_ / "s").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rep = report_from_json(slurp(dir_ / "s.json"));
  for (const auto& [g, c] : rep.changes.at({Estimator::kSrsim, Estimator::kSrsim}).at(Database::kCustom)) {
    EXPECT_EQ(c.pct_change, 0.0);
    EXPECT_FALSE(c.significant);
  }
}

TEST_F(CliTest, BenchMissingImage) {
  const fs::path manifest = write_fixture();
  fs::remove(dir_ / "dist1_4.png");
  const CliRun strict = run({"bench", manifest.string(), "--out", (dir_ / "x").string()});
  EXPECT_EQ(strict.status, 2);
  EXPECT_NE(strict.err.find("dist1_4.png"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "x.json"));
  const CliRun lenient = run({"--skip-missing", "bench", manifest.string(), "--out", (dir_ / "y").string()});
  EXPECT_EQ(lenient.status, 0) << lenient.err;
  EXPECT_NE(lenient.err.find("warning"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "y.json"));
}

TEST_F(CliTest, VerifyManifest) {
  {
    std::ofstream csv(dir_ / "tid.csv");
    csv << "ref,dist,mos,distortion\n";
    for (int code = 1; code <= 24; ++code)
      for (int i = 0; i < 125; ++i) csv << "r.bmp,d" << code << '_' << i << ".bmp,1," << code << '\n';
  }
  const CliRun ok = run({"verify-manifest", "TID13=" + (dir_ / "tid.csv").string()});
  EXPECT_EQ(ok.status, 0) << ok.out;
  EXPECT_NE(ok.out.find("TID13\tColor\t375\texpected 375\tok"), std::string::npos) << ok.out;
  EXPECT_NE(ok.out.find("TID13\tNoise\t1375\texpected 1375\tok"), std::string::npos);
  EXPECT_NE(ok.out.find("TID13\trows\t3000\texpected 3000\tok"), std::string::npos);

  const fs::path small = write_fixture();
  const CliRun files = run({"verify-manifest", "--check-files", small.string()});
  EXPECT_EQ(files.status, 0) << files.err;
  const CliRun mismatch = run({"verify-manifest", "TID13=" + small.string()});
  EXPECT_EQ(mismatch.status, 2);  // Blur/Compression are not TID13 codes
}

}  // namespace
}  // namespace bless
