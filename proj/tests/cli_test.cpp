#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <topsmooth/pnm.hpp>
#include <topsmooth/synth.hpp>

using namespace topsmooth;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("topsmooth_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Runs the CLI with stdout and stderr captured into files; returns the exit status.
  int run(const std::string& args) {
    const std::string cmd = std::string("\"") + TOPSMOOTH_CLI_PATH + "\" " + args + " >\"" + path("stdout") +
                            "\" 2>\"" + path("stderr") + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string slurp(const std::string& p) const {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  std::string out() const { return slurp(path("stdout")); }
  std::string err() const { return slurp(path("stderr")); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, RadiusZeroCopiesInput) {
  for (auto f : {PbmFormat::p1, PbmFormat::p4}) {
    write_pbm(noisy_disc(40, 50, 3), path("in.pbm"), f);
    ASSERT_EQ(run("smooth " + path("in.pbm") + " " + path("out.pbm") + " --radius 0 --workers 2"), 0) << err();
    EXPECT_EQ(slurp(path("out.pbm")), slurp(path("in.pbm")));
  }
}

TEST_F(Cli, OutputIndependentOfWorkerCount) {
  write_pbm(noisy_disc(96, 96, 5), path("in.pbm"));
  ASSERT_EQ(run("smooth " + path("in.pbm") + " " + path("a.pbm") + " -r 3 --workers 1"), 0) << err();
  ASSERT_EQ(run("smooth " + path("in.pbm") + " " + path("b.pbm") + " -r 3 --workers 8"), 0) << err();
  ASSERT_EQ(run("smooth " + path("in.pbm") + " " + path("c.pbm") + " -r 3 --workers 3 --scheduler system"), 0);
  EXPECT_EQ(slurp(path("a.pbm")), slurp(path("b.pbm")));
  EXPECT_EQ(slurp(path("a.pbm")), slurp(path("c.pbm")));
}

TEST_F(Cli, VerifyPrintsMatchingCounts) {
  write_pbm(noisy_disc(128, 128, 11), path("in.pbm"));
  ASSERT_EQ(run("smooth " + path("in.pbm") + " " + path("out.pbm") + " -r 3 --verify --adj 4,8"), 0) << err();
  const auto text = out();
  const auto before = text.find("before:");
  const auto after = text.find("after:");
  ASSERT_NE(before, std::string::npos);
  ASSERT_NE(after, std::string::npos);
  auto counts = [&](std::size_t at) {
    const auto a = text.find("object_components=", at);
    const auto b = text.find(" pixels=", at);
    return text.substr(a, b - a);
  };
  EXPECT_EQ(counts(before), counts(after));
}

TEST_F(Cli, OutputFormatOverride) {
  write_pbm(noisy_disc(20, 20, 1), path("in.pbm"), PbmFormat::p4);
  ASSERT_EQ(run("smooth " + path("in.pbm") + " " + path("out.pbm") + " -r 1 --format p1"), 0) << err();
  EXPECT_EQ(slurp(path("out.pbm")).substr(0, 2), "P1");
}

TEST_F(Cli, ConstraintsAreHonoured) {
  const auto x = noisy_disc(48, 48, 6);
  auto keep = BinaryImage(48, 48);
  for (std::size_t r = 0; r < 48; ++r)
    for (std::size_t c = 0; c < 48; ++c)
      if ((r * 7 + c * 3) % 11 == 0 && x(r, c)) keep.set(r, c, true);
  write_pbm(x, path("in.pbm"));
  write_pbm(keep, path("keep.pbm"));
  ASSERT_EQ(run("smooth " + path("in.pbm") + " " + path("out.pbm") + " -r 3 --constraint-keep " + path("keep.pbm")), 0)
      << err();
  EXPECT_TRUE(is_subset(keep, read_pbm(path("out.pbm"))));
}

TEST_F(Cli, WrongConstraintDimensionsFail) {
  write_pbm(noisy_disc(20, 20, 1), path("in.pbm"));
  write_pbm(BinaryImage(20, 21), path("keep.pbm"));
  EXPECT_EQ(run("smooth " + path("in.pbm") + " " + path("out.pbm") + " --constraint-keep " + path("keep.pbm")), 1);
  EXPECT_NE(err().find("--constraint-keep"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("out.pbm")));
}

TEST_F(Cli, KeepConstraintOutsideObjectFails) {
  write_pbm(noisy_disc(20, 20, 1), path("in.pbm"));
  write_pbm(BinaryImage(20, 20, 1), path("keep.pbm"));
  EXPECT_EQ(run("smooth " + path("in.pbm") + " " + path("out.pbm") + " --constraint-keep " + path("keep.pbm")), 1);
}

TEST_F(Cli, MalformedInputReportsByteOffset) {
  {
    std::ofstream f(path("bad.pbm"), std::ios::binary);
    f << "P1\n2 2\n1 0 7 1\n";
  }
  EXPECT_EQ(run("smooth " + path("bad.pbm") + " " + path("out.pbm")), 1);
  EXPECT_NE(err().find("byte 11"), std::string::npos) << err();
  EXPECT_EQ(run("smooth " + path("missing.pbm") + " " + path("out.pbm")), 1);
}

TEST_F(Cli, BadFlagsFail) {
  write_pbm(noisy_disc(20, 20, 1), path("in.pbm"));
  EXPECT_EQ(run("smooth " + path("in.pbm") + " " + path("out.pbm") + " --scheduler fifo"), 1);
  EXPECT_EQ(run("smooth " + path("in.pbm") + " " + path("out.pbm") + " --adj 8,8"), 1);
  EXPECT_EQ(run("smooth " + path("in.pbm") + " " + path("out.pbm") + " --workers 0"), 1);
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, BenchWritesCsv) {
  write_pbm(noisy_disc(48, 48, 2), path("in.pbm"));
  ASSERT_EQ(run("bench " + path("in.pbm") + " -r 2 --workers-list 1,2 --reps 2 --scheduler-list nps,strided"), 0)
      << err();
  std::istringstream lines(out());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "scheduler,workers,t_min_s,speedup,efficiency");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(run("bench " + path("in.pbm") + " --workers-list 1,x"), 1);
}

TEST_F(Cli, EdtWritesPgm) {
  write_pbm(BinaryImage::from_rows({"...", ".#.", "..."}), path("in.pbm"));
  ASSERT_EQ(run("edt " + path("in.pbm") + " " + path("d.pgm") + " --encoding p2"), 0) << err();
  const auto p = parse_pgm(slurp(path("d.pgm")));
  EXPECT_EQ(p.values, (std::vector<unsigned>{2, 1, 2, 1, 0, 1, 2, 1, 2}));
}

TEST_F(Cli, EnvironmentWorkerDefault) {
  write_pbm(noisy_disc(40, 40, 8), path("in.pbm"));
  ASSERT_EQ(run("smooth " + path("in.pbm") + " " + path("a.pbm") + " -r 2"), 0);
  ::setenv("TOPSMOOTH_WORKERS", "3", 1);
  ASSERT_EQ(run("smooth " + path("in.pbm") + " " + path("b.pbm") + " -r 2"), 0);
  ::setenv("TOPSMOOTH_WORKERS", "zero", 1);
  ASSERT_EQ(run("smooth " + path("in.pbm") + " " + path("c.pbm") + " -r 2"), 0);
  EXPECT_NE(err().find("TOPSMOOTH_WORKERS"), std::string::npos);
  ::unsetenv("TOPSMOOTH_WORKERS");
  EXPECT_EQ(slurp(path("a.pbm")), slurp(path("b.pbm")));
  EXPECT_EQ(slurp(path("a.pbm")), slurp(path("c.pbm")));
}

TEST_F(Cli, SynthIsDeterministic) {
  ASSERT_EQ(run("synth " + path("a.pbm") + " --size 64 --seed 3"), 0);
  ASSERT_EQ(run("synth " + path("b.pbm") + " --size 64 --seed 3"), 0);
  EXPECT_EQ(slurp(path("a.pbm")), slurp(path("b.pbm")));
  EXPECT_EQ(read_pbm(path("a.pbm")), noisy_disc(64, 64, 3));
}
