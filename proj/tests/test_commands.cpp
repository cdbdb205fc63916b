#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mafol/commands.hpp"
#include "oracles.hpp"

using namespace mafol;
namespace fs = std::filesystem;

namespace {

const fs::path kData = fs::path(MAFOL_DATA_DIR);

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("mafol_test_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ScanConfig quick(const fs::path& out) {
  ScanConfig cfg;
  cfg.samples = 200;
  cfg.burns_grid = 6;
  cfg.out_dir = out;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("parse_point") {
  const CPoint z = parse_point("1, 0.5-2i", 2);
  CHECK(z[0] == Complex(1, 0));
  CHECK(z[1] == Complex(0.5, -2));
  CHECK_THROWS_AS(parse_point("1", 2), Error);
  CHECK_THROWS_AS(parse_point("1,x", 2), Error);
}

TEST_CASE("cmd_analyze: non-MA potential is a finding, not a failure") {
  TempDir tmp;
  std::ostringstream out, err;
  CHECK(cmd_analyze(kData / "weighted.pot", quick(tmp.path), out, err) == exit_code::kOk);
  CHECK(fs::exists(tmp.path / "weighted.analyze.csv"));
  CHECK(out.str().find("stratum census") != std::string::npos);

  std::ostringstream out2, err2;
  const int rc = cmd_analyze(kData / "bad.pot", quick(tmp.path), out2, err2);
  CHECK(rc == exit_code::kOk);  // analyze reports, it does not require MA
  CHECK(out2.str().find("max ma_residual") != std::string::npos);
}

TEST_CASE("cmd_analyze: input errors exit 2") {
  TempDir tmp;
  std::ostringstream out, err;
  CHECK(cmd_analyze(tmp.path / "missing.pot", quick(tmp.path), out, err) == exit_code::kInputError);
  std::ofstream(tmp.path / "broken.pot") << "n = 2\nmonomial: a=[1,0] b=[0,1] c=1\n";
  std::ostringstream out2, err2;
  CHECK(cmd_analyze(tmp.path / "broken.pot", quick(tmp.path), out2, err2) == exit_code::kInputError);
  CHECK(err2.str().find("non-Hermitian") != std::string::npos);
}

TEST_CASE("cmd_trace") {
  TempDir tmp;
  TraceOptions opts;
  opts.point = "1,1";
  opts.t_count = 5;
  opts.s_count = 5;
  std::ostringstream out, err;
  CHECK(cmd_trace(kData / "weighted.pot", opts, quick(tmp.path), out, err) == exit_code::kOk);
  CHECK(fs::exists(tmp.path / "trace.csv"));

  opts.point = "0,0";
  std::ostringstream out2, err2;
  CHECK(cmd_trace(kData / "weighted.pot", opts, quick(tmp.path), out2, err2) == exit_code::kInputError);

  opts.point = "1,1";
  std::ostringstream out3, err3;
  CHECK(cmd_trace(kData / "bad.pot", opts, quick(tmp.path), out3, err3) == exit_code::kCheckFailure);
}

TEST_CASE("cmd_weights") {
  TempDir tmp;
  std::ostringstream out, err;
  CHECK(cmd_weights(kData / "weighted.pot", quick(tmp.path), out, err) == exit_code::kOk);
  CHECK(out.str().find("c = (1, 0.5), unique") != std::string::npos);

  std::ostringstream out2, err2;
  CHECK(cmd_weights(kData / "bad.pot", quick(tmp.path), out2, err2) == exit_code::kOk);
  CHECK(out2.str().find("infeasible: equations {c1=1, c2=1, c1+c2=1}") != std::string::npos);
}

TEST_CASE("cmd_burns") {
  TempDir tmp;
  std::ostringstream out, err;
  CHECK(cmd_burns(kData / "ball_squared.pot", quick(tmp.path), true, out, err) == exit_code::kOk);
  CHECK(out.str().find("verdict: pass") != std::string::npos);
  CHECK(fs::exists(tmp.path / "burns_grid.csv"));

  std::ostringstream out2, err2;
  CHECK(cmd_burns(kData / "mixed_quartic.pot", quick(tmp.path), false, out2, err2) == exit_code::kOk);
  CHECK(out2.str().find("verdict: fail") != std::string::npos);
  CHECK(out2.str().find("(3,1)=0.5") != std::string::npos);
}

TEST_CASE("cmd_suite: expectations hold and output is deterministic") {
  TempDir a, b;
  std::ostringstream out, err;
  const int rc = cmd_suite(kData, quick(a.path), out, err);
  INFO(out.str());
  INFO(err.str());
  CHECK(rc == exit_code::kOk);
  std::ostringstream out2, err2;
  auto cfg = quick(b.path);
  cfg.exec = Execution::Serial;
  CHECK(cmd_suite(kData, cfg, out2, err2) == exit_code::kOk);
  for (const auto& entry : fs::directory_iterator(a.path)) {
    if (entry.path().extension() != ".csv") continue;
    CHECK(slurp(entry.path()) == slurp(b.path / entry.path().filename()));
  }
  CHECK(fs::exists(a.path / "suite.csv"));
}

TEST_CASE("cmd_suite: empty directory exits 2") {
  TempDir tmp;
  std::ostringstream out, err;
  CHECK(cmd_suite(tmp.path, quick(tmp.path), out, err) == exit_code::kInputError);
}

TEST_CASE("csv_columns_help mentions every artifact") {
  const auto help = csv_columns_help();
  for (const char* name : {"analyze.csv", "trace.csv", "burns_grid.csv", "suite.csv"}) {
    CHECK(help.find(name) != std::string_view::npos);
  }
}
