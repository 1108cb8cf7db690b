#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "hk/ringfile.hpp"
#include "oracle.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("quadric.ring", "p 5\nvars x y z\nideal Q = x^2 + y^2 + z^2\n");
    write("regular.ring", "p 3\nvars x y\n");
    write("ci.ring", "p 5\nvars x y z w\nideal C = x^2+y^3, x^2+z^3\nprecision 12\n");
    write("monsky.ring", "p 2\next 2 t^2+t+1\nvars x y z\n");
    write("bad.ring", "p 5\nvars x y\nideal J = x^2 + * y\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
  }
  Result run(std::vector<std::string> args, bool cache = false) {
    std::vector<std::string> full{"hk"};
    if (cache) {
      full.push_back("--cache-dir");
      full.push_back(path("cache"));
    } else {
      full.push_back("--no-cache");
    }
    for (auto& a : args) full.push_back(std::move(a));
    std::ostringstream out, err;
    Result r;
    r.code = hk::cli::run(full, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
  }

  fs::path dir_;
};

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_F(Cli, ComputeMatchesOracle) {
  const auto rf = hk::load_ring_file(path("quadric.ring"));
  const auto want = hk::test::linear_colength(rf.ring, rf.ideal("Q"), 5);
  const auto r = run({"compute", path("quadric.ring"), "--q", "5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, std::to_string(want) + "\n");
  const auto j = nlohmann::json::parse(run({"--out", "json", "compute", path("quadric.ring"), "--q", "5"}).out);
  EXPECT_EQ(j["colength"].get<std::uint64_t>(), want);
}

TEST_F(Cli, InlineRing) {
  const auto a = run({"compute", path("quadric.ring"), "--q", "25"});
  const auto b = run({"compute", "--p", "5", "--vars", "x,y,z", "--gens", "x^2 + y^2 + z^2", "--q", "25"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"compute", path("bad.ring"), "--q", "5"}).code, 2);
  EXPECT_EQ(run({"compute", path("missing.ring"), "--q", "5"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"compute", path("quadric.ring")}).code, 2);
  EXPECT_EQ(run({"compute", path("quadric.ring"), "--q", "6"}).code, 3);
  EXPECT_EQ(run({"compute", path("quadric.ring"), "--q", "5", "--gens", "x + 1"}).code, 3);
  EXPECT_EQ(run({"compute", path("quadric.ring"), "--q", "5", "--ideal", "nope"}).code, 3);
  EXPECT_EQ(run({"scan", "--p", "2", "--count", "1"}).code, 3);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"estimate", path("quadric.ring"), "--emax", "2"}).code, 3);
  EXPECT_EQ(run({"monsky", "--alpha", "1", "--emax", "2"}).code, 3);
  write("p4.ring", "p 4\nvars x\n");
  // In a ring file a composite p is malformed input; inline it fails field validation.
  EXPECT_EQ(run({"compute", path("p4.ring"), "--q", "4"}).code, 2);
  EXPECT_EQ(run({"compute", "--p", "4", "--vars", "x", "--q", "4"}).code, 3);
}

TEST_F(Cli, ExitCodesFromBinary) {
  const std::string bin = HK_BINARY;
  EXPECT_EQ(shell(bin + " --no-cache compute " + path("quadric.ring") + " --q 5 > /dev/null"), 0);
  EXPECT_EQ(shell(bin + " --no-cache compute " + path("bad.ring") + " --q 5 2> /dev/null"), 2);
  EXPECT_EQ(shell(bin + " --no-cache compute " + path("quadric.ring") + " --q 6 2> /dev/null"), 3);
}

TEST_F(Cli, RegularRingRowsAreOne) {
  const auto r = run({"function", path("regular.ring"), "--emax", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "e,q,colength,f_e,exact\n1,3,9,1,true\n2,9,81,1,true\n3,27,729,1,true\n");
  const auto e = run({"estimate", path("regular.ring"), "--emax", "3"});
  EXPECT_EQ(e.out, "estimate,uncertainty\n1,0\n");
}

TEST_F(Cli, Deterministic) {
  const auto a = run({"--out", "json", "function", path("quadric.ring"), "--emax", "3"});
  const auto b = run({"--out", "json", "function", path("quadric.ring"), "--emax", "3"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("seconds"), std::string::npos);
  const auto t = run({"--out", "json", "--timings", "function", path("quadric.ring"), "--emax", "2"});
  EXPECT_NE(t.out.find("timings"), std::string::npos);
}

TEST_F(Cli, CacheOnAndOffAgree) {
  const std::vector<std::string> args{"function", path("quadric.ring"), "--emax", "3"};
  const auto off = run(args);
  const auto cold = run(args, true);
  EXPECT_TRUE(fs::exists(path("cache")));
  EXPECT_FALSE(fs::is_empty(path("cache")));
  const auto warm = run(args, true);
  EXPECT_EQ(off.out, cold.out);
  EXPECT_EQ(off.out, warm.out);
  auto serial = args;
  serial.insert(serial.begin(), "--serial");
  EXPECT_EQ(run(serial).out, off.out);
}

TEST_F(Cli, CorruptCacheEntriesAreIgnored) {
  const std::vector<std::string> args{"compute", path("quadric.ring"), "--q", "25"};
  const auto good = run(args, true);
  for (const auto& e : fs::directory_iterator(path("cache"))) std::ofstream(e.path()) << "garbage";
  EXPECT_EQ(run(args, true).out, good.out);
}

TEST_F(Cli, FamilyZeroOnly) {
  const auto r = run({"family", path("quadric.ring"), "--f", "x^2 + y^2 + z^2", "--g", "y^2", "--alphas", "0",
                      "--emax", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "alpha,e,q,colength,le_base");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_EQ(line.substr(0, 2), "0,");
    EXPECT_EQ(line.substr(line.size() - 5), ",true");
  }
  EXPECT_EQ(rows, 2);
}

TEST_F(Cli, FamilyMonskyTable) {
  const auto r = run({"family", path("monsky.ring"), "--f", "z^4 + x*y*z^2 + (x^3 + y^3)*z", "--g", "x^2*y^2",
                      "--alphas", "all", "--emax", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  // Four fibers, three rows each, plus the header.
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 13);
}

TEST_F(Cli, MonskyReferenceColumn) {
  const auto r = run({"monsky", "--alpha", "1", "--emax", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1,2,49/16,"), std::string::npos) << r.out;
  const auto z = run({"monsky", "--alpha", "0", "--emax", "3"});
  EXPECT_NE(z.out.find("undefined"), std::string::npos);
}

TEST_F(Cli, DiagonalizeSumOfSquares) {
  const auto r = run({"diagonalize", "--p", "7", "--vars", "x0 x1 x2", "--f", "x0^2 + x1^2 + x2^2@8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verified"], true);
  EXPECT_EQ(j["tag"], "sum-of-squares");
  const auto c = run({"--out", "csv", "diagonalize", "--p", "7", "--vars", "x0 x1", "--f", "x0^2 + x1^3 + x0*x1^2@10",
                      "--target", "cube"});
  EXPECT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("squares-plus-cube"), std::string::npos) << c.out;
}

TEST_F(Cli, ReduceTraceReplay) {
  const auto r = run({"reduce", path("ci.ring"), "--audit", "--trace", path("trace.json"), "--audit-csv",
                      path("audit.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["hypersurface"].is_null());
  EXPECT_EQ(j["vars"].size(), 3u);
  std::ifstream a(path("audit.csv"));
  std::string header;
  std::getline(a, header);
  EXPECT_EQ(header, "step,e,q,before,after,exact,holds");
  for (std::string line; std::getline(a, line);) EXPECT_EQ(line.substr(line.size() - 5), ",true");
  const auto rp = run({"replay", path("ci.ring"), "--trace", path("trace.json")});
  EXPECT_EQ(rp.code, 0) << rp.err;
  EXPECT_EQ(rp.out, "matches,true\n");

  auto t = nlohmann::json::parse(std::ifstream(path("trace.json")));
  t["steps"].back()["after"][0] = "y@12";
  std::ofstream(path("bad.json")) << t.dump();
  EXPECT_EQ(run({"replay", path("ci.ring"), "--trace", path("bad.json")}).code, 5);
  std::ofstream(path("junk.json")) << "{ not json";
  EXPECT_EQ(run({"replay", path("ci.ring"), "--trace", path("junk.json")}).code, 2);
}

TEST_F(Cli, ScanPassTable) {
  const auto r = run({"scan", "--dim", "2", "--p", "5", "--count", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_NE(line.find(",true"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 10);
}
