#include <superh/cli.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace superh;
using namespace superh::cli;

namespace {

struct Invocation {
  int code = -1;
  std::string out;
};

Invocation run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + SUPERH_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
  Invocation r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Grid grid(const std::string& m, const std::string& n, const std::string& k) {
  return {parse_range(m), parse_range(n), parse_range(k)};
}

const Json* find_row(const Report& r, int k) {
  for (const auto& row : r.rows)
    if (row.contains("k") && row["k"] == k) return &row;
  return nullptr;
}

}  // namespace

TEST(Range, Parsing) {
  EXPECT_EQ(parse_range("3").lo, 3);
  EXPECT_EQ(parse_range("3").hi, 3);
  EXPECT_EQ(parse_range("0..6").hi, 6);
  EXPECT_EQ(parse_range("2..2").str(), "2");
  for (const char* bad : {"", "a", "-1", "3..1", "1..", "..2", "1...3", "1..2x"})
    EXPECT_THROW(parse_range(bad), UsageError) << bad;
}

TEST(Dims, KnownValues) {
  const auto a = cmd_dims(grid("2", "1", "0..3"));
  ASSERT_EQ(a.rows.size(), 4U);
  const Json* k2 = find_row(a, 2);
  ASSERT_NE(k2, nullptr);
  EXPECT_EQ((*k2)["H"], 7);
  EXPECT_EQ((*k2)["L"], 6);
  EXPECT_EQ((*k2)["window"], true);
  const auto b = cmd_dims(grid("3", "0", "2"));
  EXPECT_EQ(b.rows[0]["H"], 5);
  EXPECT_EQ(b.rows[0]["L"], 5);
  const auto c = cmd_dims(grid("2", "1", "0"));
  EXPECT_EQ(c.rows[0]["H"], 1);
  EXPECT_EQ(c.rows[0]["L"], 1);
  EXPECT_THROW(cmd_dims(grid("0", "1", "0")), UsageError);
}

TEST(Dims, RowsMatchLibrary) {
  const auto r = cmd_dims(grid("1..4", "0..2", "0..6"));
  EXPECT_EQ(r.rows.size(), 4U * 3U * 7U);
  for (const auto& row : r.rows) {
    const int m = row["m"], n = row["n"], k = row["k"];
    EXPECT_EQ(row["H"], static_cast<long long>(harmonic_basis(m, n, k).dim()));
    EXPECT_EQ(row["L"], simple_dim(m, n, k));
  }
}

TEST(Integrate, KnownValues) {
  const auto a = cmd_integrate("1", 3, 1);
  ASSERT_EQ(a.rows.size(), 2U);
  EXPECT_EQ(scaled_rational_from_json(a.rows[0]["value"]).str(), "2 * pi^0");
  EXPECT_EQ(a.rows[0]["value"], a.rows[1]["value"]);
  EXPECT_EQ(a.status, Status::Pass);
  const auto b = cmd_integrate("x1^2", 2, 0);
  EXPECT_EQ(scaled_rational_from_json(b.rows[0]["value"]), ScaledRational(Rational(1), 2));
  EXPECT_EQ(scaled_rational_from_json(b.rows[1]["value"]), ScaledRational(Rational(1), 2));
  const auto c = cmd_integrate("xg1", 2, 1);
  EXPECT_TRUE(scaled_rational_from_json(c.rows[0]["value"]).is_zero());
  EXPECT_TRUE(scaled_rational_from_json(c.rows[1]["value"]).is_zero());
  EXPECT_EQ(c.status, Status::Degenerate);
  EXPECT_THROW(cmd_integrate("x1^", 2, 1), UsageError);
  EXPECT_THROW(cmd_integrate("x3", 2, 1), UsageError);
}

TEST(Decompose, KnownValue) {
  const auto r = cmd_decompose(grid("2", "1", "2"));
  ASSERT_EQ(r.rows.size(), 3U);
  EXPECT_EQ(r.rows[0]["dim"], 2);
  EXPECT_EQ(r.rows[1]["dim"], 4);
  EXPECT_EQ(r.rows[2]["dim"], 1);
  EXPECT_EQ(r.status, Status::Pass);
}

TEST(Branch, KnownValues) {
  const auto a = cmd_branch(grid("2", "1", "2"));
  ASSERT_EQ(a.rows.size(), 1U);
  EXPECT_EQ(a.rows[0]["l"], Json::array({1, 2}));
  EXPECT_EQ(a.rows[0]["dims"], Json::array({3, 3}));
  EXPECT_EQ(a.rows[0]["verified"], true);
  const auto b = cmd_branch(grid("3", "1", "3"));
  EXPECT_EQ(b.rows[0]["case"], "not completely reducible");
  EXPECT_EQ(b.rows[0]["jordan_witness"], true);
  EXPECT_THROW(cmd_branch(grid("1", "1", "1")), UsageError);
}

TEST(Check, KnownValues) {
  EXPECT_EQ(cmd_check("sl2", grid("2", "1", "0..6"), 1).status, Status::Pass);
  const auto w = cmd_check("windows", grid("2", "1", "0..6"), 1);
  EXPECT_EQ(w.status, Status::Pass);
  ASSERT_EQ(w.rows.size(), 1U);
  EXPECT_EQ(w.rows[0]["k"], 2);
  const auto irr = cmd_check("irreducibility", grid("3", "1", "0..6"), 1);
  EXPECT_EQ(irr.status, Status::Pass);
  EXPECT_EQ(irr.rows.size(), 7U);
  for (const auto& row : irr.rows) EXPECT_EQ(row["verdict"], "irreducible");
  EXPECT_THROW(cmd_check("nope", grid("2", "1", "2"), 1), UsageError);
  EXPECT_THROW(cmd_check("branching", grid("1", "1", "2"), 1), UsageError);
  EXPECT_THROW(cmd_check("sl2", grid("1", "1", "1"), 1), UsageError);
}

TEST(Check, EverySuitePassesOnASmallGrid) {
  for (const auto& s : suite_names()) {
    const int lo = s == "branching" ? 2 : (s == "projections" || s == "integrals" || s == "irreducibility" || s == "windows") ? 1 : 0;
    const auto r = cmd_check(s, grid(std::to_string(lo) + "..3", "0..2", "0..4"), 1);
    EXPECT_EQ(r.status, Status::Pass) << s << ": " << r.counterexample.value_or("");
    EXPECT_FALSE(r.rows.empty()) << s;
  }
  const auto all = cmd_check("all", grid("0..2", "0..1", "0..3"), 1);
  EXPECT_EQ(all.status, Status::Pass) << all.counterexample.value_or("");
  for (const auto& row : all.rows) EXPECT_TRUE(row.contains("suite"));
}

TEST(Fischer, DegenerateExactlyForMinus2N) {
  EXPECT_EQ(cmd_fischer(grid("2", "1", "0..3")).status, Status::Degenerate);
  EXPECT_EQ(cmd_fischer(grid("3", "1", "0..4")).status, Status::Pass);
  EXPECT_EQ(cmd_fischer(grid("0", "2", "0..4")).status, Status::Pass);
}

TEST(ReportFormat, JsonRoundTripIsExact) {
  const std::vector<Report> reports{cmd_dims(grid("1..2", "0..1", "0..3")), cmd_integrate("x1^2*xg1*xg2 - 3*x2^4", 3, 1),
                                    cmd_decompose(grid("3", "2", "3")), cmd_branch(grid("2..3", "1", "0..3")),
                                    cmd_check("windows", grid("2", "1..2", "0..4"), 1)};
  for (const auto& r : reports) {
    const std::string text = render(r, Format::Json);
    const Report back = load_fixture(text);
    EXPECT_EQ(back, r) << r.command;
    EXPECT_EQ(render(back, Format::Json), text);
  }
  Report failing{"check lb", Json::object(), {}, Status::Pass, std::nullopt};
  failing.fail("first");
  failing.fail("second");
  EXPECT_EQ(*failing.counterexample, "first");
  EXPECT_EQ(load_fixture(render(failing, Format::Json)), failing);
}

TEST(ReportFormat, LoaderRejectsMalformedFixtures) {
  EXPECT_THROW(load_fixture("not json"), FixtureError);
  EXPECT_THROW(load_fixture("[]"), FixtureError);
  EXPECT_THROW(load_fixture(R"({"command":"x","parameters":{},"rows":[],"status":"pass"})"), FixtureError);
  EXPECT_THROW(load_fixture(R"({"command":"x","parameters":{},"rows":[],"status":"maybe","counterexample":null})"),
               FixtureError);
  EXPECT_THROW(load_fixture(R"({"command":"x","parameters":{},"rows":[],"status":"fail","counterexample":null})"),
               FixtureError);
  EXPECT_THROW(
      load_fixture(R"({"command":"x","parameters":{},"rows":[{"v":{"q":"1/0","h":1}}],"status":"pass","counterexample":null})"),
      FixtureError);
  EXPECT_THROW(
      load_fixture(R"({"command":"x","parameters":{},"rows":[{"v":{"q":1,"h":1}}],"status":"pass","counterexample":null})"),
      FixtureError);
}

TEST(ReportFormat, ScaledRationalEncoding) {
  const ScaledRational v(Rational(-4, 3), -1);
  const Json j = to_json(v);
  EXPECT_EQ(j.dump(), R"({"q":"-4/3","h":-1})");
  EXPECT_EQ(scaled_rational_from_json(j), v);
  EXPECT_EQ(to_json(ScaledRational()).dump(), R"({"q":"0","h":0})");
}

TEST(ReportFormat, TableAndCsv) {
  const auto r = cmd_dims(grid("2", "1", "2"));
  EXPECT_EQ(render(r, Format::Csv), "m,n,k,H,L,window\n2,1,2,7,6,yes\n");
  const std::string table = render(r, Format::Table);
  EXPECT_NE(table.find("status: pass"), std::string::npos);
  const auto i = cmd_integrate("1", 3, 1);
  EXPECT_NE(render(i, Format::Table).find("2 * pi^0"), std::string::npos);
}

TEST(ReportFormat, StatusAndExitCodes) {
  EXPECT_EQ(exit_code(Status::Pass), 0);
  EXPECT_EQ(exit_code(Status::Degenerate), 0);
  EXPECT_EQ(exit_code(Status::Fail), 1);
  EXPECT_EQ(exit_code(Status::Inconclusive), 1);
  Report r;
  r.raise(Status::Degenerate);
  r.raise(Status::Pass);
  EXPECT_EQ(r.status, Status::Degenerate);
  r.raise(Status::Inconclusive);
  EXPECT_EQ(r.status, Status::Inconclusive);
  r.fail("x");
  r.raise(Status::Inconclusive);
  EXPECT_EQ(r.status, Status::Fail);
}

TEST(Executable, GoldenFixtures) {
  const std::string dir = std::string(SUPERH_SOURCE_DIR) + "/tests/fixtures/";
  const std::vector<std::pair<std::string, std::string>> cases{
      {"dims -m 2 -n 1 -k 0..3", "dims_m2_n1.json"},
      {"decompose -m 2 -n 1 -k 2", "decompose_m2_n1_k2.json"},
      {"branch -m 2 -n 1 -k 2", "branch_m2_n1_k2.json"},
      {"branch -m 3 -n 1 -k 3", "branch_m3_n1_k3.json"},
      {"integrate \"x1^2\" -m 2 -n 0", "integrate_x1sq_m2_n0.json"},
      {"integrate 1 -m 3 -n 1", "integrate_one_m3_n1.json"},
      {"check windows -m 2 -n 1", "check_windows_m2_n1.json"}};
  for (const auto& [args, file] : cases) {
    const Invocation r = run(args + " --format json");
    EXPECT_EQ(r.code, 0) << args;
    const std::string golden = read_file(dir + file);
    ASSERT_FALSE(golden.empty()) << file;
    EXPECT_EQ(r.out, golden) << args;
    EXPECT_EQ(render(load_fixture(golden), Format::Json), golden) << file;
  }
}

TEST(Executable, ExitCodes) {
  EXPECT_EQ(run("check sl2 -m 2 -n 1 -k 6").code, 0);
  EXPECT_EQ(run("fischer -m 2 -n 1 -k 2").code, 0);
  EXPECT_EQ(run("integrate xg1 -m 2 -n 1").code, 0);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("dims -m 2 -n 1 -k 3..1").code, 2);
  EXPECT_EQ(run("dims -m 2 -k 1").code, 2);
  EXPECT_EQ(run("integrate \"x1^\" -m 2 -n 1").code, 2);
  EXPECT_EQ(run("check nope -m 1 -n 1").code, 2);
  EXPECT_EQ(run("dims -m 2 -n 1 -k 1 --format xml").code, 2);
  EXPECT_EQ(run("branch -m 1 -n 1 -k 1").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Executable, SingleDegreeMeansBoundForChecks) {
  const Invocation r = run("check irreducibility -m 3 -n 1 -k 6 --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(load_fixture(r.out).rows.size(), 7U);
}

TEST(Executable, OutputIndependentOfThreadCount) {
  const std::string args = "check all -m 1..3 -n 0..1 -k 4 --format json";
  const Invocation one = run(args, "SUPERH_THREADS=1");
  const Invocation three = run(args, "SUPERH_THREADS=3");
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, three.out);
}

TEST(Parallel, ThreadCapAndOrdering) {
  setenv("SUPERH_THREADS", "3", 1);
  EXPECT_EQ(thread_cap(), 3U);
  setenv("SUPERH_THREADS", "junk", 1);
  EXPECT_GE(thread_cap(), 1U);
  setenv("SUPERH_THREADS", "4", 1);
  std::vector<int> v(100, 0);
  parallel_for(v.size(), [&](std::size_t i) { v[i] = static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<int>(i * i));
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  unsetenv("SUPERH_THREADS");
}
