#include "gdconf/cli/run.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sys/wait.h>

using namespace gdconf::cli;

namespace {

const std::string fixtures = GDCONF_FIXTURE_DIR;

AlgebraFile fixture(const std::string& name) { return parse_algebra(fixtures + "/" + name + ".alg"); }

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gdconf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gdconf_test_" + name)).string();
}

int exit_code_of(const std::string& args) {
  int status = std::system((std::string(GDCONF_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void expect_file_error(const std::string& text, int line, const std::string& fragment) {
  try {
    parse_algebra_text(text);
    ADD_FAILURE() << "no error for:\n" << text;
  } catch (const FileError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(AlgebraFile, FixturesMatchHandTypedConstants) {
  EXPECT_EQ(fixture("heisenberg3").algebra, testsupport::heisenberg3());
  EXPECT_EQ(fixture("virasoro-source").algebra, testsupport::virasoro_source());
  EXPECT_EQ(fixture("novikov2").algebra, testsupport::novikov2());
  EXPECT_EQ(fixture("zero1").algebra, testsupport::zero_algebra(1));
  auto ab = fixture("novikov2-abelian").algebra;
  EXPECT_TRUE(ab.bracket.has_value());
  EXPECT_TRUE(ab.bracket->is_zero());
  EXPECT_EQ(*ab.circ, *testsupport::novikov2().circ);
}

TEST(AlgebraFile, RoundTrip) {
  for (const auto& e : std::filesystem::directory_iterator(fixtures)) {
    if (e.path().extension() != ".alg") continue;
    auto f = parse_algebra(e.path().string());
    auto text = print_algebra(f);
    EXPECT_EQ(parse_algebra_text(text), f) << e.path();
    EXPECT_EQ(print_algebra(parse_algebra_text(text)), text) << e.path();
  }
}

TEST(AlgebraFile, RationalCoefficientsAndOddGenerators) {
  auto f = parse_algebra_text(
      "name s\n[generators]\na even\nb odd\n[circ]\na a -> 3/2*a\nb b -> -a  # comment\na b -> -1/3*b\n"
      "[metadata]\nk = v w\n");
  const auto& A = f.algebra;
  EXPECT_EQ(A.circ->at(0, 0, 0), Rational(3, 2));
  EXPECT_EQ(A.circ->at(1, 1, 0), Rational(-1));
  EXPECT_EQ(A.circ->at(0, 1, 1), Rational(-1, 3));
  EXPECT_FALSE(A.bracket.has_value());
  EXPECT_EQ(f.metadata.at("k"), "v w");
  EXPECT_EQ(parse_algebra_text(print_algebra(f)), f);
}

TEST(AlgebraFile, Errors) {
  expect_file_error("name p\n[generators]\na even\nb odd\nf odd\n[circ]\nb b -> f\n", 7, "parity");
  expect_file_error("name p\n[generators]\na even\n[circ]\na a -> q\n", 5, "undeclared label 'q'");
  expect_file_error("name p\n[generators]\na even\n[circ]\na q -> a\n", 5, "undeclared label 'q'");
  expect_file_error("name p\n[generators]\na even\n[circ]\na a => a\n", 5, "->");
  expect_file_error("name p\n[generators]\na even\n[circ]\na a -> 1/0*a\n", 5, "zero denominator");
  expect_file_error("name p\n[generators]\nb odd\na even\n[circ]\n", 5, "even");
  expect_file_error("name p\n[generators]\na blue\n", 3, "even|odd");
  expect_file_error("name p\n[generators]\na even\n[circ]\na a -> a\na a -> a\n", 6, "duplicate");
  expect_file_error("name p\n[stuff]\n", 2, "unknown section");
  expect_file_error("[generators]\na even\n[circ]\n", 0, "name");
  expect_file_error("name p\n[generators]\na even\n", 0, "[circ]");
}

TEST(Run, SpecialityCertificate) {
  auto r = run_cli({"speciality", "--algebra", "heisenberg3", "--diff-order", "2", "--degree", "4", "--depth", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("certificate: z in I_V"), std::string::npos) << r.out;
}

TEST(Run, FfrOnVirasoro) {
  auto path = tmp("ffr.json");
  auto r = run_cli({"build-ffr", "--algebra", "virasoro-source", "--degree", "4", "--report", path});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("faithfulness witness: 1"), std::string::npos);
  auto j = json::parse(slurp(path));
  const auto& w = j["windows"]["D=2,R=4,B=2"];
  EXPECT_LE(w["rank"].get<int>(), 2);
  EXPECT_EQ(w["witness"], "1");
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Run, NovikovWithoutBracketUsesCommutator) {
  auto path = tmp("nov.json");
  auto r = run_cli({"build-ffr", "--algebra", "novikov2", "--report", path});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  auto j = json::parse(slurp(path));
  EXPECT_EQ(j["inputs"]["bracket"], "commutator");
  EXPECT_LE(j["windows"]["D=2,R=4,B=2"]["rank"].get<int>(), 6);
}

TEST(Run, PassingChecks) {
  EXPECT_EQ(run_cli({"check-conformal", "--algebra", "zero1"}).code, 0);
  EXPECT_EQ(run_cli({"check-gd", "--algebra", "heisenberg3"}).code, 0);
  EXPECT_EQ(run_cli({"check-novikov", "--algebra", "novikov2"}).code, 0);
  EXPECT_EQ(run_cli({"build-conformal", "--algebra", "virasoro-source"}).code, 0);
  EXPECT_EQ(run_cli({"loop-oracle", "--algebra", "heisenberg3", "--cap", "2"}).code, 0);
  EXPECT_EQ(run_cli({"check-lemmas", "--order-cap", "2"}).code, 0);
  EXPECT_EQ(run_cli({"build-envelope", "--algebra", "novikov2", "--mode", "defined"}).code, 0);
  EXPECT_EQ(run_cli({"build-envelope", "--algebra", "virasoro-source", "--stabilize"}).code, 0);
  EXPECT_EQ(run_cli({"check-repr", "--algebra", "virasoro-source"}).code, 0);
  EXPECT_EQ(run_cli({"check-gc", "--n", "1", "--m", "0", "--cap", "2"}).code, 0);
}

TEST(Run, ViolationsExitOne) {
  auto path = tmp("bad.alg");
  std::ofstream(path) << "name bad\n[generators]\na even\nb even\n[circ]\na a -> b\nb a -> a\n[bracket]\n";
  auto r = run_cli({"check-gd", "--algebra", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
  EXPECT_EQ(run_cli({"build-ffr", "--algebra", "heisenberg3"}).code, 1);
}

TEST(Run, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"check-gd"}).code, 2);
  EXPECT_EQ(run_cli({"check-gd", "--algebra", "no-such-algebra"}).code, 2);
  EXPECT_EQ(run_cli({"speciality", "--algebra", "heisenberg3", "--degree", "0"}).code, 2);
  EXPECT_EQ(run_cli({"speciality", "--algebra", "heisenberg3", "--depth", "0"}).code, 2);
  EXPECT_EQ(run_cli({"build-envelope", "--algebra", "novikov2", "--mode", "other"}).code, 2);
  EXPECT_EQ(run_cli({"check-gc", "--n", "0", "--m", "0"}).code, 2);
  EXPECT_EQ(run_cli({"check-gd", "--algebra", "novikov2"}).code, 2);
}

TEST(Run, ReportsAreByteIdentical) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"speciality", "--algebra", "heisenberg3"},
           {"build-ffr", "--algebra", "novikov2"},
           {"check-conformal", "--algebra", "heisenberg3"},
           {"build-envelope", "--algebra", "novikov2", "--mode", "defined"}}) {
    auto a = tmp("det_a.json"), b = tmp("det_b.json");
    auto x = args, y = args;
    x.insert(x.end(), {"--report", a});
    y.insert(y.end(), {"--report", b});
    auto r1 = run_cli(x), r2 = run_cli(y);
    EXPECT_EQ(r1.code, r2.code);
    EXPECT_EQ(r1.out, r2.out);
    EXPECT_EQ(slurp(a), slurp(b)) << args[0];
    EXPECT_FALSE(slurp(a).empty());
  }
}

TEST(Run, ReportKeysAreSorted) {
  auto path = tmp("keys.json");
  run_cli({"check-gd", "--algebra", "heisenberg3", "--report", path});
  auto text = slurp(path);
  auto c = text.find("\"command\""), i = text.find("\"inputs\""), p = text.find("\"passed\""),
       v = text.find("\"verdicts\"");
  EXPECT_LT(c, i);
  EXPECT_LT(i, p);
  EXPECT_LT(p, v);
}

TEST(Binary, ExitCodes) {
  const std::string fx = " --fixtures " + fixtures;
  EXPECT_EQ(exit_code_of("check-conformal --algebra zero1" + fx), 0);
  EXPECT_EQ(exit_code_of("speciality --algebra heisenberg3 --diff-order 2 --degree 4 --depth 2" + fx), 1);
  EXPECT_EQ(exit_code_of("build-ffr --algebra virasoro-source --degree 4" + fx), 0);
  EXPECT_EQ(exit_code_of("no-such-command"), 2);
  EXPECT_EQ(exit_code_of("--help"), 0);
}
