#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>
#include <tropex/cli/parse.hpp>

#include "support.hpp"

using namespace tropex;
using tropex::testing::run_command;
using tropex::testing::shell_quote;
using json = nlohmann::json;

namespace {

struct Output {
  int status;
  json payload;
};

Output tropex_run(const std::string& args, const std::string& stdinText = "") {
  std::string cmd = std::string(TROPEX_BIN) + " " + args;
  if (!stdinText.empty()) cmd = "printf '%s' " + shell_quote(stdinText) + " | " + cmd;
  auto r = run_command(cmd + " 2>/dev/null");
  return {r.status, json::parse(r.out)};
}

const char* kNontrivial = R"({"dim":2,"constraints":[{"a":0,"alpha":[1,0]},{"a":0,"alpha":[1,2]}]})";
const char* kQuadrant = R"({"dim":2,"constraints":[{"a":0,"alpha":[1,0]},{"a":0,"alpha":[0,1]}]})";

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(Cli, EvalExamples) {
  auto a = tropex_run("eval " + shell_quote("z1 + z2 + 1") + " --at " + shell_quote("z1=2t^1,z2=3t^2"));
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.payload["coeff"], "1");
  EXPECT_EQ(a.payload["exp"], "0");
  auto b = tropex_run("eval " + shell_quote("z1 + z2 + 1") + " --at " + shell_quote("z1=2t^-1,z2=3t^2"));
  EXPECT_EQ(b.payload["coeff"], "2");
  EXPECT_EQ(b.payload["exp"], "-1");
  auto c = tropex_run("eval " + shell_quote("z1 - 1") + " --at " + shell_quote("z1=1"));
  EXPECT_EQ(c.payload["inZeroLocus"], true);
}

TEST(Cli, SyntaxErrorsReportPosition) {
  auto a = tropex_run("eval " + shell_quote("z1 + + 1") + " --at z1=1");
  EXPECT_EQ(a.status, 2);
  EXPECT_EQ(a.payload["error"]["name"], "SyntaxError");
  EXPECT_EQ(a.payload["error"]["line"], 1);
  EXPECT_EQ(a.payload["error"]["column"], 6);
  auto b = tropex_run("tropicalize " + shell_quote("z1 +\n  * z2"));
  EXPECT_EQ(b.status, 2);
  EXPECT_EQ(b.payload["error"]["line"], 2);
  EXPECT_EQ(b.payload["error"]["column"], 3);
}

TEST(Cli, BasisAndRelations) {
  auto a = tropex_run("basis --polytope " + shell_quote(kNontrivial));
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.payload["basis"].size(), 3u);
  ASSERT_EQ(a.payload["relations"].size(), 1u);
  EXPECT_EQ(a.payload["relations"][0]["constant"], "0");
  auto r = tropex_run("relations --polytope " + shell_quote(kNontrivial));
  EXPECT_FALSE(r.payload.contains("basis"));
  EXPECT_EQ(r.payload["relations"], a.payload["relations"]);
}

TEST(Cli, HypersurfaceJsonAndSvg) {
  std::string svg = temp_path("line.svg");
  std::remove(svg.c_str());
  auto a = tropex_run("hypersurface " + shell_quote("1 + z1 + z2") + " --svg " + shell_quote(svg));
  ASSERT_EQ(a.status, 0);
  const json& cells = a.payload["complex"]["cells"];
  int rays = 0;
  for (const auto& c : cells)
    if (c["cellDim"] == 1) {
      ++rays;
      EXPECT_EQ(c["weight"], "1");
    }
  EXPECT_EQ(rays, 3);
  std::ifstream in(svg);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("<svg"), std::string::npos);
  EXPECT_NE(ss.str().find("<line"), std::string::npos);
}

TEST(Cli, SvgRefusedWhereNoDrawing) {
  auto a = tropex_run("eval z1 --at z1=1 --svg " + shell_quote(temp_path("none.svg")));
  EXPECT_EQ(a.status, 64);
}

TEST(Cli, StdinCommands) {
  auto ncd = tropex_run("explode-ncd", R"({"components":["M"],"divisors":["A","B"],
    "strata":[{"divisors":["A"],"component":"M"},{"divisors":["B"],"component":"M"},{"divisors":["A","B"],"component":"M"}]})");
  ASSERT_EQ(ncd.status, 0);
  EXPECT_EQ(ncd.payload["complex"]["cells"].size(), 4u);
  auto fp = tropex_run("fiber-product", R"({"f":{"domain":{"dim":1,"constraints":[]},"linear":[[2]]},
    "g":{"domain":{"dim":0,"constraints":[]},"linear":[[]]}})");
  ASSERT_EQ(fp.status, 0);
  EXPECT_EQ(fp.payload["multiplicity"], "2");
  EXPECT_EQ(fp.payload["zTransverse"], false);
  auto bal = tropex_run("balance " + shell_quote("1 + z1 + z2 + z1 z2"));
  EXPECT_EQ(bal.payload["balanced"], true);
}

TEST(Cli, StrataOperations) {
  std::string base = "strata-op " + shell_quote("z1 z2 + z1 + z2 + 1") + " --polytope " + shell_quote(kQuadrant);
  auto d = tropex_run(base + " --op delta --strata '[[1],[0]]'");
  ASSERT_EQ(d.status, 0);
  EXPECT_EQ(d.payload["result"], "z1 z2");
  auto e = tropex_run(base + " --op e --strata '[[1]]'");
  EXPECT_EQ(e.payload["result"].get<std::string>().find("z1"), std::string::npos);
  auto w = tropex_run(base + " --op w --strata '[[]]'");
  EXPECT_EQ(w.payload["generators"].size(), 2u);
  auto bad = tropex_run(base + " --op delta --strata '[[3]]'");
  EXPECT_EQ(bad.status, 20);
  auto sn = tropex_run("seminorm z1 --polytope " + shell_quote(kQuadrant) + " --delta 1");
  EXPECT_EQ(sn.status, 21);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(tropex_run("nosuch").status, 64);
  EXPECT_EQ(tropex_run("eval").status, 64);
  EXPECT_EQ(tropex_run("hypersurface " + shell_quote("z1 + t^1 z1")).status, 3);
  EXPECT_EQ(tropex_run("basis --polytope " + shell_quote(R"({"dim":4,"constraints":[{"a":0,"alpha":[1,0,0,0]}]})")).status, 9);
  EXPECT_EQ(tropex_run("degenerate " + shell_quote("1 + z1^2") + " --lift '[0,0]'").status, 19);
  EXPECT_EQ(tropex_run("degenerate " + shell_quote("1 + z1 + z1^2") + " --lift '[0,5,0]'").status, 17);
  EXPECT_EQ(tropex_run("pants " + shell_quote("1 + z1 + z2") + " --lift '[0,0,0]' --w 0").status, 27);
}

TEST(Cli, FloatFlag) {
  auto a = tropex_run("eval " + shell_quote("1/3 z1") + " --at z1=1 --float");
  ASSERT_EQ(a.status, 0);
  EXPECT_NE(a.payload.dump().find("0.333"), std::string::npos);
}

TEST(Parser, RoundTripCorpus) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4), ex(-3, 3), count(1, 5), vars(1, 3), imag(0, 2);
  int checked = 0;
  while (checked < 200) {
    std::size_t m = static_cast<std::size_t>(vars(rng));
    std::vector<Term> terms;
    int k = count(rng);
    for (int j = 0; j < k; ++j) {
      GaussianRational c(make_rational(num(rng), den(rng)), imag(rng) == 0 ? make_rational(num(rng), den(rng)) : Rational(0));
      if (c.is_zero()) c = GaussianRational(1);
      IntVector alpha(m);
      for (auto& x : alpha) x = ex(rng);
      terms.push_back({c, make_rational(num(rng), den(rng)), alpha});
    }
    ExplodedPolynomial f;
    try {
      f = ExplodedPolynomial(m, terms);
    } catch (const Error&) {
      continue;
    }
    std::string text = cli::print_polynomial(f);
    ExplodedPolynomial g = cli::parse_polynomial(text, m);
    ASSERT_EQ(f, g) << text;
    ASSERT_EQ(cli::print_polynomial(g), text);
    ++checked;
  }
}

TEST(Parser, Errors) {
  EXPECT_THROW(cli::parse_polynomial("z1 +"), cli::SyntaxError);
  EXPECT_THROW(cli::parse_polynomial("z0"), Error);
  EXPECT_THROW(cli::parse_polynomial("2 z1 z"), cli::SyntaxError);
  try {
    cli::parse_polynomial("z1 + t^1 z1");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateExponentConflict);
  }
}
