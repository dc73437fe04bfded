#include "ucqc/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ucqc;
using namespace ucqc::cli;

namespace {

struct Run
{
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> const &args)
{
  std::ostringstream out;
  std::ostringstream err;
  int const status = cli_main(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(std::string const &text)
{
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    v.push_back(line);
  }
  return v;
}

std::string slurp(std::filesystem::path const &p)
{
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_file(std::string const &name)
{
  return std::filesystem::temp_directory_path() / ("ucqc_test_" + name);
}

} // namespace

TEST_CASE("format_real")
{
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(2.0 / 3.0) == "0.666666666667");
}

TEST_CASE("bipartite-sweep CSV")
{
  auto const r = run({"bipartite-sweep", "--grid", "5", "--family", "psi-minus"});
  REQUIRE(r.status == 0);
  auto const rows = lines(r.out);
  REQUIRE(rows.size() == 26);
  CHECK(rows[0] == "alpha,c0,c12,c13,c14,c23,c24,c34");
  CHECK(rows[1].rfind("0,0,", 0) == 0);
  CHECK(r.out.back() == '\n');

  // alpha = 0, c0 = 0.5: the input Bell pair is untouched.
  CHECK(rows[3].rfind("0,0.5,1,0,0,0,0,1", 0) == 0);
}

TEST_CASE("full-size sweep writes grid x grid rows")
{
  auto const path = temp_file("fig2.csv");
  auto const r = run({"bipartite-sweep", "--grid", "101", "--family", "phi-plus", "--out", path.string()});
  REQUIRE(r.status == 0);
  CHECK(lines(slurp(path)).size() == 101 * 101 + 1);
  std::filesystem::remove(path);
}

TEST_CASE("ghz CSV and JSON")
{
  auto const r = run({"ghz", "--alpha", "1"});
  REQUIRE(r.status == 0);
  auto const rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "alpha,curve_a,curve_b,curve_c,curve_d,curve_e,p_first_plus,p_second_plus");
  CHECK(rows[1] == "1,1,0,1,0,0,0.5,0.5");

  auto const j = run({"ghz", "--grid", "3", "--format", "json"});
  REQUIRE(j.status == 0);
  auto const doc = nlohmann::json::parse(j.out);
  REQUIRE(doc["reports"].size() == 3);
  CHECK(doc["reports"][2]["curve_c"].get<double>() == doctest::Approx(1.0));
  CHECK(doc["reports"][1]["ckw_after_second"].size() == 5);
}

TEST_CASE("ckw CSV")
{
  auto const r = run({"ckw", "--grid", "2"});
  REQUIRE(r.status == 0);
  auto const rows = lines(r.out);
  CHECK(rows[0] == "alpha,stage,qubit,tau,sum_c2,s");
  CHECK(rows.size() == 1 + 2 * 2 * 5);
  CHECK(rows[1].rfind("0,first,1,", 0) == 0);
}

TEST_CASE("verify")
{
  auto const ok = run({"verify", "--samples", "20", "--seed", "7", "--tol", "1e-10"});
  CHECK(ok.status == exit_code::ok);
  CHECK(ok.out.rfind("max deviation: ", 0) == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);

  // A tolerance below the rounding floor reports a semantic failure.
  auto const strict = run({"verify", "--samples", "3", "--seed", "7", "--tol", "1e-30"});
  CHECK(strict.status == exit_code::verification_failed);
  CHECK(strict.out.find("FAIL") != std::string::npos);
}

TEST_CASE("usage errors exit with 1")
{
  CHECK(run({"ghz", "--alpha", "1.5"}).status == exit_code::usage);
  CHECK(run({"ghz", "--alpha", "1.5"}).err.find("range error") != std::string::npos);
  CHECK(run({"bipartite-sweep", "--grid", "1"}).status == exit_code::usage);
  CHECK(run({"bipartite-sweep", "--family", "phi"}).status == exit_code::usage);
  CHECK(run({"verify", "--tol", "0"}).status == exit_code::usage);
  CHECK(run({"verify", "--samples", "0"}).status == exit_code::usage);
  CHECK(run({"frobnicate"}).status == exit_code::usage);
  CHECK(run({}).status == exit_code::usage);
  auto const bad_flag = run({"ghz", "--bogus"});
  CHECK(bad_flag.status == exit_code::usage);
  CHECK(bad_flag.err.find("Usage") != std::string::npos);

  auto const unwritable = run({"ghz", "--alpha", "0.5", "--out", "/nonexistent-dir/x.csv"});
  CHECK(unwritable.status == exit_code::usage);
  CHECK(unwritable.err.find("/nonexistent-dir/x.csv") != std::string::npos);
}

TEST_CASE("identical flags give byte-identical files")
{
  for (std::vector<std::string> base : {std::vector<std::string>{"bipartite-sweep", "--grid", "7"},
                                        {"ghz", "--grid", "5", "--format", "json"},
                                        {"ckw", "--grid", "4"},
                                        {"verify", "--samples", "4", "--seed", "99", "--format", "json"}}) {
    auto const a = temp_file("repro_a");
    auto const b = temp_file("repro_b");
    auto args_a = base;
    args_a.insert(args_a.end(), {"--out", a.string()});
    auto args_b = base;
    args_b.insert(args_b.end(), {"--out", b.string()});
    REQUIRE(run(args_a).status == 0);
    REQUIRE(run(args_b).status == 0);
    std::string const sa = slurp(a);
    CHECK_FALSE(sa.empty());
    CHECK(sa == slurp(b));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
  }
}

TEST_CASE("write_table JSON mirrors SweepResult")
{
  auto const grid = unit_grid(3);
  auto const sweep = bipartite_sweep(grid, grid, BellFamily::PhiMinus);
  std::ostringstream os;
  write_table(sweep, Format::Json, os);
  auto const doc = nlohmann::json::parse(os.str());
  CHECK(doc["family"] == "phi-minus");
  CHECK(doc["alpha_grid"].size() == 3);
  CHECK(doc["concurrence_surfaces"].size() == 6);
  CHECK(doc["concurrence_surfaces"]["12"][0][1].get<double>() == doctest::Approx(1.0));
}
