#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "kloos/cli.hpp"
#include "kloos/json_io.hpp"
#include "kloos/verify.hpp"

using namespace kloos;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("map JSON") {
  const Field f(5);
  std::mt19937_64 rng(1);
  const LinMap l = LinMap::random(5, rng);
  const Json j = to_json(f, l);
  CHECK(j["n"] == 5);
  CHECK(linmap_from_json(f, j) == l);
  Json rows_only = to_json(l);
  CHECK(rows_only["linearized"].is_null());
  CHECK(linmap_from_json(f, rows_only) == l);
  Json lin_only = j;
  lin_only.erase("matrix_rows");
  CHECK(linmap_from_json(f, lin_only) == l);
  Json bad = j;
  bad["linearized"][0] = to_hex(l.linearized(f)[0] ^ 1);
  CHECK_THROWS_AS(linmap_from_json(f, bad), std::invalid_argument);
  CHECK_THROWS_AS(linmap_from_json(f, Json::parse(R"({"n":5})")), std::invalid_argument);
  CHECK_THROWS_AS(linmap_from_json(f, Json::parse(R"({"n":4,"matrix_rows":["1","2","4","8"]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      linmap_from_json(f, Json::parse(R"({"matrix_rows":["1","2","4","8","0x40"]})")),
      std::invalid_argument);
}

TEST_CASE("spectrum command") {
  const Result r = run_cli({"spectrum", "--n", "5", "--what", "kloosterman"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 33);
  CHECK(ls[0] == "elem_hex,value");
  CHECK(ls[1] == "0x0,0");
  const Result w = run_cli({"spectrum", "--n", "5", "--what", "walsh", "--a", "1", "--format", "json"});
  CHECK(w.code == 0);
  const Json j = Json::parse(w.out);
  CHECK(j["values"].size() == 32);
  CHECK(j.contains("paper_anchor"));
}

TEST_CASE("zeros and qform commands") {
  const Json z = Json::parse(run_cli({"zeros", "--n", "10"}).out);
  CHECK(z["count"] == 60);
  CHECK(Json::parse(run_cli({"zeros", "--n", "5", "--include-zero"}).out)["count"] == 6);
  const Result q = run_cli({"qform", "--n", "12"});
  CHECK(q.code == 0);
  const Json j = Json::parse(q.out);
  CHECK(j["dim_H"] == 11);
  CHECK(j["radical_dim"] == 1);
  CHECK(j["type"] == "hyperbolic");
  CHECK(j["zeros"] == j["expected_zeros"]);
  CHECK(j["max_isotropic_dim"] == 6);
}

TEST_CASE("table1 right") {
  const Result r = run_cli({"table1", "--side", "right", "--from", "5", "--to", "14"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 11);
  const int want[] = {1, 2, 3, 1, 1, 2, 2, 2, 1, 3};
  for (int n = 5; n <= 14; ++n) {
    std::istringstream row(ls[n - 4]);
    std::string a, b;
    std::getline(row, a, ',');
    std::getline(row, b, ',');
    CHECK(std::stoi(a) == n);
    CHECK(std::stoi(b) == want[n - 5]);
  }
}

TEST_CASE("verify command and determinism") {
  const Result a = run_cli({"verify", "--theorem", "faruk", "--from", "4", "--to", "16"});
  CHECK(a.code == 0);
  const Result b = run_cli({"verify", "--theorem", "faruk", "--from", "4", "--to", "16"});
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out)["paper_anchor"].is_string());
  CHECK(run_cli({"verify", "--theorem", "radical", "--n", "8"}).code == 0);
  CHECK(run_cli({"verify", "--theorem", "nope"}).code == 2);
  CHECK(run_cli({"verify", "--theorem", "faruk", "--from", "2", "--to", "6"}).code == 2);
  const Result c1 = run_cli({"verify", "--theorem", "charpin", "--n", "6", "--seed", "3"});
  const Result c2 = run_cli({"verify", "--theorem", "charpin", "--n", "6", "--seed", "3"});
  CHECK(c1.out == c2.out);
}

TEST_CASE("permcheck command") {
  const std::string id = R"({"n":5,"matrix_rows":["0x1","0x2","0x4","0x8","0x10"],"linearized":null})";
  const std::string zero = R"({"n":5,"linearized":["0","0","0","0","0"]})";
  const Result r = run_cli({"permcheck", "--n", "5", "--l1", id, "--l2", id});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["is_perm"] == false);
  CHECK(j["agree"] == true);
  CHECK(j["direct"]["witness"]["kind"] == "collision");
  CHECK(run_cli({"permcheck", "--n", "5", "--l1", id, "--l2", zero}).code == 0);
  CHECK(run_cli({"permcheck", "--n", "5", "--l1", "{oops", "--l2", id}).code == 2);
  CHECK(run_cli({"permcheck", "--n", "5", "--l1", "/nonexistent.json", "--l2", id}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"spectrum", "--n", "1"}).code == 2);
  CHECK(run_cli({"spectrum", "--n", "40"}).code == 2);
  CHECK(run_cli({"spectrum", "--n", "29"}).code == 2);
  CHECK(run_cli({"spectrum", "--n", "4", "--poly", "0x15"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("polynomial overrides") {
  CHECK(resolve_poly(5) == 0x25);
  CHECK(resolve_poly(5, 0x3b) == 0x3b);
  const std::string path = "poly_table_test.txt";
  {
    std::ofstream t(path);
    t << "# n poly\n5 0x2f\n";
  }
  setenv(kPolyTableEnv, path.c_str(), 1);
  CHECK(resolve_poly(5) == 0x2f);
  CHECK(resolve_poly(6) == 0x43);
  const Json z = Json::parse(run_cli({"zeros", "--n", "5"}).out);
  CHECK(z["poly"] == "0x2f");
  CHECK(z["count"] == 5);
  unsetenv(kPolyTableEnv);
  std::remove(path.c_str());
}
