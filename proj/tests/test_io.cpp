#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <random>

#include "oracles.hpp"
#include "schurloc/commands.hpp"
#include "schurloc/error.hpp"
#include "schurloc/io.hpp"

using namespace schurloc;
using nlohmann::json;

namespace {

Errc parse_errc(std::string_view text) {
  try {
    parse_matrix_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::invalid_argument;  // sentinel: parsing succeeded
}

}  // namespace

TEST_CASE("matrix schema") {
  const BlockMatrix m = parse_matrix_json(R"({"n": 2, "data": [[[1, 0], [0, 2]], [[3, -1], [4, 0.5]]]})");
  CHECK(m.base()(0, 1) == Complex(0, 2));
  CHECK(m.base()(1, 0) == Complex(3, -1));
  CHECK(m.partition() == std::vector<std::size_t>{1, 1});
  CHECK(m.is_scalar());

  const BlockMatrix p = parse_matrix_json(
      R"({"n": 3, "data": [[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]], "partition": [1, 2]})");
  CHECK(p.partition() == std::vector<std::size_t>{1, 2});
  CHECK_FALSE(p.is_scalar());

  for (const char* bad : {
           "not json",
           "[]",
           R"({"data": [[[1,0]]]})",
           R"({"n": 1})",
           R"({"n": 0, "data": []})",
           R"({"n": 1.5, "data": [[[1,0]]]})",
           R"({"n": 2, "data": [[[1,0]]]})",
           R"({"n": 1, "data": [[[1,0],[2,0]]]})",
           R"({"n": 1, "data": [[[1]]]})",
           R"({"n": 1, "data": [[["1",0]]]})",
           R"({"n": 1, "data": [[1]]})",
           R"({"n": 2, "data": [[[1,0],[0,0]],[[0,0],[1,0]]], "partition": [1]})",
           R"({"n": 2, "data": [[[1,0],[0,0]],[[0,0],[1,0]]], "partition": []})",
           R"({"n": 2, "data": [[[1,0],[0,0]],[[0,0],[1,0]]], "partition": [0, 2]})",
           R"({"n": 2, "data": [[[1,0],[0,0]],[[0,0],[1,0]]], "partition": "2"})",
       }) {
    CAPTURE(bad);
    CHECK(parse_errc(bad) == Errc::parse_error);
  }
}

TEST_CASE("matrix round trip is exact") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 9;
    const BlockMatrix m(oracle::random_matrix(rng, n, n), n > 1 ? oracle::random_partition(rng, n)
                                                                : std::vector<std::size_t>{1});
    const std::string text = matrix_to_json(m);
    const BlockMatrix back = parse_matrix_json(text);
    CHECK(back.partition() == m.partition());
    CHECK(oracle::max_abs_diff(back.base(), m.base()) == 0.0);
    CHECK(matrix_to_json(back) == text);
  }
}

TEST_CASE("format_double") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  CHECK(format_double(INFINITY) == "null");
  CHECK(format_double(NAN) == "null");
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("JsonWriter") {
  JsonWriter w;
  w.begin_object()
      .key("a").value(1.5)
      .key("b").begin_array().value(std::size_t{1}).value(true).null().value("x\"y").end_array()
      .key("c").begin_object().end_object()
      .key("d").value(Complex(1, -2))
      .key("e").raw(R"({"k":[]})")
      .key("f").value(-3LL)
      .end_object();
  CHECK(w.str() == R"({"a":1.5,"b":[1,true,null,"x\"y"],"c":{},"d":[1,-2],"e":{"k":[]},"f":-3})");
  CHECK_NOTHROW((void)json::parse(w.str()));
}

TEST_CASE("interval and sidecar JSON") {
  const IntervalUnion u{{{-1, 0.5}, {2, 2}}};
  CHECK(intervals_to_json(u) == R"({"intervals":[[-1,0.5],[2,2]]})");
  CHECK(intervals_to_json(IntervalUnion{}) == R"({"intervals":[]})");
  const GridMask m(Window{-1, 3, -2, 2, 16});
  CHECK(mask_sidecar_json(m) ==
        R"({"window":{"re_min":-1,"re_max":3,"im_min":-2,"im_max":2},"resolution":16})");
}

TEST_CASE("inclusion report JSON") {
  const BlockMatrix m(Matrix{{2.3, -1.6, -0.8, 1.0}, {-1.6, 3.3, -0.7, 0.8}, {-0.8, -0.7, 1.1, -0.3}, {1.0, 0.8, -0.3, 8.1}});
  const InclusionReport r = verify_inclusion(m);
  const json doc = json::parse(inclusion_report_to_json(r));
  CHECK(doc["eigenvalues"].size() == 4);
  for (const char* k : {"schur", "cassini", "modified_schur", "gershgorin"}) {
    CAPTURE(k);
    REQUIRE(doc["families"].contains(k));
    CHECK(doc["families"][k].size() == 4);
    for (const json& b : doc["families"][k]) CHECK(b.get<bool>());
  }
  CHECK(doc["min_margin"].get<double>() > 0.0);
  CHECK(inclusion_report_to_json(verify_inclusion(m)) == inclusion_report_to_json(r));

  // Every eigenvalue of the identity is its own diagonal spectrum, so no margin is finite.
  const InclusionReport id = verify_inclusion(BlockMatrix(Matrix::identity(3)));
  CHECK(json::parse(inclusion_report_to_json(id))["min_margin"].is_null());
}

TEST_CASE("command reports") {
  const BlockMatrix ones(Matrix{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  RunOptions opt;
  opt.resolution = 64;

  const LocateResult loc = run_locate(ones, opt);
  const json doc = json::parse(loc.report_json);
  CHECK(doc["schema"] == kReportSchema);
  CHECK(doc["command"] == "locate");
  CHECK(doc["level"] == "scalar");
  CHECK(doc["methods"].size() == 4);
  CHECK(doc["subset"].size() == 12);
  CHECK(loc.masks.size() == 4);
  CHECK(run_locate(ones, opt).report_json == loc.report_json);

  std::map<std::string, double> area;
  std::map<std::string, std::size_t> inequalities;
  for (const json& e : doc["methods"]) {
    area[e["method"]] = e["area"].get<double>();
    inequalities[e["method"]] = e["inequalities"].get<std::size_t>();
  }
  CHECK(area["schur"] < area["cassini"]);
  CHECK(area["cassini"] <= area["gershgorin"]);
  // n(n-1) Schur inequalities against n(n-1)/2 Cassini ones.
  CHECK(inequalities["schur"] == 6);
  CHECK(inequalities["cassini"] == 3);
  CHECK(inequalities["gershgorin"] == 3);

  const IntervalsResult iv = run_intervals(ones, opt);
  const json idoc = json::parse(iv.report_json);
  const json& schur = idoc["methods"]["schur"];
  REQUIRE(schur["intervals"].size() == 1);
  CHECK(std::abs(schur["intervals"][0][0].get<double>()) <= 1e-6);
  CHECK(std::abs(schur["intervals"][0][1].get<double>() - 3.0) <= 1e-6);
  for (const json& k : schur["eigenvalue_interval"]) CHECK(k.get<int>() == 0);

  const VerifyResult v = run_verify(ones, opt);
  CHECK(v.all_member);
  CHECK(json::parse(v.report_json)["all_member"].get<bool>());

  RunOptions bad = opt;
  bad.methods.clear();
  CHECK_THROWS_AS(run_locate(ones, bad), Error);
  bad = opt;
  bad.tol = 0.0;
  CHECK_THROWS_AS(run_intervals(ones, bad), Error);
  bad = opt;
  bad.norm = NormMode::infinity;
  CHECK_THROWS_AS(run_verify(ones, bad), Error);
  CHECK_THROWS_AS(run_locate(BlockMatrix(Matrix{{1, 2}, {3, 4}}, {2}), opt), Error);
  CHECK_THROWS_AS(run_intervals(BlockMatrix(Matrix{{1, 2}, {3, 4}}), opt), Error);
}
