#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "rotlaw/config.hpp"
#include "rotlaw/errors.hpp"
#include "test_systems.hpp"

using namespace rotlaw;
using nlohmann::json;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const LabError& e) {
    return e.kind();
  }
  FAIL("expected a LabError");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("angle forms") {
  const AngleSpec q = parse_angle(json::parse(R"({"quadratic":{"u":-1,"v":1,"w":2,"d":"5"}})"));
  const auto& form = std::get<QuadraticForm>(q.form);
  CHECK(form.u == -1);
  CHECK(form.d == 5);

  const AngleSpec s = parse_angle(json::parse(R"({"cf":{"prefix":[1,"1000"],"period":[1]}})"));
  const auto& stream = std::get<QuotientStream>(s.form);
  CHECK(stream.prefix == std::vector<Integer>{1, 1000});
  CHECK(stream.period == std::vector<Integer>{1});

  CHECK(kind_of([] { parse_angle(json::parse(R"({"rational":"1/3"})")); }) == ErrorKind::RationalAngle);
  CHECK(kind_of([] { parse_angle(json::parse(R"({"quadratic":{"u":1,"v":1,"w":2}})")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_angle(json::parse(R"({"quadratic":{"u":1,"v":1,"w":2,"d":"1/2"}})")); }) ==
        ErrorKind::InvalidInput);
  CHECK(kind_of([] {
          parse_angle(json::parse(R"({"cf":{"prefix":[1]},"quadratic":{"u":1,"v":1,"w":2,"d":5}})"));
        }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_angle(json::parse(R"({"golden":true})")); }) == ErrorKind::InvalidInput);
}

TEST_CASE("points") {
  CHECK(parse_point(json("1/2")).rat == Rational(1, 2));
  CHECK(parse_point(json(3)).rat == 3);
  const CirclePoint p = parse_point(json::parse(R"({"rat":"1/2","rot":-2})"));
  CHECK(p.rat == Rational(1, 2));
  CHECK(p.rot == -2);
  CHECK(parse_point(json::parse(R"({"rot":"-1"})")).rat == 0);
  CHECK(kind_of([] { parse_point(json::parse(R"({"rat":"1/2","alpha":1})")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_point(json("1/0")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_point(json(0.5)); }) == ErrorKind::InvalidInput);
}

TEST_CASE("lambda forms") {
  CHECK(std::get<Rational>(parse_lambda(json("11/20")).form) == Rational(11, 20));
  CHECK(std::holds_alternative<QuadraticForm>(parse_lambda(json::parse(R"({"quadratic":{"u":-1,"v":1,"w":2,"d":5}})")).form));
  const LambdaSpec mp = parse_lambda(json::parse(R"({"minpoly":["-1","-1","0","1"],"bracket":["13/10","7/5"]})"));
  const auto& poly = std::get<LambdaSpec::MinPoly>(mp.form);
  CHECK(poly.coeffs.size() == 4);
  CHECK(poly.bracket.lo == Rational(13, 10));
  CHECK(kind_of([] { parse_lambda(json::parse(R"({"minpoly":[1,1]})")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_lambda(json(0.5)); }) == ErrorKind::InvalidInput);
}

TEST_CASE("piecewise functions") {
  const auto f = parse_piecewise(json::parse(R"({"breakpoints":["0","1/2"],"values":[1,"0"]})"), "b");
  CHECK(f.breakpoints.size() == 2);
  CHECK(f.values == std::vector<Rational>{1, 0});
  CHECK(kind_of([] { parse_piecewise(json::parse(R"({"breakpoints":["0"],"values":[1,2]})"), "b"); }) ==
        ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_piecewise(json::parse(R"({"breakpoints":[],"values":[]})"), "b"); }) ==
        ErrorKind::EmptyPartition);
  CHECK(kind_of([] { parse_piecewise(json::parse(R"({"breakpoints":"0","values":[1]})"), "b"); }) ==
        ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_piecewise(json::parse(R"({"values":[1]})"), "b"); }) == ErrorKind::InvalidInput);
}

TEST_CASE("reference configurations parse and build") {
  namespace fs = std::filesystem;
  const fs::path dir = fixtures::config_dir();
  for (const char* name : {"system_a.json", "system_b.json", "system_w.json", "system_c.json", "control_055.json"}) {
    CAPTURE(name);
    const SystemConfig cfg = parse_system_config(read_json_file((dir / name).string()));
    CHECK_NOTHROW(build_system(cfg));
  }

  const RotationSystem a = build_system(parse_system_config(read_json_file((dir / "system_a.json").string())));
  const RotationSystem ref = build_system(fixtures::system_a());
  REQUIRE(a.N() == ref.N());
  for (std::size_t i = 0; i < a.N(); ++i) {
    CHECK(same_point(a.breakpoints().point(i), ref.breakpoints().point(i)));
    CHECK(a.b(i) == ref.b(i));
  }
  CHECK(*a.lambda() == *ref.lambda());

  const RotationSystem b = build_system(parse_system_config(read_json_file((dir / "system_b.json").string())));
  CHECK(b.constant_ratio());
  CHECK(b.r_sup_upper() == Rational(1, 2));
}

TEST_CASE("malformed configurations") {
  CHECK(kind_of([] { parse_system_config(json::parse(R"([1,2])")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] {
          parse_system_config(json::parse(
              R"({"angle":{"quadratic":{"u":-1,"v":1,"w":1,"d":2}},"b":{"breakpoints":["0"],"values":["1/0"]},"r":{"constant":"1/2"}})"));
        }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] {
          parse_system_config(json::parse(R"({"angle":{"rational":"1/2"},"b":{"breakpoints":["0"],"values":[1]},"r":{"constant":"1/2"}})"));
        }) == ErrorKind::RationalAngle);
  CHECK(kind_of([] { read_json_file("/nonexistent/config.json"); }) == ErrorKind::InvalidInput);

  const std::string path = (std::filesystem::temp_directory_path() / "rotlaw_bad_config.json").string();
  std::ofstream(path) << "{ not json";
  CHECK(kind_of([&] { read_json_file(path); }) == ErrorKind::InvalidInput);
  std::filesystem::remove(path);
}

TEST_CASE("FNV-1a hashes") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
  CHECK(fnv1a_hex("foobar").size() == 16);
}
