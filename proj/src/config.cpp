#include "rotlaw/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rotlaw/errors.hpp"

namespace rotlaw {
namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& msg) { throw LabError(ErrorKind::InvalidInput, msg); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) schema(where + ": missing \"" + key + "\"");
  return j.at(key);
}

Integer parse_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    const Rational q = parse_rational(j.get<std::string>());
    if (q.get_den() != 1) schema(where + ": expected an integer, got " + j.get<std::string>());
    return q.get_num();
  }
  schema(where + ": expected an integer");
}

Rational parse_exact(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  schema(where + ": expected a rational string \"p/q\"");
}

QuadraticForm parse_quadratic(const json& j, const std::string& where) {
  if (!j.is_object()) schema(where + ": expected {u, v, w, d}");
  return {parse_integer(field(j, "u", where), where + ".u"), parse_integer(field(j, "v", where), where + ".v"),
          parse_integer(field(j, "w", where), where + ".w"), parse_integer(field(j, "d", where), where + ".d")};
}

std::vector<Integer> parse_integer_list(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where + ": expected an array of integers");
  std::vector<Integer> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_integer(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

AngleSpec parse_angle(const json& j) {
  if (!j.is_object() || j.size() != 1) schema("angle: expected exactly one of \"quadratic\", \"cf\"");
  if (j.contains("quadratic")) return {parse_quadratic(j.at("quadratic"), "angle.quadratic")};
  if (j.contains("cf")) {
    const json& cf = j.at("cf");
    QuotientStream s;
    s.prefix = parse_integer_list(field(cf, "prefix", "angle.cf"), "angle.cf.prefix");
    if (cf.contains("period")) s.period = parse_integer_list(cf.at("period"), "angle.cf.period");
    return {std::move(s)};
  }
  if (j.contains("rational")) {
    const Rational q = parse_exact(j.at("rational"), "angle.rational");
    throw LabError(ErrorKind::RationalAngle, "angle " + q.get_str() + " is rational");
  }
  schema("angle: expected \"quadratic\" or \"cf\"");
}

CirclePoint parse_point(const json& j) {
  if (j.is_string() || j.is_number_integer()) return CirclePoint(parse_exact(j, "point"));
  if (!j.is_object()) schema("point: expected \"p/q\" or {\"rat\", \"rot\"}");
  for (const auto& [key, value] : j.items()) {
    if (key != "rat" && key != "rot") schema("point: unknown key \"" + key + "\"");
  }
  CirclePoint p;
  if (j.contains("rat")) p.rat = parse_exact(j.at("rat"), "point.rat");
  if (j.contains("rot")) p.rot = parse_exact(j.at("rot"), "point.rot");
  return p;
}

LambdaSpec parse_lambda(const json& j) {
  if (j.is_string() || j.is_number_integer()) return {parse_exact(j, "lambda")};
  if (j.is_object() && j.contains("quadratic")) return {parse_quadratic(j.at("quadratic"), "lambda.quadratic")};
  if (j.is_object() && j.contains("minpoly")) {
    LambdaSpec::MinPoly mp;
    const json& c = j.at("minpoly");
    if (!c.is_array() || c.size() < 2) schema("lambda.minpoly: expected coefficients c0..cd");
    for (std::size_t i = 0; i < c.size(); ++i) mp.coeffs.push_back(parse_exact(c[i], "lambda.minpoly"));
    const json& br = field(j, "bracket", "lambda");
    if (!br.is_array() || br.size() != 2) schema("lambda.bracket: expected [lo, hi]");
    mp.bracket = RationalInterval(parse_exact(br[0], "lambda.bracket"), parse_exact(br[1], "lambda.bracket"));
    return {std::move(mp)};
  }
  schema("lambda: expected \"p/q\", {\"quadratic\"} or {\"minpoly\", \"bracket\"}");
}

PiecewiseConstant<Rational> parse_piecewise(const json& j, const char* what) {
  const std::string where(what);
  const json& bps = field(j, "breakpoints", where);
  const json& vals = field(j, "values", where);
  if (!bps.is_array() || !vals.is_array()) schema(where + ": breakpoints and values must be arrays");
  if (bps.size() != vals.size()) schema(where + ": values list length must equal breakpoints length");
  if (bps.empty()) throw LabError(ErrorKind::EmptyPartition, where + ": no breakpoints");
  PiecewiseConstant<Rational> out;
  for (const auto& b : bps) out.breakpoints.push_back(parse_point(b));
  for (std::size_t i = 0; i < vals.size(); ++i) out.values.push_back(parse_exact(vals[i], where + ".values"));
  return out;
}

SystemConfig parse_system_config(const json& j) {
  if (!j.is_object()) schema("config: expected an object");
  SystemConfig cfg{parse_angle(field(j, "angle", "config")), parse_piecewise(field(j, "b", "config"), "b"),
                   PiecewiseConstant<Rational>{}};
  const json& r = field(j, "r", "config");
  if (r.is_object() && r.contains("constant")) {
    cfg.r = parse_lambda(r.at("constant"));
  } else {
    cfg.r = parse_piecewise(r, "r");
  }
  return cfg;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    schema(path + ": " + e.what());
  }
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rotlaw
