#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "rotlaw/system.hpp"

namespace rotlaw {

/// Schema-checked readers for the JSON configuration. Every failure is a
/// LabError(InvalidInput), except rational angles (RationalAngle).
AngleSpec parse_angle(const nlohmann::json& j);
CirclePoint parse_point(const nlohmann::json& j);
LambdaSpec parse_lambda(const nlohmann::json& j);
PiecewiseConstant<Rational> parse_piecewise(const nlohmann::json& j, const char* what);
SystemConfig parse_system_config(const nlohmann::json& j);

/// Reads and parses a file; InvalidInput on I/O or JSON syntax errors.
nlohmann::json read_json_file(const std::string& path);

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace rotlaw
