#pragma once

// Small helpers shared by every JSON codec. Failures throw SchemaError with
// the JSON path of the offending field.

#include <string>

#include <json.hpp>

#include "sgbot/core/geometry.hpp"

namespace sgbot::json_util {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& path);
const json* optional_field(const json& obj, const char* key);
double number(const json& v, const std::string& path);
int integer(const json& v, const std::string& path);
std::string string(const json& v, const std::string& path);
bool boolean(const json& v, const std::string& path);
Vec3 vec3(const json& v, const std::string& path);
Mat3 mat3_row_major(const json& v, const std::string& path);
PointCloud points(const json& v, const std::string& path);

json to_json(const Vec3& v);
json to_json_row_major(const Mat3& m);
json points_to_json(const PointCloud& cloud);

/// Parses text; syntax errors become ParseError with line and column.
json parse_text(const std::string& text, const std::string& source_name);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace sgbot::json_util
