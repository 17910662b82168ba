#include "sgbot/ingest/json_util.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sgbot/core/error.hpp"

namespace sgbot::json_util {
namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kSchemaError, path + ": " + what);
}

}  // namespace

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) schema(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(path, std::string("missing field '") + key + "'");
  return *it;
}

const json* optional_field(const json& obj, const char* key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) schema(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema(path, "number is not finite");
  return d;
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema(path, "expected an integer");
  return v.get<int>();
}

std::string string(const json& v, const std::string& path) {
  if (!v.is_string()) schema(path, "expected a string");
  return v.get<std::string>();
}

bool boolean(const json& v, const std::string& path) {
  if (!v.is_boolean()) schema(path, "expected a boolean");
  return v.get<bool>();
}

Vec3 vec3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) schema(path, "expected an array of 3 numbers");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]"), number(v[2], path + "[2]")};
}

Mat3 mat3_row_major(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 9) schema(path, "expected an array of 9 numbers");
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      m(r, c) = number(v[r * 3 + c], path + "[" + std::to_string(r * 3 + c) + "]");
    }
  }
  return m;
}

PointCloud points(const json& v, const std::string& path) {
  if (!v.is_array()) schema(path, "expected an array of points");
  PointCloud cloud;
  cloud.points.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    cloud.points.push_back(vec3(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return cloud;
}

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json to_json_row_major(const Mat3& m) {
  json out = json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out.push_back(m(r, c));
  }
  return out;
}

json points_to_json(const PointCloud& cloud) {
  json out = json::array();
  for (const Vec3& p : cloud.points) out.push_back(to_json(p));
  return out;
}

json parse_text(const std::string& text, const std::string& source_name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::kParseError, source_name + ":" + std::to_string(line) + ":" +
                                            std::to_string(column) + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(ErrorCode::kFileNotFound, path);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << contents;
}

}  // namespace sgbot::json_util
