#include "hstiefel/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace hstiefel {

namespace {

using nlohmann::ordered_json;

void dump_value(const ordered_json& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::detail::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    case nlohmann::detail::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        dump_value(item, out);
      }
      out += ']';
      break;
    }
    case nlohmann::detail::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += ordered_json(it.key()).dump();
        out += ':';
        dump_value(it.value(), out);
      }
      out += '}';
      break;
    }
    default:
      // Integers, booleans, strings, null: the stock renderer is exact.
      out += j.dump();
      break;
  }
}

double number_at(const nlohmann::json& j) {
  if (!j.is_number())
    throw std::invalid_argument("matrix JSON: component is not a number");
  return j.get<double>();
}

}  // namespace

nlohmann::ordered_json matrix_to_json(const QuaternionMatrix& a) {
  ordered_json entries = ordered_json::array();
  for (int i = 0; i < a.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < a.cols(); ++j) {
      const Quaternion& q = a(i, j);
      row.push_back(ordered_json::array({q.w, q.x, q.y, q.z}));
    }
    entries.push_back(std::move(row));
  }
  ordered_json out;
  out["rows"] = a.rows();
  out["cols"] = a.cols();
  out["entries"] = std::move(entries);
  return out;
}

nlohmann::ordered_json point_to_json(const StiefelPoint& x) {
  ordered_json out;
  out["n"] = x.n();
  out["k"] = x.k();
  ordered_json mat = matrix_to_json(x.mat());
  out["rows"] = mat["rows"];
  out["cols"] = mat["cols"];
  out["entries"] = std::move(mat["entries"]);
  return out;
}

QuaternionMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries"))
    throw std::invalid_argument(
        "matrix JSON: need an object with rows, cols, entries");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw std::invalid_argument("matrix JSON: rows and cols must be integers");
  const int rows = j["rows"].get<int>();
  const int cols = j["cols"].get<int>();
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("matrix JSON: dimensions must be positive");
  const auto& entries = j["entries"];
  if (!entries.is_array() || static_cast<int>(entries.size()) != rows)
    throw std::invalid_argument("matrix JSON: need one entry row per row");

  QuaternionMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& row = entries[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw std::invalid_argument("matrix JSON: row " + std::to_string(i) +
                                  " has the wrong length");
    for (int c = 0; c < cols; ++c) {
      const auto& q = row[c];
      if (!q.is_array() || q.size() != 4)
        throw std::invalid_argument(
            "matrix JSON: each entry must be [w,x,y,z]");
      out(i, c) = Quaternion(number_at(q[0]), number_at(q[1]),
                             number_at(q[2]), number_at(q[3]));
    }
  }
  return out;
}

std::string dump_json(const nlohmann::ordered_json& j) {
  std::string out;
  dump_value(j, out);
  return out;
}

std::string format_double(double v) {
  if (!std::isfinite(v))
    throw std::invalid_argument("cannot serialize a non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace hstiefel
