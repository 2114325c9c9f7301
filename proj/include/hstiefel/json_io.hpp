#pragma once

#include <string>

#include <json.hpp>

#include "hstiefel/stiefel.hpp"

namespace hstiefel {

/// `{"rows":, "cols":, "entries": [[[w,x,y,z] per column] per row]}`.
nlohmann::ordered_json matrix_to_json(const QuaternionMatrix& a);

/// Matrix format preceded by `"n"` and `"k"`.
nlohmann::ordered_json point_to_json(const StiefelPoint& x);

/// Parses the matrix format; throws std::invalid_argument on structural
/// problems (wrong entry counts, non-numeric components).
QuaternionMatrix matrix_from_json(const nlohmann::json& j);

/// Serialization with floats at 17 significant digits (value-preserving
/// for IEEE doubles) and keys in insertion order, so identical data
/// yields identical bytes.
std::string dump_json(const nlohmann::ordered_json& j);

/// Decimal rendering used everywhere a float leaves the library.
std::string format_double(double v);

}  // namespace hstiefel
