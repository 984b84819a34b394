#pragma once

#include "json.hpp"

#include "gsk/config.hpp"

namespace gsk {

using json = nlohmann::json;

// {"m": rows/2, "rows": [[...], ...]} row-major
json matrix_to_json(const Mat& M);
Mat matrix_from_json(const json& j);
json complex_matrix_to_json(const CMat& M);  // {"re": rows, "im": rows}
CMat complex_matrix_from_json(const json& j);
json vector_to_json(const Vec& v);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace gsk
