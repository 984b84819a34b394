#include "gsk/matrix_io.hpp"

#include <fstream>

#include "gsk/errors.hpp"

namespace gsk {

json matrix_to_json(const Mat& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < M.cols(); ++k) row.push_back(M(i, k));
    rows.push_back(std::move(row));
  }
  return json{{"m", M.rows() / 2}, {"rows", std::move(rows)}};
}

Mat matrix_from_json(const json& j) {
  const json& rows = j.is_object() ? j.at("rows") : j;
  if (!rows.is_array() || rows.empty()) throw DimensionError("matrix JSON: rows must be a non-empty array");
  const std::size_t n = rows.size(), c = rows[0].size();
  Mat M(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != c) throw DimensionError("matrix JSON: ragged rows");
    for (std::size_t k = 0; k < c; ++k) M(i, k) = rows[i][k].get<double>();
  }
  if (j.is_object() && j.contains("m") && 2 * j.at("m").get<long>() != static_cast<long>(n))
    throw DimensionError("matrix JSON: m does not match row count");
  return M;
}

json complex_matrix_to_json(const CMat& M) {
  return json{{"re", matrix_to_json(M.real())["rows"]}, {"im", matrix_to_json(M.imag())["rows"]}};
}

CMat complex_matrix_from_json(const json& j) {
  if (j.is_array()) return matrix_from_json(j).cast<cplx>();
  const Mat re = matrix_from_json(j.at("re"));
  Mat im = Mat::Zero(re.rows(), re.cols());
  if (j.contains("im")) im = matrix_from_json(j.at("im"));
  if (im.rows() != re.rows() || im.cols() != re.cols()) throw DimensionError("complex matrix JSON: shape mismatch");
  CMat M(re.rows(), re.cols());
  M.real() = re;
  M.imag() = im;
  return M;
}

json vector_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << '\n';
}

}  // namespace gsk
