#pragma once

#include <json.hpp>

#include <string>

#include "pickrealize/degree_reduction.hpp"
#include "pickrealize/polynomial.hpp"

namespace pickrealize {

using Json = nlohmann::ordered_json;

// Parses text, reporting syntax errors with line and column.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

// {"d", "shape": [rows, cols], "terms": [{"exp", "re", "im"}]}. Parts are
// numbers or "p/q" strings; a 1x1 part may be given as a bare scalar.
template <Coefficient T>
MatrixPolynomial<T> matrix_polynomial_from_json(const Json& j);

// {"numerator", "denominator"}; a bare polynomial means denominator 1.
template <Coefficient T>
RationalMatrixFunction<T> function_from_json(const Json& j);

template <Coefficient T>
Json to_json(const MatrixPolynomial<T>& p);
template <Coefficient T>
Json to_json(const Polynomial<T>& p);
template <Coefficient T>
Json to_json(const RationalMatrixFunction<T>& f);

Json to_json(const ReductionPlan& plan);

Json complex_matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd complex_matrix_from_json(const Json& j, const std::string& where);
Json point_to_json(const Point& z);

}  // namespace pickrealize
