#include "pickrealize/polynomial_json.hpp"

#include <fstream>
#include <sstream>

namespace pickrealize {

namespace {

// A coefficient part kept as an exact rational and, for JSON floats, the
// original double.
struct Part {
  mpq_class exact;
  double value = 0.0;
};

Part parse_part(const Json& j, const std::string& where) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    Part p;
    p.exact = j.is_number_unsigned() ? mpq_class(std::to_string(j.get<unsigned long long>()))
                                     : mpq_class(std::to_string(j.get<long long>()));
    p.value = p.exact.get_d();
    return p;
  }
  if (j.is_number_float()) {
    double v = j.get<double>();
    return {GaussianRational::from_double(v).real(), v};
  }
  if (j.is_string()) {
    try {
      Part p;
      p.exact = GaussianRational::parse_rational(j.get<std::string>());
      p.value = p.exact.get_d();
      return p;
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  throw InputError(where + ": expected a number or \"p/q\" string");
}

template <Coefficient T>
T make_coefficient(const Part& re, const Part& im) {
  if constexpr (CoefficientTraits<T>::exact) return T(re.exact, im.exact);
  else return T(re.value, im.value);
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing key \"" + key + "\"");
  return *it;
}

std::size_t require_size(const Json& j, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw InputError(where + ": expected a non-negative integer");
  long long v = j.get<long long>();
  if (v < 0) throw InputError(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::vector<std::vector<Part>> parse_part_matrix(const Json& j, std::size_t rows, std::size_t cols,
                                                 const std::string& where) {
  std::vector<std::vector<Part>> out(rows, std::vector<Part>(cols));
  if (!j.is_array()) {
    if (rows != 1 || cols != 1) throw InputError(where + ": expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " array");
    out[0][0] = parse_part(j, where);
    return out;
  }
  if (j.size() != rows) throw InputError(where + ": expected " + std::to_string(rows) + " rows");
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string wi = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != cols) throw InputError(wi + ": expected " + std::to_string(cols) + " columns");
    for (std::size_t k = 0; k < cols; ++k) out[i][k] = parse_part(j[i][k], wi + "[" + std::to_string(k) + "]");
  }
  return out;
}

Json exact_part_json(const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(to_string(q));
}

template <Coefficient T>
Json part_json(const T& c, bool imaginary) {
  if constexpr (CoefficientTraits<T>::exact) return exact_part_json(imaginary ? c.imag() : c.real());
  else return Json(imaginary ? c.imag() : c.real());
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    throw InputError(source + ": malformed JSON at byte " + std::to_string(e.byte) + " (" + msg + ")");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

template <Coefficient T>
MatrixPolynomial<T> matrix_polynomial_from_json(const Json& j) {
  const std::size_t d = require_size(require(j, "d", "polynomial"), "polynomial.d");
  std::size_t rows = 1, cols = 1;
  if (auto it = j.find("shape"); it != j.end()) {
    if (!it->is_array() || it->size() != 2) throw InputError("polynomial.shape: expected [rows, cols]");
    rows = require_size((*it)[0], "polynomial.shape[0]");
    cols = require_size((*it)[1], "polynomial.shape[1]");
  }
  if (rows == 0 || cols == 0) throw InputError("polynomial.shape: sizes must be positive");
  const Json& terms = require(j, "terms", "polynomial");
  if (!terms.is_array()) throw InputError("polynomial.terms: expected an array");
  MatrixPolynomial<T> p(d, rows, cols);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string where = "polynomial.terms[" + std::to_string(t) + "]";
    const Json& term = terms[t];
    const Json& exp = require(term, "exp", where);
    if (!exp.is_array() || exp.size() != d) throw InputError(where + ".exp: expected " + std::to_string(d) + " entries");
    std::vector<int> powers;
    for (std::size_t k = 0; k < d; ++k) {
      if (!exp[k].is_number_integer() || exp[k].get<long long>() < 0)
        throw InputError(where + ".exp[" + std::to_string(k) + "]: expected a non-negative integer");
      powers.push_back(exp[k].get<int>());
    }
    auto re = parse_part_matrix(require(term, "re", where), rows, cols, where + ".re");
    std::vector<std::vector<Part>> im(rows, std::vector<Part>(cols));
    if (auto it = term.find("im"); it != term.end()) im = parse_part_matrix(*it, rows, cols, where + ".im");
    CoeffMatrix<T> c(rows, cols);
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t b = 0; b < cols; ++b) c(a, b) = make_coefficient<T>(re[a][b], im[a][b]);
    p.add_term(Exponent(std::move(powers)), c);
  }
  return p;
}

template <Coefficient T>
RationalMatrixFunction<T> function_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("function: expected an object");
  if (j.contains("numerator")) {
    auto num = matrix_polynomial_from_json<T>(j["numerator"]);
    Polynomial<T> den = Polynomial<T>::constant(num.num_vars(), CoefficientTraits<T>::from_int(1));
    if (auto it = j.find("denominator"); it != j.end()) {
      auto dm = matrix_polynomial_from_json<T>(*it);
      if (dm.rows() != 1 || dm.cols() != 1) throw InputError("function.denominator: must be 1x1");
      den = dm.entry(0, 0);
    }
    if (den.num_vars() != num.num_vars()) throw InputError("function: numerator and denominator differ in d");
    if (!num.is_square()) throw InputError("function.numerator: must be square");
    if (den.is_zero()) throw InputError("function.denominator: identically zero");
    return {std::move(num), std::move(den)};
  }
  auto num = matrix_polynomial_from_json<T>(j);
  if (!num.is_square()) throw InputError("function: numerator must be square");
  auto den = Polynomial<T>::constant(num.num_vars(), CoefficientTraits<T>::from_int(1));
  return {std::move(num), std::move(den)};
}

template <Coefficient T>
Json to_json(const MatrixPolynomial<T>& p) {
  Json j;
  j["d"] = p.num_vars();
  j["shape"] = {p.rows(), p.cols()};
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json re = Json::array(), im = Json::array();
    for (std::size_t a = 0; a < p.rows(); ++a) {
      Json rr = Json::array(), ir = Json::array();
      for (std::size_t b = 0; b < p.cols(); ++b) {
        rr.push_back(part_json(c(a, b), false));
        ir.push_back(part_json(c(a, b), true));
      }
      re.push_back(std::move(rr));
      im.push_back(std::move(ir));
    }
    Json t;
    t["exp"] = e.powers();
    t["re"] = std::move(re);
    t["im"] = std::move(im);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

template <Coefficient T>
Json to_json(const Polynomial<T>& p) {
  return to_json(MatrixPolynomial<T>::from_scalar(p));
}

template <Coefficient T>
Json to_json(const RationalMatrixFunction<T>& f) {
  Json j;
  j["numerator"] = to_json(f.numerator());
  j["denominator"] = to_json(f.denominator());
  return j;
}

Json to_json(const ReductionPlan& plan) {
  Json j;
  j["degrees"] = plan.degrees;
  j["groups"] = plan.groups;
  j["fresh_count"] = plan.fresh_count;
  return j;
}

Json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ir = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ir.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  Json j;
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

Eigen::MatrixXcd complex_matrix_from_json(const Json& j, const std::string& where) {
  const Json& re = require(j, "re", where);
  if (!re.is_array()) throw InputError(where + ".re: expected an array of rows");
  const std::size_t rows = re.size();
  const std::size_t cols = rows ? re[0].size() : 0;
  auto rp = parse_part_matrix(re, rows, cols, where + ".re");
  std::vector<std::vector<Part>> ip(rows, std::vector<Part>(cols));
  if (auto it = j.find("im"); it != j.end()) ip = parse_part_matrix(*it, rows, cols, where + ".im");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = Complex(rp[i][k].value, ip[i][k].value);
  return m;
}

Json point_to_json(const Point& z) {
  Json j = Json::array();
  for (const auto& v : z) j.push_back({{"re", v.real()}, {"im", v.imag()}});
  return j;
}

#define PICKREALIZE_INSTANTIATE(T)                                             \
  template MatrixPolynomial<T> matrix_polynomial_from_json<T>(const Json&);   \
  template RationalMatrixFunction<T> function_from_json<T>(const Json&);      \
  template Json to_json(const MatrixPolynomial<T>&);                           \
  template Json to_json(const Polynomial<T>&);                                 \
  template Json to_json(const RationalMatrixFunction<T>&);

PICKREALIZE_INSTANTIATE(GaussianRational)
PICKREALIZE_INSTANTIATE(Complex)

#undef PICKREALIZE_INSTANTIATE

}  // namespace pickrealize
