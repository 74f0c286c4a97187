#include "pickrealize/gaussian_rational.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

#include "pickrealize/errors.hpp"

namespace pickrealize {

namespace {

mpq_class pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return mpq_class(p);
  mpq_class q(mpz_class(1), p);
  q.canonicalize();
  return q;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpq_class parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view exp_text = s.substr(epos + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text)) throw InputError("malformed exponent in '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, epos);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty()))
      throw InputError("malformed number '" + std::string(text) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw InputError("malformed number '" + std::string(text) + "'");
    digits = std::string(s);
  }
  mpq_class value(mpz_class(digits, 10));
  value *= pow10(exponent);
  value.canonicalize();
  return negative ? mpq_class(-value) : value;
}

}  // namespace

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::from_double(double re, double im) {
  auto convert = [](double v) {
    if (!std::isfinite(v)) throw InputError("non-finite coefficient");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) throw InputError("cannot format coefficient");
    return parse_decimal(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
  };
  return {convert(re), convert(im)};
}

mpq_class GaussianRational::parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw InputError("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpq_class num = parse_decimal(text.substr(0, slash));
    mpq_class den = parse_decimal(text.substr(slash + 1));
    if (sgn(den) == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    mpq_class q = num / den;
    q.canonicalize();
    return q;
  }
  return parse_decimal(text);
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  mpq_class n = o.norm();
  if (sgn(n) == 0) throw std::domain_error("division by zero Gaussian rational");
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string to_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const GaussianRational& c) {
  if (c.is_real()) return to_string(c.real());
  return "(" + to_string(c.real()) + ")+(" + to_string(c.imag()) + ")i";
}

}  // namespace pickrealize
