/*!
  \file rational.hpp
  \brief Exact rational arithmetic for probabilities.

  Conditional probability tables and marginals are kept exact; no entry is
  ever rounded. Backed by boost::multiprecision::cpp_int so denominators
  may grow without overflow.
*/

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bdd2bn {

class rational {
public:
  using int_type = boost::multiprecision::cpp_int;

  rational() : num_(0), den_(1) {}
  rational(long long value) : num_(value), den_(1) {}
  rational(int_type numerator, int_type denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_ == 0) {
      throw std::domain_error("rational: zero denominator");
    }
    normalize();
  }

  /*! \brief Parses "3/8", "-2", "0.5" or ".25" into an exact rational. */
  static rational from_string(std::string_view text) {
    auto const fail = [&] {
      throw std::invalid_argument("rational: cannot parse '" + std::string(text) + "'");
    };
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) fail();

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
      negative = s.front() == '-';
      s.remove_prefix(1);
      if (s.empty()) fail();
    }

    auto const digits_to_int = [&](std::string_view d) -> int_type {
      if (d.empty()) fail();
      int_type v = 0;
      for (char c : d) {
        if (c < '0' || c > '9') fail();
        v = v * 10 + (c - '0');
      }
      return v;
    };

    rational result;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      int_type num = digits_to_int(s.substr(0, slash));
      int_type den = digits_to_int(s.substr(slash + 1));
      if (den == 0) throw std::domain_error("rational: zero denominator");
      result = rational(std::move(num), std::move(den));
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
      std::string_view whole = s.substr(0, dot);
      std::string_view frac = s.substr(dot + 1);
      if (whole.empty() && frac.empty()) fail();
      int_type num = whole.empty() ? int_type(0) : digits_to_int(whole);
      int_type den = 1;
      for (char c : frac) {
        if (c < '0' || c > '9') fail();
        num = num * 10 + (c - '0');
        den *= 10;
      }
      result = rational(std::move(num), std::move(den));
    } else {
      result = rational(digits_to_int(s), 1);
    }
    if (negative) result.num_ = -result.num_;
    return result;
  }

  /*! \brief Exact conversion; every finite double is a dyadic rational. */
  static rational from_double(double value) {
    if (!std::isfinite(value)) {
      throw std::domain_error("rational: non-finite double");
    }
    if (value == 0.0) return rational();
    int exponent = 0;
    double mantissa = std::frexp(value, &exponent);
    auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    int_type num = scaled;
    int_type den = 1;
    if (exponent >= 0) {
      num <<= exponent;
    } else {
      den <<= -exponent;
    }
    return rational(std::move(num), std::move(den));
  }

  const int_type& numerator() const { return num_; }
  const int_type& denominator() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }

  rational& operator+=(const rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  rational& operator-=(const rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  rational& operator*=(const rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }

  friend rational operator+(rational a, const rational& b) { return a += b; }
  friend rational operator-(rational a, const rational& b) { return a -= b; }
  friend rational operator*(rational a, const rational& b) { return a *= b; }
  friend rational operator-(const rational& a) { return rational(-a.num_, a.den_); }

  friend bool operator==(const rational&, const rational&) = default;
  friend bool operator<(const rational& a, const rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const rational& a, const rational& b) { return a < b || a == b; }

  /*! \brief "3/8" for proper fractions, plain integer text otherwise. */
  std::string to_string() const {
    std::string s = num_.str();
    if (den_ != 1) {
      s += "/";
      s += den_.str();
    }
    return s;
  }

  double to_double() const {
    return num_.convert_to<double>() / den_.convert_to<double>();
  }

  std::string to_decimal_string(int significant_digits = 17) const {
    std::ostringstream os;
    os << std::setprecision(significant_digits) << to_double();
    return os.str();
  }

private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    int_type g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  int_type num_;
  int_type den_;
};

} // namespace bdd2bn
