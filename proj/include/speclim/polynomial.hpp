#pragma once

// Real polynomials in the ambient coordinates x, y, z of the unit sphere,
// with exact rational coefficients.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "speclim/error.hpp"

namespace speclim {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exponents (a, b, c) of the monomial x^a y^b z^c.
using Monomial = std::array<int, 3>;

class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial constant(const Rational& c) {
    Polynomial p;
    p.add_term({0, 0, 0}, c);
    return p;
  }
  static Polynomial coordinate(int axis) {
    Polynomial p;
    Monomial m{0, 0, 0};
    m.at(static_cast<std::size_t>(axis)) = 1;
    p.add_term(m, 1);
    return p;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (m[0] < 0 || m[1] < 0 || m[2] < 0) throw DomainError("Polynomial: negative exponent");
    auto& slot = terms_[m];
    slot += c;
    if (slot == 0) terms_.erase(m);
  }

  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1] + m[2]);
    return d;
  }

  double evaluate(double x, double y, double z) const {
    double s = 0.0;
    for (const auto& [m, c] : terms_)
      s += static_cast<double>(c) * std::pow(x, m[0]) * std::pow(y, m[1]) * std::pow(z, m[2]);
    return s;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
    return r;
  }

  /// Supremum of |f| on the unit sphere, sampled on a latitude/longitude
  /// grid that contains the poles and the equator points on the x and y axes.
  double sup_abs_on_sphere(int lat = 400, int lon = 800) const {
    double best = 0.0;
    for (int i = 0; i <= lat; ++i) {
      const double theta = std::numbers::pi * i / lat;
      for (int k = 0; k < lon; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / lon;
        double x = std::sin(theta) * std::cos(phi);
        double y = std::sin(theta) * std::sin(phi);
        double z = std::cos(theta);
        if (2 * i == lat) {
          z = 0.0;
          if (4 * k == lon) x = 0.0, y = 1.0;
          if (k == 0) x = 1.0, y = 0.0;
        }
        if (i == 0) x = y = 0.0, z = 1.0;
        if (i == lat) x = y = 0.0, z = -1.0;
        best = std::max(best, std::abs(evaluate(x, y, z)));
      }
    }
    return best;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += c.str();
      static constexpr char names[3] = {'x', 'y', 'z'};
      for (int k = 0; k < 3; ++k) {
        if (m[static_cast<std::size_t>(k)] == 0) continue;
        out += '*';
        out += names[k];
        if (m[static_cast<std::size_t>(k)] > 1) out += '^' + std::to_string(m[static_cast<std::size_t>(k)]);
      }
    }
    return out;
  }

 private:
  std::map<Monomial, Rational> terms_;
};

namespace detail {

inline Rational parse_number(std::string_view s) {
  const auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    return Rational(BigInt(std::string(s.substr(0, slash)))) / Rational(BigInt(std::string(s.substr(slash + 1))));
  }
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) return Rational(BigInt(std::string(s)));
  std::string digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
  BigInt den = 1;
  for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  if (digits.empty()) digits = "0";
  return Rational(BigInt(digits)) / Rational(den);
}

}  // namespace detail

/// Parses sums of terms such as "1 + z", "x*z", "3/2*z^2 - 0.5*x*y".
inline Polynomial parse_polynomial(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw DomainError("parse_polynomial: empty expression");
  Polynomial p;
  std::size_t i = 0;
  while (i < s.size()) {
    Rational sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    std::size_t end = i;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    const std::string term = s.substr(i, end - i);
    if (term.empty()) throw DomainError("parse_polynomial: dangling sign in '" + std::string(text) + "'");
    Rational coef = sign;
    Monomial mono{0, 0, 0};
    std::size_t f = 0;
    while (f < term.size()) {
      std::size_t g = term.find('*', f);
      if (g == std::string::npos) g = term.size();
      const std::string factor = term.substr(f, g - f);
      if (factor.empty()) throw DomainError("parse_polynomial: empty factor in '" + term + "'");
      if (factor[0] == 'x' || factor[0] == 'y' || factor[0] == 'z') {
        int power = 1;
        if (factor.size() > 1) {
          if (factor[1] != '^' || factor.size() < 3) throw DomainError("parse_polynomial: bad factor '" + factor + "'");
          power = std::stoi(factor.substr(2));
        }
        mono[static_cast<std::size_t>(factor[0] - 'x')] += power;
      } else {
        if (!std::isdigit(static_cast<unsigned char>(factor[0])) && factor[0] != '.')
          throw DomainError("parse_polynomial: bad factor '" + factor + "'");
        coef *= detail::parse_number(factor);
      }
      f = g + 1;
    }
    p.add_term(mono, coef);
    i = end;
  }
  return p;
}

}  // namespace speclim
