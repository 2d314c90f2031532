#include "banach/exponent.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "banach/errors.hpp"

namespace banach {

Exponent Exponent::integer(int q) {
  if (q < 1) throw DomainError("integer exponent must be >= 1, got " + std::to_string(q));
  return Exponent(Kind::Integer, q, static_cast<double>(q));
}

Exponent Exponent::real(double r) {
  if (!std::isfinite(r) || !(r > 1.0)) {
    throw DomainError("real exponent must be a finite value > 1");
  }
  return Exponent(Kind::Real, 0, r);
}

Exponent Exponent::infinity() {
  return Exponent(Kind::Infinity, 0, std::numeric_limits<double>::infinity());
}

Exponent Exponent::from_double(double value) {
  if (std::isinf(value) && value > 0) return infinity();
  if (std::isfinite(value) && value == std::floor(value) && value >= 1.0 && value < 1e6) {
    return integer(static_cast<int>(value));
  }
  return real(value);
}

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") return infinity();
  int q = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), q);
  if (ec == std::errc() && ptr == text.data() + text.size()) return integer(q);
  std::istringstream in(text);
  double r = 0.0;
  in >> r;
  if (!in || !in.eof()) throw DomainError("cannot parse exponent '" + text + "'");
  return from_double(r);
}

int Exponent::integer_value() const {
  if (kind_ != Kind::Integer) throw UnsupportedExponent("exponent " + to_string() + " is not an integer");
  return q_;
}

double Exponent::value() const { return r_; }

bool Exponent::smooth() const {
  switch (kind_) {
    case Kind::Integer:
      return q_ >= 2;
    case Kind::Real:
      return true;
    case Kind::Infinity:
      return false;
  }
  return false;
}

std::string Exponent::to_string() const {
  switch (kind_) {
    case Kind::Integer:
      return std::to_string(q_);
    case Kind::Infinity:
      return "inf";
    case Kind::Real: {
      std::ostringstream out;
      out.precision(17);
      out << r_;
      return out.str();
    }
  }
  return "?";
}

}  // namespace banach
