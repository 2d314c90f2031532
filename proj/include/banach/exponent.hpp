#pragma once

#include <string>

namespace banach {

/// The exponent p of an l_p space, 1 <= p <= infinity.
///
/// Integer exponents are kept apart from real ones so that the rational path
/// can compute p-th powers exactly. Integer(q) and Real(q) describe the same
/// norm; only the available arithmetic differs.
class Exponent {
 public:
  enum class Kind { Integer, Real, Infinity };

  static Exponent integer(int q);
  static Exponent real(double r);
  static Exponent infinity();
  /// Integral finite values become Integer, everything else Real.
  static Exponent from_double(double value);
  /// Parses "inf", "infinity", an integer literal or a real literal.
  static Exponent parse(const std::string& text);

  Kind kind() const { return kind_; }
  bool is_integer() const { return kind_ == Kind::Integer; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  bool is_one() const { return kind_ == Kind::Integer && q_ == 1; }
  /// Only valid for Kind::Integer.
  int integer_value() const;
  /// p as a double (infinity for Kind::Infinity).
  double value() const;

  bool smooth() const;
  bool strictly_convex() const { return smooth(); }
  /// Integer or infinity: norms admit exact rational comparisons.
  bool exact_capable() const { return kind_ != Kind::Real; }

  std::string to_string() const;

  friend bool operator==(const Exponent& lhs, const Exponent& rhs) {
    return lhs.kind_ == rhs.kind_ && lhs.q_ == rhs.q_ && lhs.r_ == rhs.r_;
  }

 private:
  Exponent(Kind kind, int q, double r) : kind_(kind), q_(q), r_(r) {}

  Kind kind_;
  int q_;
  double r_;
};

}  // namespace banach
