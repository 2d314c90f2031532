#include "banach/rational.hpp"

#include <cctype>
#include <cmath>

#include "banach/errors.hpp"

namespace banach {

Rational rat(long n, long d) {
  if (d == 0) throw DomainError("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational rat_from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite value has no rational representation");
  Rational q(value);
  return q;
}

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(const std::string& s) {
  std::string digits = (!s.empty() && s[0] == '+') ? s.substr(1) : s;
  return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
  }
  if (text.empty()) throw DomainError("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
      throw DomainError("malformed rational literal '" + raw + "'");
    }
    mpz_class d = parse_integer(den);
    if (d == 0) throw DomainError("zero denominator in '" + raw + "'");
    Rational q(parse_integer(num), d);
    q.canonicalize();
    return q;
  }
  if (is_integer_literal(text)) return Rational(parse_integer(text));

  // Decimal with optional exponent: [sign] digits [. digits] [e [sign] digits]
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '-' || text[pos] == '+') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string mantissa;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mantissa.push_back(ch);
      seen_digit = true;
      if (seen_point) --scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw DomainError("malformed number '" + raw + "'");
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw DomainError("malformed number '" + raw + "'");
    std::string exp_text = text.substr(pos + 1);
    if (!is_integer_literal(exp_text) || exp_text.size() > 6) {
      throw DomainError("malformed exponent in '" + raw + "'");
    }
    scale += std::stol(exp_text);
  }
  mpz_class m(mantissa, 10);
  if (negative) m = -m;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational q = scale < 0 ? Rational(m, ten_pow) : Rational(m * ten_pow);
  q.canonicalize();
  return q;
}

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

long approx_log2(const Rational& q) {
  if (q == 0) return 0;
  long num_bits = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
  long den_bits = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  return num_bits - den_bits;
}

}  // namespace banach
