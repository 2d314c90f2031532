#include "banach/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "banach/errors.hpp"

namespace banach {

QPoly::QPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void QPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

QPoly QPoly::constant(const Rational& c) { return QPoly(std::vector<Rational>{c}); }

QPoly QPoly::monomial(const Rational& c, unsigned n) {
  std::vector<Rational> v(n + 1, Rational(0));
  v[n] = c;
  return QPoly(std::move(v));
}

QPoly QPoly::linear_root(const Rational& r) { return QPoly(std::vector<Rational>{Rational(-r), Rational(1)}); }

Rational QPoly::eval(const Rational& k) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * k + *it;
  return acc;
}

QPoly QPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long>(i);
  return QPoly(std::move(v));
}

QPoly QPoly::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / leading();
  return inv * *this;
}

QPoly QPoly::pow(unsigned n) const {
  QPoly result = constant(1);
  QPoly base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    base = base * base;
    n >>= 1u;
  }
  return result;
}

QPoly operator+(const QPoly& l, const QPoly& r) {
  std::vector<Rational> v(std::max(l.coeffs_.size(), r.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < l.coeffs_.size(); ++i) v[i] += l.coeffs_[i];
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) v[i] += r.coeffs_[i];
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& p) { return Rational(-1) * p; }

QPoly operator-(const QPoly& l, const QPoly& r) { return l + (-r); }

QPoly operator*(const QPoly& l, const QPoly& r) {
  if (l.is_zero() || r.is_zero()) return {};
  std::vector<Rational> v(l.coeffs_.size() + r.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < l.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < r.coeffs_.size(); ++j) v[i + j] += l.coeffs_[i] * r.coeffs_[j];
  }
  return QPoly(std::move(v));
}

QPoly operator*(const Rational& s, const QPoly& p) {
  std::vector<Rational> v = p.coeffs_;
  for (auto& c : v) c *= s;
  return QPoly(std::move(v));
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational mag = abs(c);
    if (mag != 1 || i == 0) os << banach::to_string(mag);
    if (i >= 1) os << (mag != 1 ? "*" : "") << "k";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::pair<QPoly, QPoly> divmod(const QPoly& num, const QPoly& den) {
  if (den.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = num.coeffs();
  const int dn = den.degree();
  if (num.degree() < dn) return {QPoly(), num};
  std::vector<Rational> quot(static_cast<std::size_t>(num.degree() - dn + 1), Rational(0));
  const Rational lead_inv = 1 / den.leading();
  for (int i = num.degree(); i >= dn; --i) {
    Rational q = rem[static_cast<std::size_t>(i)] * lead_inv;
    quot[static_cast<std::size_t>(i - dn)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= dn; ++j) rem[static_cast<std::size_t>(i - dn + j)] -= q * den.coeff(static_cast<std::size_t>(j));
  }
  rem.resize(static_cast<std::size_t>(dn));
  return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

QPoly gcd(const QPoly& l, const QPoly& r) {
  QPoly a = l;
  QPoly b = r;
  while (!b.is_zero()) {
    QPoly rem = divmod(a, b).second;
    a = std::move(b);
    b = rem.monic();
  }
  return a.monic();
}

QPoly squarefree_part(const QPoly& p) {
  if (p.degree() <= 0) return p.monic();
  return divmod(p, gcd(p, p.derivative())).first.monic();
}

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  if (p.is_zero()) throw DomainError("Sturm sequence of the zero polynomial");
  std::vector<QPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    QPoly rem = divmod(chain[chain.size() - 2], chain.back()).second;
    // Positive rescaling keeps the signs and the coefficients small.
    if (!rem.is_zero()) rem = Rational(1 / abs(rem.leading())) * rem;
    chain.push_back(-rem);
  }
  chain.pop_back();
  return chain;
}

int sign_variations(const std::vector<QPoly>& chain, const Rational& k) {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = q.sign_at(k);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sturm_count(const std::vector<QPoly>& chain, const Rational& lo, const Rational& hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

Rational cauchy_bound(const QPoly& p) {
  if (p.degree() < 1) throw DomainError("Cauchy bound needs degree >= 1");
  Rational best(0);
  for (int i = 0; i < p.degree(); ++i) best = std::max(best, Rational(abs(p.coeff(static_cast<std::size_t>(i)) / p.leading())));
  return 1 + best;
}

}  // namespace banach
