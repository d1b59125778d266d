#include "jetmove/poly.hpp"

#include "jetmove/errors.hpp"

namespace jetmove {

Poly::Poly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const Scalar& c) { return Poly(std::vector<Scalar>{c}); }

Poly Poly::monomial(const Scalar& c, int k) {
  std::vector<Scalar> v(static_cast<std::size_t>(k) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::linear_root(const Scalar& a) { return Poly({-a, Scalar(1)}); }

Scalar Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return Scalar(0);
  return c_[static_cast<std::size_t>(k)];
}

const Scalar& Poly::lead() const {
  if (c_.empty()) throw Error(Errc::ZeroPolynomial, "leading coefficient of zero polynomial");
  return c_.back();
}

Scalar Poly::operator()(const Scalar& x) const {
  Scalar acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  std::vector<Scalar> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Scalar(static_cast<long>(k)));
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inverse();
}

Poly Poly::pow(unsigned n) const {
  Poly r = constant(Scalar(1)), b = *this;
  while (n) {
    if (n & 1u) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

Poly Poly::compose(const Poly& other) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * other + constant(*it);
  return acc;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Scalar> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Scalar& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Scalar> rem = a.c_;
  std::vector<Scalar> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const Scalar inv_lead = b.lead().inverse();
  const int db = b.degree();
  for (int k = a.degree() - db; k >= 0; --k) {
    Scalar q = rem[static_cast<std::size_t>(k + db)] * inv_lead;
    quo[static_cast<std::size_t>(k)] = q;
    if (q.is_zero()) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * b.c_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    if (!r.is_zero()) r = r.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string Poly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    const std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    out += format_term(c_[k], mono, out.empty());
  }
  return out;
}

std::string format_term(const Scalar& c, const std::string& mono, bool first) {
  // rational coefficients carry their sign into the joiner; tower ones stay parenthesized
  const bool neg = c.is_rational() && sgn(c.rational()) < 0;
  const Scalar a = neg ? -c : c;
  std::string coef = a.is_rational() ? a.str() : "(" + a.str() + ")";
  std::string body;
  if (mono.empty())
    body = coef;
  else if (a.is_one())
    body = mono;
  else
    body = coef + "*" + mono;
  if (first) return neg ? "-" + body : body;
  return (neg ? " - " : " + ") + body;
}

}  // namespace jetmove
