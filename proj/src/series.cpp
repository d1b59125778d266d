#include "jetmove/series.hpp"

#include "jetmove/errors.hpp"

namespace jetmove {

Series::Series(Scalar center, int order, std::vector<Scalar> coeffs)
    : center_(std::move(center)), c_(std::move(coeffs)) {
  if (order < 1) throw Error(Errc::Mismatch, "series order must be positive");
  if (static_cast<int>(c_.size()) > order)
    throw Error(Errc::Mismatch, "more coefficients than the series order");
  c_.resize(static_cast<std::size_t>(order));
}

Series Series::zero(const Scalar& center, int order) { return Series(center, order, {}); }

Series Series::constant(const Scalar& c, const Scalar& center, int order) {
  return Series(center, order, {c});
}

Series Series::variable(const Scalar& center, int order) {
  std::vector<Scalar> v{center};
  if (order > 1) v.push_back(Scalar(1));
  return Series(center, order, std::move(v));
}

Series Series::from_poly(const Poly& p, const Scalar& center, int order) {
  return eval_poly(p, variable(center, order));
}

Poly Series::to_poly() const {
  Poly acc;
  const Poly shift = Poly::linear_root(center_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * shift + Poly::constant(*it);
  return acc;
}

Series Series::truncate(int new_order) const {
  if (new_order > order()) throw Error(Errc::Mismatch, "truncate cannot raise the order");
  return Series(center_, new_order, std::vector<Scalar>(c_.begin(), c_.begin() + new_order));
}

Series Series::lift(int new_order) const {
  if (new_order < order()) throw Error(Errc::Mismatch, "lift cannot lower the order");
  return Series(center_, new_order, c_);
}

bool Series::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

void Series::check_compatible(const Series& o) const {
  if (order() != o.order() || center_ != o.center_)
    throw Error(Errc::Mismatch, "series with different center or order");
}

Series Series::operator-() const {
  Series r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Series& Series::operator+=(const Series& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Series& Series::operator-=(const Series& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Series& Series::operator*=(const Series& o) {
  check_compatible(o);
  const std::size_t n = c_.size();
  std::vector<Scalar> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (o.c_[j].is_zero()) continue;
      r[i + j] += c_[i] * o.c_[j];
    }
  }
  c_ = std::move(r);
  return *this;
}

Series& Series::operator*=(const Scalar& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

Series Series::operator+(const Scalar& s) const {
  Series r = *this;
  r.c_[0] += s;
  return r;
}

bool operator==(const Series& a, const Series& b) {
  if (a.order() != b.order() || a.center_ != b.center_) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

std::string Series::str() const {
  std::string t = "t";
  if (!center_.is_zero()) t = "(x" + format_term(-center_, "", false) + ")";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    out += format_term(c_[k], k == 0 ? "" : (k == 1 ? t : t + "^" + std::to_string(k)), out.empty());
  }
  if (out.empty()) out = "0";
  return out + " mod " + t + "^" + std::to_string(c_.size());
}

Series eval_poly(const Poly& p, const Series& s) {
  Series acc = Series::zero(s.center(), s.order());
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Series eval_homogeneous(const Poly& p, int d, const Series& u, const Series& v) {
  // Σ p_k U^k V^(d-k), Horner in the ratio with explicit powers of V.
  Series acc = Series::zero(u.center(), u.order());
  std::vector<Series> vpow{Series::constant(Scalar(1), u.center(), u.order())};
  for (int k = 1; k <= d; ++k) vpow.push_back(vpow.back() * v);
  Series upow = Series::constant(Scalar(1), u.center(), u.order());
  for (int k = 0; k <= d; ++k) {
    const Scalar ck = p.coeff(k);
    if (!ck.is_zero()) acc += upow * vpow[static_cast<std::size_t>(d - k)] * ck;
    if (k < d) upow *= u;
  }
  return acc;
}

Series express_in(const Series& y, const Series& s) {
  const int e = s.order();
  if (y.order() != e) throw Error(Errc::Mismatch, "express_in: order mismatch");
  if (e > 1 && s[1].is_zero()) throw Error(Errc::NotCurvilinear, "parameter has zero derivative");
  // ds = s - s0 has valuation 1; solve y = Σ f_k ds^k triangularly.
  Series ds = s - s.constant_term();
  std::vector<Series> powers{Series::constant(Scalar(1), s.center(), e)};
  for (int k = 1; k < e; ++k) powers.push_back(powers.back() * ds);
  std::vector<Scalar> f(static_cast<std::size_t>(e));
  for (int k = 0; k < e; ++k) {
    Scalar rhs = y[k];
    for (int j = 0; j < k; ++j) rhs -= f[static_cast<std::size_t>(j)] * powers[static_cast<std::size_t>(j)][k];
    f[static_cast<std::size_t>(k)] = rhs / powers[static_cast<std::size_t>(k)][k];
  }
  return Series(s.constant_term(), e, std::move(f));
}

}  // namespace jetmove
