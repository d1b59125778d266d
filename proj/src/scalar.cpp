#include "jetmove/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

#include "jetmove/errors.hpp"

namespace jetmove {

using Vec = std::vector<mpq_class>;
using Rads = std::vector<const Vec*>;

struct ScalarAccess {
  static Scalar make(TowerPtr t, Vec c) { return Scalar(std::move(t), std::move(c)); }
};

namespace {

bool all_zero(const mpq_class* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(a[i]) != 0) return false;
  return true;
}

// All routines below work on coordinate blocks of size 2^k over the first k
// levels of a tower; rads[i] is the radicand of level i+1 (size 2^i).

void mul_rec(int k, const mpq_class* a, const mpq_class* b, mpq_class* out, const Rads& rads) {
  if (k == 0) {
    out[0] = a[0] * b[0];
    return;
  }
  const std::size_t h = std::size_t{1} << (k - 1);
  const bool a1z = all_zero(a + h, h);
  const bool b1z = all_zero(b + h, h);
  if (a1z && b1z) {
    mul_rec(k - 1, a, b, out, rads);
    for (std::size_t i = 0; i < h; ++i) out[h + i] = 0;
    return;
  }
  if (a1z) {
    mul_rec(k - 1, a, b, out, rads);
    mul_rec(k - 1, a, b + h, out + h, rads);
    return;
  }
  if (b1z) {
    mul_rec(k - 1, a, b, out, rads);
    mul_rec(k - 1, a + h, b, out + h, rads);
    return;
  }
  Vec m1(h), m2(h), m3(h), sa(h), sb(h), m2r(h);
  mul_rec(k - 1, a, b, m1.data(), rads);
  mul_rec(k - 1, a + h, b + h, m2.data(), rads);
  for (std::size_t i = 0; i < h; ++i) {
    sa[i] = a[i] + a[h + i];
    sb[i] = b[i] + b[h + i];
  }
  mul_rec(k - 1, sa.data(), sb.data(), m3.data(), rads);
  mul_rec(k - 1, m2.data(), rads[k - 1]->data(), m2r.data(), rads);
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = m1[i] + m2r[i];
    out[h + i] = m3[i] - m1[i] - m2[i];
  }
}

Vec mul_vec(int k, const Vec& a, const Vec& b, const Rads& rads) {
  Vec out(a.size());
  mul_rec(k, a.data(), b.data(), out.data(), rads);
  return out;
}

int sign_rec(int k, const mpq_class* a, const Rads& rads) {
  if (k == 0) return sgn(a[0]);
  const std::size_t h = std::size_t{1} << (k - 1);
  const int s1 = sign_rec(k - 1, a + h, rads);
  const int s0 = sign_rec(k - 1, a, rads);
  if (s1 == 0) return s0;
  if (s0 == 0 || s0 == s1) return s0 == 0 ? s1 : s0;
  // a0 + a1·√r with opposite signs: compare a0² against a1²·r.
  Vec a0(a, a + h), a1(a + h, a + 2 * h);
  Vec n = mul_vec(k - 1, a0, a0, rads);
  Vec b2 = mul_vec(k - 1, a1, a1, rads);
  Vec b2r = mul_vec(k - 1, b2, *rads[k - 1], rads);
  for (std::size_t i = 0; i < h; ++i) n[i] -= b2r[i];
  return sign_rec(k - 1, n.data(), rads) * s0;
}

Vec inv_vec(int k, const Vec& a, const Rads& rads) {
  if (k == 0) {
    if (sgn(a[0]) == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
    return Vec{1 / a[0]};
  }
  const std::size_t h = std::size_t{1} << (k - 1);
  Vec a0(a.begin(), a.begin() + h), a1(a.begin() + h, a.end());
  Vec out(2 * h);
  if (all_zero(a1.data(), h)) {
    Vec i0 = inv_vec(k - 1, a0, rads);
    std::copy(i0.begin(), i0.end(), out.begin());
    return out;
  }
  Vec n = mul_vec(k - 1, a0, a0, rads);
  Vec b2 = mul_vec(k - 1, a1, a1, rads);
  Vec b2r = mul_vec(k - 1, b2, *rads[k - 1], rads);
  for (std::size_t i = 0; i < h; ++i) n[i] -= b2r[i];
  Vec ninv = inv_vec(k - 1, n, rads);
  Vec o0 = mul_vec(k - 1, a0, ninv, rads);
  Vec o1 = mul_vec(k - 1, a1, ninv, rads);
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = o0[i];
    out[h + i] = -o1[i];
  }
  return out;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return mpq_class(0);
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

// Nonnegative square root inside the level-k field, if one exists.
std::optional<Vec> sqrt_rec(int k, const Vec& a, const Rads& rads) {
  if (k == 0) {
    auto r = rational_sqrt(a[0]);
    if (!r) return std::nullopt;
    return Vec{*r};
  }
  if (sign_rec(k, a.data(), rads) < 0) return std::nullopt;
  const std::size_t h = std::size_t{1} << (k - 1);
  Vec a0(a.begin(), a.begin() + h), a1(a.begin() + h, a.end());
  Vec out(2 * h);
  if (all_zero(a1.data(), h)) {
    if (auto r = sqrt_rec(k - 1, a0, rads)) {
      std::copy(r->begin(), r->end(), out.begin());
      return out;
    }
    // a0 = d²·r  gives  √a0 = d·√r.
    Vec q = mul_vec(k - 1, a0, inv_vec(k - 1, *rads[k - 1], rads), rads);
    if (auto r = sqrt_rec(k - 1, q, rads)) {
      std::copy(r->begin(), r->end(), out.begin() + h);
      return out;
    }
    return std::nullopt;
  }
  Vec norm = mul_vec(k - 1, a0, a0, rads);
  Vec b2 = mul_vec(k - 1, a1, a1, rads);
  Vec b2r = mul_vec(k - 1, b2, *rads[k - 1], rads);
  for (std::size_t i = 0; i < h; ++i) norm[i] -= b2r[i];
  auto n = sqrt_rec(k - 1, norm, rads);
  if (!n) return std::nullopt;
  for (int s : {1, -1}) {
    Vec cand(h);
    for (std::size_t i = 0; i < h; ++i) cand[i] = (a0[i] + s * (*n)[i]) / 2;
    auto c = sqrt_rec(k - 1, cand, rads);
    if (!c || all_zero(c->data(), h)) continue;
    Vec two_c(*c);
    for (auto& v : two_c) v *= 2;
    Vec d = mul_vec(k - 1, a1, inv_vec(k - 1, two_c, rads), rads);
    std::copy(c->begin(), c->end(), out.begin());
    std::copy(d.begin(), d.end(), out.begin() + h);
    if (sign_rec(k, out.data(), rads) < 0)
      for (auto& v : out) v = -v;
    return out;
  }
  return std::nullopt;
}

const Rads kNoRads;

const Rads& rads_of(const TowerPtr& t) { return t ? t->level_radicands() : kNoRads; }

bool is_ancestor(const Tower* a, const Tower* m) {
  if (!a) return true;
  if (!m) return false;
  if (a->depth() > m->depth()) return false;
  return m->chain()[a->depth() - 1] == a;
}

// Interning and merge caches. Towers are never freed once created, so raw
// pointers used as keys stay valid.
struct Registry {
  std::mutex mu;
  std::vector<TowerPtr> all;
  std::map<const Tower*, std::vector<TowerPtr>> children;
  std::map<std::pair<const Tower*, const Tower*>, TowerPtr> merges;
  std::map<std::pair<const Tower*, const Tower*>, Vec> gen_images;
};

Registry& registry() {
  static Registry r;
  return r;
}

int cmp_vec(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

int tower_cmp(const Tower* a, const Tower* b) {
  if (a == b) return 0;
  if (!a) return -1;
  if (!b) return 1;
  if (a->depth() != b->depth()) return a->depth() < b->depth() ? -1 : 1;
  if (int c = tower_cmp(a->parent().get(), b->parent().get()); c != 0) return c;
  return cmp_vec(a->radicand_coords(), b->radicand_coords());
}

Vec pad(std::span<const mpq_class> c, std::size_t n) {
  Vec out(n);
  std::copy(c.begin(), c.end(), out.begin());
  return out;
}

Vec embed_coords(const TowerPtr& src, std::span<const mpq_class> c, const TowerPtr& dst);

Vec gen_image(const TowerPtr& src, const TowerPtr& dst) {
  auto& reg = registry();
  const auto key = std::make_pair(src.get(), dst.get());
  {
    std::lock_guard lock(reg.mu);
    if (auto it = reg.gen_images.find(key); it != reg.gen_images.end()) return it->second;
  }
  Vec r = embed_coords(src->parent(), src->radicand_coords(), dst);
  auto root = sqrt_rec(tower_depth(dst), r, rads_of(dst));
  if (!root) throw Error(Errc::Internal, "tower merge lost a generator");
  std::lock_guard lock(reg.mu);
  reg.gen_images.emplace(key, *root);
  return *root;
}

Vec embed_coords(const TowerPtr& src, std::span<const mpq_class> c, const TowerPtr& dst) {
  const std::size_t n = std::size_t{1} << tower_depth(dst);
  if (is_ancestor(src.get(), dst.get())) return pad(c, n);
  const std::size_t h = c.size() / 2;
  Vec lo = embed_coords(src->parent(), c.subspan(0, h), dst);
  if (all_zero(c.data() + h, h)) return lo;
  Vec hi = embed_coords(src->parent(), c.subspan(h, h), dst);
  Vec g = gen_image(src, dst);
  Vec prod = mul_vec(tower_depth(dst), hi, g, rads_of(dst));
  for (std::size_t i = 0; i < n; ++i) lo[i] += prod[i];
  return lo;
}

TowerPtr merge_towers(TowerPtr a, TowerPtr b) {
  if (tower_cmp(a.get(), b.get()) > 0) std::swap(a, b);
  auto& reg = registry();
  const auto key = std::make_pair(a.get(), b.get());
  {
    std::lock_guard lock(reg.mu);
    if (auto it = reg.merges.find(key); it != reg.merges.end()) return it->second;
  }
  TowerPtr m = a;
  // Ancestors of b, bottom first.
  std::vector<TowerPtr> levels;
  for (TowerPtr t = b; t; t = t->parent()) levels.push_back(t);
  std::reverse(levels.begin(), levels.end());
  for (const auto& lvl : levels) {
    if (is_ancestor(lvl.get(), m.get())) continue;
    Vec r = embed_coords(lvl->parent(), lvl->radicand_coords(), m);
    if (sqrt_rec(tower_depth(m), r, rads_of(m))) continue;
    m = Tower::adjoin(m, ScalarAccess::make(m, std::move(r)));
  }
  std::lock_guard lock(reg.mu);
  reg.merges.emplace(key, m);
  return m;
}

TowerPtr common_tower(const TowerPtr& a, const TowerPtr& b) {
  if (a == b) return a;
  if (is_ancestor(a.get(), b.get())) return b;
  if (is_ancestor(b.get(), a.get())) return a;
  return merge_towers(a, b);
}

}  // namespace

int tower_depth(const TowerPtr& t) { return t ? t->depth() : 0; }

Scalar tower_generator(const TowerPtr& t) {
  Vec c(std::size_t{1} << t->depth());
  c[c.size() / 2] = 1;
  return ScalarAccess::make(t, std::move(c));
}

TowerPtr Tower::adjoin(const TowerPtr& parent, const Scalar& radicand) {
  Vec rc = embed_coords(radicand.tower(), radicand.coords(), parent);
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  auto& kids = reg.children[parent.get()];
  for (const auto& k : kids)
    if (cmp_vec(k->radicand_coords(), rc) == 0) return k;
  const int depth = tower_depth(parent) + 1;
  auto t = std::make_shared<Tower>(parent, radicand, std::move(rc), depth);
  if (parent) {
    t->rads_ = parent->rads_;
    t->chain_ = parent->chain_;
  }
  t->rads_.push_back(&t->rad_coords_);
  t->chain_.push_back(t.get());
  TowerPtr frozen = t;
  kids.push_back(frozen);
  reg.all.push_back(frozen);
  return frozen;
}

Scalar::Scalar() : c_{mpq_class(0)} {}
Scalar::Scalar(long value) : c_{mpq_class(value)} {}
Scalar::Scalar(long num, long den) {
  if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  c_ = {q};
}
Scalar::Scalar(mpq_class value) {
  value.canonicalize();
  c_ = {std::move(value)};
}
Scalar::Scalar(TowerPtr tower, std::vector<mpq_class> coords)
    : tower_(std::move(tower)), c_(std::move(coords)) {
  trim();
}

void Scalar::trim() {
  if (!tower_) return;
  std::size_t n = c_.size();
  while (n > 1 && all_zero(c_.data() + n / 2, n / 2)) n /= 2;
  if (n == c_.size()) return;
  c_.resize(n);
  int target = 0;
  while ((std::size_t{1} << target) < n) ++target;
  TowerPtr t = tower_;
  while (tower_depth(t) > target) t = t->parent();
  tower_ = t;
}

const mpq_class& Scalar::rational() const {
  if (tower_) throw Error(Errc::Mismatch, "scalar is not rational: " + str());
  return c_[0];
}

int Scalar::depth() const { return tower_depth(tower_); }

int Scalar::sign() const {
  if (!tower_) return sgn(c_[0]);
  return sign_rec(depth(), c_.data(), rads_of(tower_));
}

bool Scalar::is_zero() const { return !tower_ && sgn(c_[0]) == 0; }
bool Scalar::is_one() const { return !tower_ && c_[0] == 1; }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

namespace {
template <class F>
Scalar combine(const Scalar& a, const Scalar& b, F&& f) {
  TowerPtr t = common_tower(a.tower(), b.tower());
  Vec ca = embed_coords(a.tower(), a.coords(), t);
  Vec cb = embed_coords(b.tower(), b.coords(), t);
  return f(t, std::move(ca), std::move(cb));
}
}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  if (!tower_ && !o.tower_) {
    c_[0] += o.c_[0];
    return *this;
  }
  *this = combine(*this, o, [](const TowerPtr& t, Vec a, Vec b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return ScalarAccess::make(t, std::move(a));
  });
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (!tower_ && !o.tower_) {
    c_[0] -= o.c_[0];
    return *this;
  }
  *this = combine(*this, o, [](const TowerPtr& t, Vec a, Vec b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return ScalarAccess::make(t, std::move(a));
  });
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (!tower_ && !o.tower_) {
    c_[0] *= o.c_[0];
    return *this;
  }
  if (!o.tower_) {
    for (auto& v : c_) v *= o.c_[0];
    trim();
    return *this;
  }
  if (!tower_) {
    mpq_class s = c_[0];
    *this = o;
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }
  *this = combine(*this, o, [](const TowerPtr& t, Vec a, Vec b) {
    return ScalarAccess::make(t, mul_vec(tower_depth(t), a, b, rads_of(t)));
  });
  return *this;
}

Scalar Scalar::inverse() const {
  if (!tower_) {
    if (sgn(c_[0]) == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
    return Scalar(mpq_class(1 / c_[0]));
  }
  return ScalarAccess::make(tower_, inv_vec(depth(), c_, rads_of(tower_)));
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (!tower_ && !o.tower_) {
    if (sgn(o.c_[0]) == 0) throw Error(Errc::DivisionByZero, "division by zero");
    c_[0] /= o.c_[0];
    return *this;
  }
  return *this *= o.inverse();
}

Scalar Scalar::pow(unsigned n) const {
  Scalar result(1), base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.tower_ && !b.tower_) return a.c_[0] == b.c_[0];
  return (a - b).is_zero();
}

std::optional<Scalar> Scalar::sqrt_in_field() const {
  auto r = sqrt_rec(depth(), c_, rads_of(tower_));
  if (!r) return std::nullopt;
  return ScalarAccess::make(tower_, std::move(*r));
}

std::pair<mpq_class, mpz_class> split_square(const mpq_class& q) {
  if (sgn(q) <= 0) throw Error(Errc::NegativeRadicand, "split_square needs a positive rational");
  // q = n/d = (n*d)/d^2
  mpz_class f = q.get_num() * q.get_den();
  mpz_class a = 1;
  constexpr unsigned long kTrialLimit = 1u << 15;
  for (unsigned long p = 2; p < kTrialLimit && p * p <= f; p += (p == 2 ? 1 : 2)) {
    const mpz_class pp = p * p;
    while (mpz_divisible_p(f.get_mpz_t(), pp.get_mpz_t())) {
      f /= pp;
      a *= p;
    }
  }
  if (mpz_perfect_square_p(f.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
    a *= r;
    f = 1;
  }
  mpq_class out(a, q.get_den());
  out.canonicalize();
  return {out, f};
}

Scalar Scalar::sqrt_adjoin(const Scalar& s) {
  if (s.sign() < 0) throw Error(Errc::NegativeRadicand, "square root of negative " + s.str());
  if (auto r = s.sqrt_in_field()) return *r;
  if (s.is_rational()) {
    // adjoin the square class representative, which keeps radicands small
    auto [a, f] = split_square(s.rational());
    return Scalar(a) * tower_generator(Tower::adjoin(nullptr, Scalar(mpq_class(f))));
  }
  return tower_generator(Tower::adjoin(s.tower(), s));
}

std::string Scalar::str() const {
  if (!tower_) return c_[0].get_str();
  std::vector<std::string> rad_str;
  for (TowerPtr t = tower_; t; t = t->parent()) rad_str.push_back(t->radicand().str());
  std::reverse(rad_str.begin(), rad_str.end());
  std::string out;
  for (std::size_t idx = 0; idx < c_.size(); ++idx) {
    if (sgn(c_[idx]) == 0) continue;
    mpq_class mag = ::abs(c_[idx]);
    const bool neg = sgn(c_[idx]) < 0;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string term;
    if (idx == 0 || mag != 1) term = mag.get_str();
    for (std::size_t bit = 0; bit < rad_str.size(); ++bit) {
      if (!(idx & (std::size_t{1} << bit))) continue;
      if (!term.empty()) term += "*";
      term += "sqrt(" + rad_str[bit] + ")";
    }
    out += term;
  }
  return out.empty() ? "0" : out;
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::ParseError, why + " at offset " + std::to_string(pos_) + " in '" +
                                      std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  Scalar term() {
    Scalar v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) {
        Scalar d = unary();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else return v;
    }
  }
  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    Scalar base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }
  Scalar primary() {
    skip();
    if (eat('(')) {
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (s_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return Scalar::sqrt_adjoin(v);
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number");
    return Scalar(mpq_class(mpz_class(std::string(s_.substr(start, pos_ - start)))));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace jetmove
