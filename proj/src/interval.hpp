#pragma once

// Closed intervals with MPFR endpoints and outward rounding. Internal to the
// library: used to settle Sturm chain signs over towers without carrying the
// exact (and fast growing) tower coefficients through the whole chain.

#include <mpfr.h>

#include <map>
#include <utility>

#include "jetmove/scalar.hpp"

namespace jetmove::detail {

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  Interval(const mpq_class& q, mpfr_prec_t prec) : Interval(prec) {
    mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
  }
  Interval(const Interval& o) : Interval(mpfr_get_prec(o.lo_)) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Interval& operator=(const Interval& o) {
    if (this != &o) {
      mpfr_set(lo_, o.lo_, MPFR_RNDD);
      mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
  }
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }

  /// +1 or -1 when the whole interval has that sign, 0 when it meets zero.
  int sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
  }

  Interval operator-() const {
    Interval r(prec());
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
  }
  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(a.prec());
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  friend Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }
  friend Interval operator*(const Interval& a, const Interval& b) {
    Interval r(a.prec());
    mpfr_t t;
    mpfr_init2(t, a.prec());
    bool first = true;
    for (auto x : {a.lo_, a.hi_})
      for (auto y : {b.lo_, b.hi_}) {
        mpfr_mul(t, x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
      }
    mpfr_clear(t);
    return r;
  }
  /// Caller guarantees b.sign() != 0.
  Interval inverse() const {
    Interval r(prec());
    mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
    return r;
  }
  /// Square root of the nonnegative part.
  Interval sqrt() const {
    Interval r(prec());
    if (mpfr_sgn(lo_) > 0) mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

 private:
  mpfr_t lo_, hi_;
};

/// Encloses elements of towers; square roots of the levels are cached.
class Encloser {
 public:
  explicit Encloser(mpfr_prec_t prec) : prec_(prec) {}

  Interval operator()(const Scalar& s) {
    if (s.is_rational()) return Interval(s.rational(), prec_);
    const auto& chain = s.tower()->chain();
    const auto c = s.coords();
    Interval sum(prec_);
    for (std::size_t idx = 0; idx < c.size(); ++idx) {
      if (sgn(c[idx]) == 0) continue;
      Interval term(c[idx], prec_);
      for (std::size_t bit = 0; bit < chain.size(); ++bit)
        if (idx & (std::size_t{1} << bit)) term = term * generator(chain[bit]);
      sum = sum + term;
    }
    return sum;
  }

 private:
  const Interval& generator(const Tower* t) {
    auto it = gens_.find(t);
    if (it == gens_.end()) it = gens_.emplace(t, (*this)(t->radicand()).sqrt()).first;
    return it->second;
  }

  mpfr_prec_t prec_;
  std::map<const Tower*, Interval> gens_;
};

}  // namespace jetmove::detail
