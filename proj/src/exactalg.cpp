#include "jetmove/exactalg.hpp"

#include "interval.hpp"
#include "jetmove/errors.hpp"

namespace jetmove {

Series series_invert(const Series& u) {
  if (!u.is_unit()) throw Error(Errc::NotAUnit, "constant term is zero: " + u.str());
  const int e = u.order();
  std::vector<Scalar> v(static_cast<std::size_t>(e));
  const Scalar inv0 = u[0].inverse();
  v[0] = inv0;
  for (int k = 1; k < e; ++k) {
    Scalar acc;
    for (int j = 1; j <= k; ++j)
      if (!u[j].is_zero()) acc += u[j] * v[static_cast<std::size_t>(k - j)];
    v[static_cast<std::size_t>(k)] = -acc * inv0;
  }
  return Series(u.center(), e, std::move(v));
}

Series hensel_sqrt(const Series& u, const Scalar& seed) {
  if (seed.is_zero()) throw Error(Errc::ZeroSeed, "seed must be nonzero");
  if (seed * seed != u[0])
    throw Error(Errc::BadSeed, "seed^2 = " + (seed * seed).str() + " but u(c) = " + u[0].str());
  const int e = u.order();
  Series s = Series::constant(seed, u.center(), 1);
  const Scalar half(1, 2);
  for (int prec = 1; prec < e;) {
    prec = std::min(2 * prec, e);
    Series sl = s.lift(prec);
    s = (sl + u.truncate(prec) * series_invert(sl)) * half;
  }
  return s;
}

Poly crt_combine(const std::vector<Residue>& residues) {
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const auto& r = residues[i];
    if (r.order < 1 || r.value.order() != r.order || r.value.center() != r.center)
      throw Error(Errc::Mismatch, "residue value does not live at its (center, order)");
    for (std::size_t j = 0; j < i; ++j)
      if (residues[j].center == r.center)
        throw Error(Errc::DuplicateCenter, "center " + r.center.str() + " repeated");
  }
  std::vector<Poly> local;
  Poly m = Poly::constant(Scalar(1));
  for (const auto& r : residues) {
    local.push_back(Poly::linear_root(r.center).pow(static_cast<unsigned>(r.order)));
    m *= local.back();
  }
  Poly result;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const auto& r = residues[i];
    if (r.value.is_zero()) continue;
    const Poly mi = m / local[i];
    const Series coef = r.value * series_invert(Series::from_poly(mi, r.center, r.order));
    result += mi * coef.to_poly();
  }
  return result;
}

Poly interpolate(const std::vector<std::pair<Scalar, Scalar>>& points) {
  std::vector<Residue> rs;
  for (const auto& [x, y] : points) rs.push_back({x, 1, Series::constant(y, x, 1)});
  return crt_combine(rs);
}

int poly_valuation(const Series& u) {
  for (int k = 0; k < u.order(); ++k)
    if (!u[k].is_zero()) return k;
  return u.order();
}

namespace {

Poly square_free(const Poly& p) {
  const Poly g = Poly::gcd(p, p.derivative());
  return g.degree() <= 0 ? p : p / g;
}

using ZPoly = std::vector<mpz_class>;  // ascending, no trailing zeros

ZPoly primitive(ZPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  mpz_class g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return a;
}

// -(|lc b|^(da - db + 1) a mod b), made primitive: a positive multiple of the
// negated remainder, which is all a Sturm chain needs.
ZPoly sturm_step(ZPoly a, const ZPoly& b) {
  const std::size_t db = b.size() - 1;
  const mpz_class lc = abs(b.back());
  const bool neg = b.back() < 0;
  while (a.size() >= b.size()) {
    const mpz_class t = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lc;
    // a <- |lc| a - sgn(lc) t x^shift b, which kills the top term
    for (std::size_t i = 0; i <= db; ++i) {
      if (neg) a[shift + i] += t * b[i];
      else a[shift + i] -= t * b[i];
    }
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  for (auto& c : a) c = -c;
  return primitive(std::move(a));
}

Poly from_z(const ZPoly& a) {
  std::vector<Scalar> c;
  for (const auto& x : a) c.emplace_back(mpq_class(x));
  return Poly(std::move(c));
}

// Sturm chain of a rational polynomial via a primitive integer remainder
// sequence. p need not be square-free: the chain then carries gcd(p, p') as
// a common factor, which changes no sign variation count.
std::vector<Poly> rational_sturm_chain(const Poly& p) {
  mpz_class den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
  ZPoly a;
  for (const auto& c : p.coeffs()) a.push_back(mpz_class(c.rational() * den));
  a = primitive(std::move(a));
  ZPoly d;
  for (std::size_t k = 1; k < a.size(); ++k) d.push_back(a[k] * static_cast<unsigned long>(k));
  d = primitive(std::move(d));
  std::vector<ZPoly> z{a, d};
  while (z.back().size() > 1) {
    ZPoly r = sturm_step(z[z.size() - 2], z.back());
    if (r.empty()) break;
    z.push_back(std::move(r));
  }
  std::vector<Poly> chain;
  for (const auto& q : z) chain.push_back(from_z(q));
  return chain;
}

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    Poly r = -(chain[chain.size() - 2] % chain.back());
    if (r.is_zero()) break;
    // scaling by a positive constant keeps the signs and tames coefficient growth
    r = r * Poly::constant(r.lead().abs().inverse());
    chain.push_back(std::move(r));
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int sign_at_infinity(const Poly& p, int dir) {
  const int s = p.lead().sign();
  return (dir < 0 && p.degree() % 2 == 1) ? -s : s;
}

int variations_at(const std::vector<Poly>& chain, const Scalar& x, int dir) {
  std::vector<int> s;
  for (const auto& q : chain) s.push_back(one_sided_sign(q, x, dir));
  return variations(s);
}

int variations_at_infinity(const std::vector<Poly>& chain, int dir) {
  std::vector<int> s;
  for (const auto& q : chain) s.push_back(sign_at_infinity(q, dir));
  return variations(s);
}

}  // namespace

int one_sided_sign(const Poly& p, const Scalar& x, int dir) {
  Poly d = p;
  for (int k = 0; !d.is_zero(); ++k, d = d.derivative()) {
    const int s = d(x).sign();
    if (s != 0) return (dir < 0 && k % 2 == 1) ? -s : s;
  }
  return 0;
}

namespace {

bool is_rational_poly(const Poly& p) {
  for (const auto& c : p.coeffs())
    if (!c.is_rational()) return false;
  return true;
}

using detail::Interval;
using IPoly = std::vector<Interval>;  // ascending, top coefficient certified nonzero

// Euclidean Sturm chain of p over a tower, run on enclosures. nullopt when a
// degree or sign is not decided at this precision.
std::optional<std::vector<IPoly>> interval_chain(const Poly& p, detail::Encloser& enc, mpfr_prec_t prec) {
  IPoly a, d;
  for (const auto& c : p.coeffs()) a.push_back(enc(c));
  for (std::size_t k = 1; k < a.size(); ++k) d.push_back(a[k] * Interval(mpq_class(static_cast<long>(k)), prec));
  if (a.back().sign() == 0 || d.back().sign() == 0) return std::nullopt;
  std::vector<IPoly> chain{a, d};
  while (chain.back().size() > 1) {
    IPoly r = chain[chain.size() - 2];
    const IPoly& b = chain.back();
    const Interval inv = b.back().inverse();
    while (r.size() >= b.size()) {
      const Interval q = r.back() * inv;
      const std::size_t shift = r.size() - b.size();
      for (std::size_t i = 0; i + 1 < b.size(); ++i) r[shift + i] = r[shift + i] - q * b[i];
      r.pop_back();
    }
    if (r.back().sign() == 0) return std::nullopt;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

int interval_sign_at(const IPoly& q, const Interval& x) {
  Interval acc = q.back();
  for (std::size_t k = q.size() - 1; k-- > 0;) acc = acc * x + q[k];
  return acc.sign();
}

// Variation counts (lo, hi) from an enclosed chain, if every sign is decided.
std::optional<std::pair<int, int>> interval_variations(const Poly& p, const RootRange& range) {
  for (mpfr_prec_t prec = 256; prec <= 8192; prec *= 2) {
    detail::Encloser enc(prec);
    const auto chain = interval_chain(p, enc, prec);
    if (!chain) continue;
    std::vector<int> lo, hi;
    bool decided = true;
    if (range.whole_line) {
      for (const auto& q : *chain) {
        const int s = q.back().sign();
        lo.push_back((q.size() % 2 == 0) ? -s : s);
        hi.push_back(s);
      }
    } else {
      const Interval xl = enc(range.lo), xh = enc(range.hi);
      for (const auto& q : *chain) {
        lo.push_back(interval_sign_at(q, xl));
        hi.push_back(interval_sign_at(q, xh));
        decided = decided && lo.back() != 0 && hi.back() != 0;
      }
    }
    if (decided) return std::make_pair(variations(lo), variations(hi));
  }
  return std::nullopt;
}

SturmCertificate direct_certificate(const Poly& p, const RootRange& range) {
  SturmCertificate c;
  c.whole_line = range.whole_line;
  if (p.degree() <= 0) {
    c.chain_length = 1;
    return c;
  }
  const bool rational = is_rational_poly(p);
  if (!rational) {
    // Exact chains over a tower grow very fast. Enclosures decide the same
    // signs whenever no interval meets zero; otherwise fall through.
    const bool open_ends = range.whole_line || (range.lo < range.hi && !p(range.lo).is_zero() && !p(range.hi).is_zero());
    if (open_ends) {
      if (auto v = interval_variations(p, range)) {
        c.chain_length = p.degree() + 1;
        c.var_lo = v->first;
        c.var_hi = v->second;
        c.roots = c.var_lo - c.var_hi;
        return c;
      }
    }
  }
  // The rational chain ends in gcd(p, p') rather than a constant; that common
  // factor changes no variation count, so p need not be made square-free.
  const Poly sf = rational ? p : square_free(p);
  if (sf.degree() <= 0) {
    c.chain_length = 1;
    return c;
  }
  const auto chain = rational ? rational_sturm_chain(p) : sturm_chain(sf);
  c.chain_length = static_cast<int>(chain.size());
  if (range.whole_line) {
    c.var_lo = variations_at_infinity(chain, -1);
    c.var_hi = variations_at_infinity(chain, 1);
  } else {
    if (range.lo > range.hi) return c;
    c.endpoint_roots = (sf(range.lo).is_zero() ? 1 : 0) +
                       (range.lo != range.hi && sf(range.hi).is_zero() ? 1 : 0);
    if (range.lo != range.hi) {
      c.var_lo = variations_at(chain, range.lo, 1);
      c.var_hi = variations_at(chain, range.hi, -1);
    }
  }
  c.roots = c.var_lo - c.var_hi + c.endpoint_roots;
  return c;
}

}  // namespace

SturmCertificate sturm_certificate(const Poly& p, const RootRange& range) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "root count of the zero polynomial");
  return direct_certificate(p, range);
}

int sturm_root_count(const Poly& p, const RootRange& range) { return sturm_certificate(p, range).roots; }

namespace {

void bisect(const Poly& p, Scalar a, Scalar b, int count, std::vector<std::pair<Scalar, Scalar>>& out) {
  while (count == 1 || count > 1) {
    if (count == 1) {
      out.emplace_back(a, b);
      return;
    }
    const Scalar mid = (a + b) * Scalar(1, 2);
    const int left = sturm_root_count(p, RootRange::closed(a, mid));
    const int mid_root = p(mid).is_zero() ? 1 : 0;
    if (mid_root) out.emplace_back(mid, mid);
    if (left - mid_root > 0) {
      // roots strictly left of mid: shrink to [a, mid) via a closed sub-interval
      Scalar m2 = mid;
      if (mid_root) {
        Scalar step = (mid - a) * Scalar(1, 2);
        while (sturm_root_count(p, RootRange::closed(a, mid - step)) != left - 1) step *= Scalar(1, 2);
        m2 = mid - step;
      }
      bisect(p, a, m2, left - mid_root, out);
    }
    const int right = count - left;
    if (right <= 0) return;
    Scalar a2 = mid;
    if (mid_root) {
      Scalar step = (b - mid) * Scalar(1, 2);
      while (sturm_root_count(p, RootRange::closed(mid + step, b)) != right) step *= Scalar(1, 2);
      a2 = mid + step;
    }
    a = a2;
    count = right;
  }
}

}  // namespace

std::vector<std::pair<Scalar, Scalar>> isolate_roots(const Poly& p, const RootRange& range) {
  const int total = sturm_root_count(p, range);
  std::vector<std::pair<Scalar, Scalar>> out;
  if (total == 0) return out;
  Scalar a, b;
  if (range.whole_line) {
    Scalar bound(1);
    while (sturm_root_count(p, RootRange::closed(-bound, bound)) < total) bound *= Scalar(2);
    a = -bound;
    b = bound;
  } else {
    a = range.lo;
    b = range.hi;
  }
  bisect(square_free(p), a, b, total, out);
  return out;
}

}  // namespace jetmove
