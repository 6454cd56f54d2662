#include "chowcalc/poly.hpp"

#include <algorithm>
#include <sstream>

#include "chowcalc/errors.hpp"

namespace chowcalc {

// ----------------------------------------------------------------- numbers

std::string rat_to_string(const Rat& v) {
  Int num = boost::multiprecision::numerator(v);
  Int den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Int int_from_string(const std::string& s) {
  try {
    if (s.empty()) fail(Err::ParseError, "empty integer literal");
    return Int(s);
  } catch (const std::exception&) {
    fail(Err::ParseError, "bad integer literal '" + s + "'");
  }
}

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(int_from_string(s));
  Int num = int_from_string(s.substr(0, slash));
  Int den = int_from_string(s.substr(slash + 1));
  if (den == 0) fail(Err::ParseError, "zero denominator in '" + s + "'");
  return Rat(num, den);
}

Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

// ----------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { strip(); }

void IntPoly::strip() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(Int v) {
  IntPoly p;
  if (v != 0) p.c_.push_back(std::move(v));
  return p;
}

IntPoly IntPoly::monomial(int deg, Int coeff) {
  IntPoly p;
  if (coeff != 0) {
    p.c_.assign(deg + 1, Int(0));
    p.c_[deg] = std::move(coeff);
  }
  return p;
}

IntPoly IntPoly::geometric(int lo, int hi) {
  IntPoly p;
  if (hi >= lo) {
    p.c_.assign(hi + 1, Int(0));
    for (int i = lo; i <= hi; ++i) p.c_[i] = 1;
  }
  return p;
}

Int IntPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

const Int& IntPoly::leading() const {
  if (c_.empty()) fail(Err::ZeroPolynomial, "leading coefficient of 0");
  return c_.back();
}

Int IntPoly::eval(const Int& x) const {
  Int r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Int IntPoly::at_one() const {
  Int r = 0;
  for (const auto& v : c_) r += v;
  return r;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  IntPoly r = *this;
  r += o;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Int(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  strip();
  return *this;
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  IntPoly r = *this;
  r -= o;
  return r;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Int(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  strip();
  return *this;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  IntPoly r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Int(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  }
  r.strip();
  return r;
}

IntPoly IntPoly::operator*(const Int& k) const {
  if (k == 0) return {};
  IntPoly r = *this;
  for (auto& v : r.c_) v *= k;
  return r;
}

IntPoly IntPoly::shifted(int k) const {
  if (is_zero()) return {};
  IntPoly r;
  r.c_.assign(c_.size() + k, Int(0));
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
  return r;
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly r = IntPoly::constant(1);
  IntPoly base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

IntPoly IntPoly::derivative() const {
  IntPoly r;
  for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(c_[i] * Int(i));
  r.strip();
  return r;
}

Int IntPoly::content() const {
  Int g = 0;
  for (const auto& v : c_) g = boost::multiprecision::gcd(g, v);
  return boost::multiprecision::abs(g);
}

std::string IntPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Int a = c_[i];
    if (first) {
      if (a < 0) os << "-";
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    Int mag = boost::multiprecision::abs(a);
    if (i == 0) {
      os << mag.str();
    } else {
      if (mag != 1) os << mag.str();
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

// --------------------------------------------------------- division & gcd

IntPoly exact_divide(const IntPoly& num, const IntPoly& den) {
  if (den.is_zero()) fail(Err::ZeroPolynomial, "division by zero polynomial");
  if (num.is_zero()) return {};
  if (num.degree() < den.degree())
    fail(Err::NonzeroRemainder, "degree of numerator below divisor");
  // Long division over Q, then insist the quotient is integral and the
  // remainder vanishes.
  std::vector<Rat> rem(num.coeffs().begin(), num.coeffs().end());
  int dn = num.degree(), dd = den.degree();
  Rat lead = Rat(den.leading());
  std::vector<Rat> quo(dn - dd + 1, Rat(0));
  for (int i = dn; i >= dd; --i) {
    Rat q = rem[i] / lead;
    quo[i - dd] = q;
    if (q == 0) continue;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= q * Rat(den.coeff(j));
  }
  for (const auto& r : rem)
    if (r != 0) fail(Err::NonzeroRemainder, "polynomial division not exact");
  std::vector<Int> out;
  out.reserve(quo.size());
  for (const auto& q : quo) {
    if (boost::multiprecision::denominator(q) != 1)
      fail(Err::NonzeroRemainder, "quotient not integral");
    out.push_back(boost::multiprecision::numerator(q));
  }
  return IntPoly(std::move(out));
}

namespace {

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return {};
  IntPoly q = exact_divide(p, IntPoly::constant(p.content()));
  if (q.leading() < 0) q = -q;
  return q;
}

// Pseudo-remainder: prem = lc(g)^{deg f - deg g + 1} * f  mod  g  (in Z[x]).
IntPoly prem(IntPoly f, const IntPoly& g) {
  int d = f.degree() - g.degree() + 1;
  const Int& lg = g.leading();
  int steps = 0;
  while (!f.is_zero() && f.degree() >= g.degree()) {
    Int lf = f.leading();
    int shift = f.degree() - g.degree();
    f = f * lg - g.shifted(shift) * lf;
    ++steps;
  }
  // pad the multiplier so it is exactly lg^d regardless of cancellation
  for (; steps < d; ++steps) f = f * lg;
  return f;
}

}  // namespace

IntPoly gcd_poly(IntPoly a, IntPoly b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = primitive_part(prem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.is_zero()) fail(Err::ZeroPolynomial, "squarefree part of 0");
  IntPoly pp = primitive_part(p);
  if (pp.degree() == 0) return IntPoly::constant(1);
  IntPoly g = gcd_poly(pp, pp.derivative());
  return primitive_part(exact_divide(pp, g));
}

namespace {

int sign_of(const Int& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Divide by the positive content — rescaling by a positive constant keeps
// every sign evaluation of the Sturm chain intact.
IntPoly shrink_positive(const IntPoly& p) {
  if (p.is_zero()) return {};
  return exact_divide(p, IntPoly::constant(p.content()));
}

}  // namespace

int count_real_roots(const IntPoly& p) {
  if (p.is_zero()) fail(Err::ZeroPolynomial, "root count of 0");
  IntPoly f = squarefree_part(p);
  if (f.degree() == 0) return 0;
  // Sturm chain: p0 = f, p1 = f', p_{i+1} = -rem(p_{i-1}, p_i) up to positive
  // factors.  prem multiplies by lc^{delta+1}; when that multiplier is
  // negative, the pseudo-remainder already carries the sign of +rem, so the
  // correction below keeps each element a positive multiple of the true
  // negated remainder.
  std::vector<IntPoly> chain;
  chain.push_back(f);
  chain.push_back(f.derivative());
  while (!chain.back().is_zero() && chain.back().degree() >= 0) {
    const IntPoly& a = chain[chain.size() - 2];
    const IntPoly& b = chain.back();
    if (b.degree() == 0) break;
    int delta = a.degree() - b.degree();
    IntPoly r = prem(a, b);
    Int mult = boost::multiprecision::pow(b.leading(), unsigned(delta + 1));
    IntPoly next = (mult > 0) ? -r : r;
    if (next.is_zero()) break;
    chain.push_back(shrink_positive(next));
  }
  auto sign_changes = [&](bool at_plus_inf) {
    int changes = 0, prev = 0;
    for (const IntPoly& q : chain) {
      if (q.is_zero()) continue;
      int s = sign_of(q.leading());
      if (!at_plus_inf && (q.degree() & 1)) s = -s;
      if (prev != 0 && s != 0 && s != prev) ++changes;
      if (s != 0) prev = s;
    }
    return changes;
  };
  return sign_changes(false) - sign_changes(true);
}

// ------------------------------------------------------- property analysis

PropertyReport check_properties(const IntPoly& p) {
  if (p.is_zero()) fail(Err::ZeroPolynomial, "property check on 0");
  for (const auto& v : p.coeffs())
    if (v < 0)
      fail(Err::NegativeCoefficient,
           "property check requires nonnegative coefficients, got " + p.str());

  PropertyReport rep;
  const auto& a = p.coeffs();
  int d = p.degree();

  rep.palindromic = true;
  for (int i = 0; i <= d; ++i)
    if (a[i] != a[d - i]) {
      rep.palindromic = false;
      break;
    }

  {
    int i = 0;
    while (i < d && a[i] <= a[i + 1]) ++i;
    rep.unimodal = true;
    for (; i < d; ++i)
      if (a[i] < a[i + 1]) {
        rep.unimodal = false;
        break;
      }
  }

  rep.log_concave = true;
  for (int i = 1; i < d; ++i) {
    if (a[i] * a[i] < a[i - 1] * a[i + 1]) {
      rep.log_concave = false;
      rep.first_violation_index = i;
      break;
    }
  }

  if (rep.palindromic) {
    // Repeatedly peel gamma_i x^i (1+x)^{d-2i}; the basis {x^i (1+x)^{d-2i}}
    // spans the palindromic polynomials of degree d, so the residual must hit
    // exactly zero.
    std::vector<Int> gamma;
    IntPoly residual = p;
    IntPoly one_plus_x = IntPoly::geometric(0, 1);
    for (int i = 0; 2 * i <= d; ++i) {
      Int gi = residual.coeff(i);
      gamma.push_back(gi);
      if (gi != 0)
        residual -= IntPoly::monomial(i, gi) * one_plus_x.pow(d - 2 * i);
    }
    if (!residual.is_zero())
      fail(Err::InternalError, "gamma extraction left a residual for " + p.str());
    bool pos = true;
    for (const auto& g : gamma)
      if (g < 0) pos = false;
    rep.gamma = std::move(gamma);
    rep.gamma_positive = pos;
  }

  rep.real_rooted = (count_real_roots(p) == squarefree_part(p).degree());
  return rep;
}

// ----------------------------------------------------------------- RatPoly

RatPoly::RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { strip(); }

RatPoly::RatPoly(const IntPoly& p) {
  c_.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c_.emplace_back(v);
}

void RatPoly::strip() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly RatPoly::constant(Rat v) {
  RatPoly p;
  if (v != 0) p.c_.push_back(std::move(v));
  return p;
}

Rat RatPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
  return c_[i];
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  RatPoly r = *this;
  r += o;
  return r;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  strip();
  return *this;
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
  RatPoly r = *this;
  if (r.c_.size() < o.c_.size()) r.c_.resize(o.c_.size(), Rat(0));
  for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] -= o.c_[i];
  r.strip();
  return r;
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  RatPoly r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  }
  r.strip();
  return r;
}

RatPoly RatPoly::operator*(const Rat& k) const {
  if (k == 0) return {};
  RatPoly r = *this;
  for (auto& v : r.c_) v *= k;
  return r;
}

Rat RatPoly::eval(const Rat& x) const {
  Rat r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

bool RatPoly::is_integral() const {
  for (const auto& v : c_)
    if (boost::multiprecision::denominator(v) != 1) return false;
  return true;
}

IntPoly RatPoly::to_int() const {
  std::vector<Int> out;
  out.reserve(c_.size());
  for (const auto& v : c_) {
    if (boost::multiprecision::denominator(v) != 1)
      fail(Err::NonIntegralCoefficient,
           "coefficient " + rat_to_string(v) + " is not an integer");
    out.push_back(boost::multiprecision::numerator(v));
  }
  return IntPoly(std::move(out));
}

std::string RatPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << rat_to_string(c_[i]);
    if (i >= 1) {
      os << "*x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

// ------------------------------------------------------------------ Series

Series::Series(int order) : order_(order), a_(order + 1) {}

Series Series::t(int order) {
  Series s(order);
  if (order >= 1) s.a_[1] = RatPoly::constant(Rat(1));
  return s;
}

void Series::set_coeff(int k, RatPoly v) {
  if (k < 0 || k > order_) fail(Err::InternalError, "series index out of range");
  a_[k] = std::move(v);
}

Series Series::operator+(const Series& o) const {
  if (order_ != o.order_) fail(Err::InternalError, "series order mismatch");
  Series r(order_);
  for (int k = 0; k <= order_; ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

Series Series::operator-(const Series& o) const {
  if (order_ != o.order_) fail(Err::InternalError, "series order mismatch");
  Series r(order_);
  for (int k = 0; k <= order_; ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

Series Series::operator*(const Series& o) const {
  if (order_ != o.order_) fail(Err::InternalError, "series order mismatch");
  Series r(order_);
  for (int i = 0; i <= order_; ++i) {
    if (a_[i].is_zero()) continue;
    for (int j = 0; i + j <= order_; ++j) {
      if (o.a_[j].is_zero()) continue;
      r.a_[i + j] += a_[i] * o.a_[j];
    }
  }
  return r;
}

Series Series::scale(const RatPoly& f) const {
  Series r(order_);
  for (int k = 0; k <= order_; ++k) r.a_[k] = a_[k] * f;
  return r;
}

bool Series::operator==(const Series& o) const {
  if (order_ != o.order_) return false;
  for (int k = 0; k <= order_; ++k)
    if (!(a_[k] == o.a_[k])) return false;
  return true;
}

Series Series::compose(const Series& outer, const Series& inner) {
  if (outer.order_ != inner.order_)
    fail(Err::InternalError, "series order mismatch in compose");
  if (!inner.a_[0].is_zero())
    fail(Err::InternalError, "compose requires inner constant term 0");
  int N = outer.order_;
  Series r(N);
  r.a_[0] = outer.a_[0];
  Series power(N);  // inner^k, starting at k=1
  power = inner;
  for (int k = 1; k <= N; ++k) {
    if (!outer.a_[k].is_zero()) r = r + power.scale(outer.a_[k]);
    if (k < N) power = power * inner;
  }
  return r;
}

// ------------------------------------------------------------------ errors

const char* err_name(Err e) {
  switch (e) {
    case Err::ZeroPolynomial: return "ZeroPolynomial";
    case Err::NegativeCoefficient: return "NegativeCoefficient";
    case Err::NonzeroRemainder: return "NonzeroRemainder";
    case Err::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case Err::RankAxiomViolation: return "RankAxiomViolation";
    case Err::NotLoopless: return "NotLoopless";
    case Err::NotAMatroid: return "NotAMatroid";
    case Err::GroundTooLarge: return "GroundTooLarge";
    case Err::UnknownElement: return "UnknownElement";
    case Err::NotALattice: return "NotALattice";
    case Err::LatticeTooLarge: return "LatticeTooLarge";
    case Err::UnknownFlat: return "UnknownFlat";
    case Err::NotABuildingSet: return "NotABuildingSet";
    case Err::NotNested: return "NotNested";
    case Err::TooManyChains: return "TooManyChains";
    case Err::NoValidOrdering: return "NoValidOrdering";
    case Err::NonInvertibleDiagonal: return "NonInvertibleDiagonal";
    case Err::IdentityViolated: return "IdentityViolated";
    case Err::EngineDisagreement: return "EngineDisagreement";
    case Err::NonIntegralKeelTerm: return "NonIntegralKeelTerm";
    case Err::TruncationResidue: return "TruncationResidue";
    case Err::ParseError: return "ParseError";
    case Err::GoldenMismatch: return "GoldenMismatch";
    case Err::InternalError: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace chowcalc
