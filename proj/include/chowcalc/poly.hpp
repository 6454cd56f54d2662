// Dense univariate polynomials over Z and Q, plus the coefficient-sequence
// analysis used throughout: palindromicity, unimodality, log-concavity,
// gamma-vectors, and exact real-rootedness certificates via Sturm chains
// computed with sign-corrected integer pseudo-remainders.  Also truncated
// power series in t with Q[x] coefficients (needed for the generating-series
// functional equations).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chowcalc/numbers.hpp"

namespace chowcalc {

// Coefficients ascending by degree; no trailing zeros; zero poly is empty.
class IntPoly {
public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs);

  static IntPoly constant(Int v);
  static IntPoly monomial(int deg, Int coeff = 1);
  // x^lo + x^{lo+1} + ... + x^hi; zero when hi < lo.
  static IntPoly geometric(int lo, int hi);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 if zero
  Int coeff(int i) const;
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& leading() const;

  Int eval(const Int& x) const;
  Int at_one() const;

  IntPoly operator-() const;
  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly operator*(const Int& k) const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  IntPoly shifted(int k) const;  // multiply by x^k
  IntPoly pow(unsigned e) const;
  IntPoly derivative() const;
  // Positive gcd of coefficients (0 for the zero polynomial).
  Int content() const;

  std::string str() const;  // human-readable, e.g. "1 + 4x + 5x^2"

private:
  void strip();
  std::vector<Int> c_;
};

// Quotient of num by den when the division is exact over Z[x]; throws
// NonzeroRemainder otherwise (also when the quotient fails to be integral).
IntPoly exact_divide(const IntPoly& num, const IntPoly& den);

// Primitive gcd (leading coefficient > 0) via a primitive pseudo-remainder
// sequence.  gcd(p, 0) = primitive part of p.
IntPoly gcd_poly(IntPoly a, IntPoly b);

// p / gcd(p, p'); primitive, leading coefficient > 0.
IntPoly squarefree_part(const IntPoly& p);

// Number of distinct real roots, by Sturm's theorem applied to the
// squarefree part.  Exact integer arithmetic throughout.
int count_real_roots(const IntPoly& p);

struct PropertyReport {
  bool palindromic = false;
  bool unimodal = false;
  bool log_concave = false;
  // Least internal index i with a_i^2 < a_{i-1} a_{i+1}, when not log-concave.
  std::optional<int> first_violation_index;
  // Present iff palindromic: p = sum gamma_i x^i (1+x)^{d-2i}.
  std::optional<std::vector<Int>> gamma;
  std::optional<bool> gamma_positive;
  bool real_rooted = false;
};

// Requires a nonzero polynomial with nonnegative coefficients; throws
// ZeroPolynomial / NegativeCoefficient otherwise.
PropertyReport check_properties(const IntPoly& p);

// ---------------------------------------------------------------------------

class RatPoly {
public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs);
  RatPoly(const IntPoly& p);  // implicit widening is intended

  static RatPoly constant(Rat v);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rat coeff(int i) const;
  const std::vector<Rat>& coeffs() const { return c_; }

  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly& operator+=(const RatPoly& o);
  RatPoly operator*(const Rat& k) const;
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

  Rat eval(const Rat& x) const;
  bool is_integral() const;
  IntPoly to_int() const;  // throws NonIntegralCoefficient

  std::string str() const;

private:
  void strip();
  std::vector<Rat> c_;
};

// Truncated power series sum_{k=0}^{N} a_k t^k with a_k in Q[x].
class Series {
public:
  explicit Series(int order);  // all coefficients zero
  static Series t(int order);

  int order() const { return order_; }
  const RatPoly& coeff(int k) const { return a_[k]; }
  void set_coeff(int k, RatPoly v);

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator*(const Series& o) const;
  Series scale(const RatPoly& f) const;  // multiply every coefficient by f(x)
  bool operator==(const Series& o) const;

  // outer(inner); requires inner to have zero constant term.
  static Series compose(const Series& outer, const Series& inner);

private:
  int order_;
  std::vector<RatPoly> a_;
};

}  // namespace chowcalc
