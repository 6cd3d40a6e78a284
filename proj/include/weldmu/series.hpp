#pragma once

/*
 * Truncated Magnus ring.
 *
 * Elements live in Z<<X_1,...,X_n>> / (words of length > d): formal power
 * series in n non-commuting variables with integer coefficients, truncated
 * at total degree d.  The Magnus expansion sends a free group generator
 * alpha_i to 1 + X_i and its inverse to 1 - X_i + X_i^2 - ... (truncated),
 * so group elements map to units with constant term 1.
 *
 * Truncation is a ring quotient: a coefficient of degree <= d of a product
 * depends only on coefficients of degree <= d of the factors.  That makes
 * evaluating long words directly in this ring exact for every retained
 * coefficient, which is what the longitude pipeline relies on.
 */

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "weldmu/bigint.hpp"

namespace weldmu::series {

class SeriesError : public std::runtime_error {
 public:
  explicit SeriesError(const std::string& msg) : std::runtime_error(msg) {}
};

// A monomial is the sequence of variable indices (1-based), e.g. X_1 X_2 X_1
// is {1, 2, 1}.  The empty monomial is the constant term.
using Monomial = std::vector<int>;

// Degree first, then lexicographic.  This is the display order and the
// iteration order everywhere, so output is deterministic.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

class TruncatedSeries {
 public:
  using Terms = std::map<Monomial, Int, MonomialOrder>;

  TruncatedSeries(int vars, int degree_cap);

  static TruncatedSeries zero(int vars, int degree_cap);
  static TruncatedSeries one(int vars, int degree_cap);
  // Magnus image of the generator alpha_i: 1 + X_i.
  static TruncatedSeries var(int i, int vars, int degree_cap);
  // The bare variable X_i, occasionally handy in tests.
  static TruncatedSeries gen(int i, int vars, int degree_cap);

  int vars() const { return n_; }
  int degree_cap() const { return d_; }
  const Terms& terms() const { return terms_; }

  // Coefficient of m; zero if absent.  A monomial longer than the cap is a
  // caller error (the truncation already discarded it).
  const Int& coeff(const Monomial& m) const;
  void set_coeff(const Monomial& m, Int value);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;

  TruncatedSeries operator-() const;
  TruncatedSeries& operator+=(const TruncatedSeries& rhs);
  TruncatedSeries& operator-=(const TruncatedSeries& rhs);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  TruncatedSeries& operator*=(const TruncatedSeries& rhs) { return *this = *this * rhs; }

  // Two-sided inverse of a unit whose constant term is +1 or -1, via the
  // geometric series of the degree >= 1 part.  Exact in the quotient.
  TruncatedSeries inverse() const;

  // Ring homomorphism X_k -> 0: drops every term whose monomial mentions k.
  TruncatedSeries subst_zero(int k) const;

  // Re-truncate to a smaller cap (new_cap <= degree_cap).
  TruncatedSeries truncated(int new_cap) const;

  bool operator==(const TruncatedSeries& rhs) const = default;

  // Debug rendering: terms in (degree, lex) order, e.g. "1 - X1X2 + X2X1".
  // Unambiguous for n <= 9; for larger n the variable numerals run together.
  std::string to_string() const;

 private:
  void check_compatible(const TruncatedSeries& rhs, const char* op) const;

  int n_;
  int d_;
  Terms terms_;
};

}  // namespace weldmu::series
