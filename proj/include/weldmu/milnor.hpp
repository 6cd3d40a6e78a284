#pragma once

/*
 * Milnor invariants of based welded link diagrams.
 *
 * Fix a diagram with base points and its arc table.  The partial longitude
 * of component i after j under passes is v_{ij} = u_{i1}^{e_{i1}} ...
 * u_{ij}^{e_{ij}}; the preferred longitude is l_i = a_{i1}^{-w_i} v_{i,m_i},
 * both freely reduced words in the arc letters.
 *
 * The maps eta_q send arc letters to the free group on alpha_1..alpha_n:
 *
 *     eta_1(a_{ij}) = alpha_i
 *     eta_{q+1}(a_{i1}) = alpha_i
 *     eta_{q+1}(a_{ij}) = eta_q(v_{i,j-1})^{-1} alpha_i eta_q(v_{i,j-1})
 *
 * Composing with the Magnus expansion E and truncating at degree d turns the
 * recursion into ring arithmetic, which is how it is evaluated here; the
 * result agrees with expanding the free-group words exactly, coefficient by
 * coefficient up to degree d.
 *
 * For a sequence I = j_1 ... j_s i (2 <= |I|), mu(I) is the coefficient of
 * X_{j_1} ... X_{j_s} in E(eta_q(l_i)); it stabilizes once q > s, so q = |I|
 * and d = |I| - 1 suffice.  delta(I) is the gcd of mu over all sequences
 * obtained by deleting at least one index and cyclically permuting what is
 * left; mu-bar(I) is mu(I) mod delta(I), the residue taken in [0, delta).
 * mu of non-repeated sequences, and mu-bar in general, are invariants of the
 * welded link; mu itself depends on the base points only through multiples
 * of delta.
 */

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weldmu/bigint.hpp"
#include "weldmu/gauss.hpp"
#include "weldmu/series.hpp"

namespace weldmu::milnor {

class MilnorError : public std::runtime_error {
 public:
  explicit MilnorError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Letter {
  gauss::ArcId arc{};
  int exp{};  // +1 or -1
  bool operator==(const Letter&) const = default;
};

// Freely reduced word in arc letters: push cancels against the tail.
class ArcWord {
 public:
  void push(gauss::ArcId arc, int exp);
  void append(const ArcWord& w);
  // Pushes |e| copies of arc with the sign of e; no-op when e = 0.
  void append_power(gauss::ArcId arc, int e);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  // "a21^-1 a11 a23"; the empty word renders as "".
  std::string to_string() const;
  bool operator==(const ArcWord&) const = default;

 private:
  std::vector<Letter> letters_;
};

// v_{ij} for 0 <= j <= m_i (j = 0 gives the empty word).
ArcWord partial_longitude(const gauss::ArcTable& t, int i, int j);
// l_i = a_{i1}^{-w_i} v_{i,m_i}; the empty word when m_i = 0.
ArcWord preferred_longitude(const gauss::ArcTable& t, int i);
// Rendered preferred longitudes of all components, in component order.
std::vector<std::string> longitude_words(const gauss::Diagram& d, const gauss::BasePoints& p);

struct MagnusAssignment {
  int q{};
  int d{};
  int n{};
  std::map<gauss::ArcId, series::TruncatedSeries> table;

  const series::TruncatedSeries& at(gauss::ArcId a) const;
};

// E(eta_q(-)) on every arc letter, truncated at degree d.
MagnusAssignment eta_iterate(const gauss::ArcTable& t, int q, int d);
series::TruncatedSeries evaluate_word(const MagnusAssignment& m, const ArcWord& w);

using Sequence = std::vector<int>;         // component indices, 1-based
using SequenceOrder = series::MonomialOrder;  // (length, lex), same shape

bool is_non_repeated(const Sequence& I);
// "123" for n <= 9, "1,2,3" otherwise.
std::string sequence_to_string(const Sequence& I, int n);

struct MuTable {
  int n{};
  int rmax{};
  std::map<Sequence, Int, SequenceOrder> values;

  const Int& at(const Sequence& I) const;
};

Int mu(const gauss::Diagram& d, const gauss::BasePoints& p, const Sequence& I);
// All sequences of lengths 2..rmax over 1..n, repeated indices included.
MuTable mu_table(const gauss::Diagram& d, const gauss::BasePoints& p, int rmax);

// gcd over proper delete-then-rotate subsequences of length >= 2; zero for
// |I| = 2 and when every such mu vanishes.  Needs table.rmax >= |I| - 1.
Int delta(const MuTable& table, const Sequence& I);

struct MuBar {
  Sequence sequence;
  Int mu;
  Int delta;    // >= 0
  Int residue;  // mu mod delta in [0, delta) when delta > 0, else mu
  bool operator==(const MuBar&) const = default;
  // The welded invariant is the pair (delta, residue); mu alone is not one.
  bool same_invariant(const MuBar& rhs) const {
    return delta == rhs.delta && residue == rhs.residue;
  }
};

MuBar mu_bar_from_table(const MuTable& table, const Sequence& I);
MuBar mu_bar(const gauss::Diagram& d, const gauss::BasePoints& p, const Sequence& I);

// mu computed through the reduced map that kills the last index k of I
// (substitute 0 for X_k throughout); equals mu(I) when I is non-repeated.
// Repeated sequences are rejected.
Int mu_reduced(const gauss::Diagram& d, const gauss::BasePoints& p, const Sequence& I);

struct SvResult {
  bool equivalent{};
  std::optional<Sequence> witness;  // first differing sequence in (length, lex) order
};

// Self-crossing virtualization preserves mu of non-repeated sequences, and
// sequences longer than n repeat, so comparing all non-repeated sequences of
// lengths 2..n decides SV-equivalence of based diagrams.
SvResult sv_equivalent(const gauss::Diagram& d1, const gauss::BasePoints& p1,
                       const gauss::Diagram& d2, const gauss::BasePoints& p2);

}  // namespace weldmu::milnor
