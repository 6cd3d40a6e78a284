#include "weldmu/milnor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace weldmu::milnor {

using gauss::ArcId;
using gauss::ArcTable;
using gauss::BasePoints;
using gauss::Diagram;
using series::TruncatedSeries;

void ArcWord::push(ArcId arc, int exp) {
  if (exp != 1 && exp != -1) throw MilnorError("letter exponent must be +1 or -1");
  if (!letters_.empty() && letters_.back().arc == arc && letters_.back().exp == -exp)
    letters_.pop_back();
  else
    letters_.push_back({arc, exp});
}

void ArcWord::append(const ArcWord& w) {
  for (const Letter& l : w.letters_) push(l.arc, l.exp);
}

void ArcWord::append_power(ArcId arc, int e) {
  int step = e > 0 ? 1 : -1;
  for (int k = 0; k != e; k += step) push(arc, step);
}

std::string ArcWord::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (k) os << ' ';
    os << gauss::to_string(letters_[k].arc);
    if (letters_[k].exp < 0) os << "^-1";
  }
  return os.str();
}

ArcWord partial_longitude(const ArcTable& t, int i, int j) {
  const gauss::ComponentArcs& ca = t.comp(i);
  if (j < 0 || j > ca.under_count)
    throw MilnorError("partial longitude index " + std::to_string(j) + " out of range 0.." +
                      std::to_string(ca.under_count));
  ArcWord w;
  for (int k = 0; k < j; ++k) w.push(ca.unders[k].over_arc, ca.unders[k].sign);
  return w;
}

ArcWord preferred_longitude(const ArcTable& t, int i) {
  const gauss::ComponentArcs& ca = t.comp(i);
  ArcWord w;
  w.append_power(ArcId{i, 1}, -ca.self_writhe);
  w.append(partial_longitude(t, i, ca.under_count));
  return w;
}

std::vector<std::string> longitude_words(const Diagram& d, const BasePoints& p) {
  ArcTable t = gauss::arc_table(d, p);
  std::vector<std::string> out;
  out.reserve(t.n);
  for (int i = 1; i <= t.n; ++i) out.push_back(preferred_longitude(t, i).to_string());
  return out;
}

const TruncatedSeries& MagnusAssignment::at(ArcId a) const {
  auto it = table.find(a);
  if (it == table.end())
    throw MilnorError("no eta value for letter " + gauss::to_string(a));
  return it->second;
}

MagnusAssignment eta_iterate(const ArcTable& t, int q, int d) {
  if (q < 1) throw MilnorError("eta iteration needs q >= 1");
  if (d < 0) throw MilnorError("eta iteration needs d >= 0");
  MagnusAssignment out;
  out.q = q;
  out.d = d;
  out.n = t.n;

  std::map<ArcId, TruncatedSeries> cur;
  for (int i = 1; i <= t.n; ++i)
    for (int j = 1; j <= t.arc_count(i); ++j)
      cur.emplace(ArcId{i, j}, TruncatedSeries::var(i, t.n, d));

  for (int step = 2; step <= q; ++step) {
    std::map<ArcId, TruncatedSeries> next;
    for (int i = 1; i <= t.n; ++i) {
      const gauss::ComponentArcs& ca = t.comp(i);
      TruncatedSeries gen = TruncatedSeries::var(i, t.n, d);
      // prefix tracks eta_{step-1}(v_{i,j-1}), prefix_inv its inverse.
      TruncatedSeries prefix = TruncatedSeries::one(t.n, d);
      TruncatedSeries prefix_inv = prefix;
      for (int j = 1; j <= t.arc_count(i); ++j) {
        if (j == 1)
          next.emplace(ArcId{i, j}, gen);
        else
          next.emplace(ArcId{i, j}, prefix_inv * gen * prefix);
        if (j <= ca.under_count) {
          const TruncatedSeries& u = cur.at(ca.unders[j - 1].over_arc);
          TruncatedSeries u_inv = u.inverse();
          if (ca.unders[j - 1].sign > 0) {
            prefix = prefix * u;
            prefix_inv = u_inv * prefix_inv;
          } else {
            prefix = prefix * u_inv;
            prefix_inv = u * prefix_inv;
          }
        }
      }
    }
    cur = std::move(next);
  }
  out.table = std::move(cur);
  return out;
}

TruncatedSeries evaluate_word(const MagnusAssignment& m, const ArcWord& w) {
  TruncatedSeries acc = TruncatedSeries::one(m.n, m.d);
  for (const Letter& l : w.letters()) {
    const TruncatedSeries& v = m.at(l.arc);
    acc = l.exp > 0 ? acc * v : acc * v.inverse();
  }
  return acc;
}

bool is_non_repeated(const Sequence& I) {
  std::set<int> seen(I.begin(), I.end());
  return seen.size() == I.size();
}

std::string sequence_to_string(const Sequence& I, int n) {
  std::ostringstream os;
  for (std::size_t k = 0; k < I.size(); ++k) {
    if (n > 9 && k) os << ',';
    os << I[k];
  }
  return os.str();
}

namespace {

void check_sequence(const Sequence& I, int n, int min_len) {
  if (static_cast<int>(I.size()) < min_len)
    throw MilnorError("sequence of length " + std::to_string(I.size()) + " too short; need >= " +
                      std::to_string(min_len));
  for (int idx : I)
    if (idx < 1 || idx > n)
      throw MilnorError("sequence index " + std::to_string(idx) + " out of range 1.." +
                        std::to_string(n));
}

}  // namespace

const Int& MuTable::at(const Sequence& I) const {
  auto it = values.find(I);
  if (it == values.end())
    throw MilnorError("mu(" + sequence_to_string(I, n) + ") not in a table with rmax = " +
                      std::to_string(rmax));
  return it->second;
}

Int mu(const Diagram& d, const BasePoints& p, const Sequence& I) {
  const int n = d.component_count();
  check_sequence(I, n, 2);
  const int r = static_cast<int>(I.size());
  ArcTable t = gauss::arc_table(d, p);
  MagnusAssignment m = eta_iterate(t, r, r - 1);
  TruncatedSeries e = evaluate_word(m, preferred_longitude(t, I.back()));
  return e.coeff(series::Monomial(I.begin(), I.end() - 1));
}

MuTable mu_table(const Diagram& d, const BasePoints& p, int rmax) {
  const int n = d.component_count();
  if (rmax < 2) throw MilnorError("mu table needs rmax >= 2");
  ArcTable t = gauss::arc_table(d, p);
  MagnusAssignment m = eta_iterate(t, rmax, rmax - 1);

  MuTable out;
  out.n = n;
  out.rmax = rmax;
  std::vector<TruncatedSeries> longitude;
  longitude.reserve(n);
  for (int i = 1; i <= n; ++i)
    longitude.push_back(evaluate_word(m, preferred_longitude(t, i)));

  // Odometer over monomials j_1..j_s, s = 1..rmax-1; the table key appends
  // the target component.
  for (int s = 1; s <= rmax - 1; ++s) {
    Sequence mono(s, 1);
    while (true) {
      for (int i = 1; i <= n; ++i) {
        Sequence key = mono;
        key.push_back(i);
        out.values.emplace(std::move(key), longitude[i - 1].coeff(mono));
      }
      int pos = s - 1;
      while (pos >= 0 && mono[pos] == n) mono[pos--] = 1;
      if (pos < 0) break;
      ++mono[pos];
    }
  }
  return out;
}

Int delta(const MuTable& table, const Sequence& I) {
  check_sequence(I, table.n, 2);
  const int r = static_cast<int>(I.size());
  if (r - 1 > table.rmax)
    throw MilnorError("delta of a length-" + std::to_string(r) +
                      " sequence needs a table with rmax >= " + std::to_string(r - 1));
  if (r == 2) return 0;

  std::set<Sequence> subs;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    int s = __builtin_popcount(mask);
    if (s < 2 || s >= r) continue;
    Sequence j;
    j.reserve(s);
    for (int k = 0; k < r; ++k)
      if (mask & (1u << k)) j.push_back(I[k]);
    for (int rot = 0; rot < s; ++rot) {
      subs.insert(j);
      std::rotate(j.begin(), j.begin() + 1, j.end());
    }
  }
  Int g = 0;
  for (const Sequence& j : subs) g = boost::multiprecision::gcd(g, abs_int(table.at(j)));
  return g;
}

MuBar mu_bar_from_table(const MuTable& table, const Sequence& I) {
  MuBar out;
  out.sequence = I;
  out.mu = table.at(I);
  out.delta = delta(table, I);
  out.residue = out.delta == 0 ? out.mu : Int((out.mu % out.delta + out.delta) % out.delta);
  return out;
}

MuBar mu_bar(const Diagram& d, const BasePoints& p, const Sequence& I) {
  check_sequence(I, d.component_count(), 2);
  return mu_bar_from_table(mu_table(d, p, static_cast<int>(I.size())), I);
}

Int mu_reduced(const Diagram& d, const BasePoints& p, const Sequence& I) {
  const int n = d.component_count();
  check_sequence(I, n, 2);
  if (!is_non_repeated(I))
    throw MilnorError("mu_reduced needs a non-repeated sequence, got " +
                      sequence_to_string(I, n));
  const int r = static_cast<int>(I.size());
  const int k = I.back();
  ArcTable t = gauss::arc_table(d, p);
  MagnusAssignment m = eta_iterate(t, r, r - 1);
  // Killing X_k commutes with products and inverses, so substituting in the
  // final series equals running the whole recursion in the reduced ring.
  TruncatedSeries e = evaluate_word(m, preferred_longitude(t, k)).subst_zero(k);
  return e.coeff(series::Monomial(I.begin(), I.end() - 1));
}

SvResult sv_equivalent(const Diagram& d1, const BasePoints& p1, const Diagram& d2,
                       const BasePoints& p2) {
  const int n = d1.component_count();
  if (n != d2.component_count())
    throw MilnorError("cannot compare diagrams with " + std::to_string(n) + " and " +
                      std::to_string(d2.component_count()) + " components");
  if (n == 1) return {true, std::nullopt};  // no non-repeated sequence of length >= 2 exists

  MuTable t1 = mu_table(d1, p1, n);
  MuTable t2 = mu_table(d2, p2, n);
  for (const auto& [seq, value] : t1.values) {
    if (!is_non_repeated(seq)) continue;
    if (value != t2.at(seq)) return {false, seq};
  }
  return {true, std::nullopt};
}

}  // namespace weldmu::milnor
