#include "weldmu/series.hpp"

#include <sstream>

namespace weldmu::series {

namespace {

void check_var_index(int i, int n) {
  if (i < 1 || i > n)
    throw SeriesError("variable index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
}

const Int kZero{};

}  // namespace

TruncatedSeries::TruncatedSeries(int vars, int degree_cap) : n_(vars), d_(degree_cap) {
  if (vars < 1) throw SeriesError("series needs at least one variable");
  if (degree_cap < 0) throw SeriesError("negative degree cap");
}

TruncatedSeries TruncatedSeries::zero(int vars, int degree_cap) {
  return TruncatedSeries(vars, degree_cap);
}

TruncatedSeries TruncatedSeries::one(int vars, int degree_cap) {
  TruncatedSeries s(vars, degree_cap);
  s.terms_.emplace(Monomial{}, Int(1));
  return s;
}

TruncatedSeries TruncatedSeries::var(int i, int vars, int degree_cap) {
  check_var_index(i, vars);
  TruncatedSeries s = one(vars, degree_cap);
  if (degree_cap >= 1) s.terms_.emplace(Monomial{i}, Int(1));
  return s;
}

TruncatedSeries TruncatedSeries::gen(int i, int vars, int degree_cap) {
  check_var_index(i, vars);
  TruncatedSeries s(vars, degree_cap);
  if (degree_cap >= 1) s.terms_.emplace(Monomial{i}, Int(1));
  return s;
}

const Int& TruncatedSeries::coeff(const Monomial& m) const {
  if (static_cast<int>(m.size()) > d_)
    throw SeriesError("coefficient of degree " + std::to_string(m.size()) +
                      " requested from a series truncated at degree " + std::to_string(d_));
  for (int i : m) check_var_index(i, n_);
  auto it = terms_.find(m);
  return it == terms_.end() ? kZero : it->second;
}

void TruncatedSeries::set_coeff(const Monomial& m, Int value) {
  if (static_cast<int>(m.size()) > d_)
    throw SeriesError("monomial exceeds degree cap");
  for (int i : m) check_var_index(i, n_);
  if (value == 0)
    terms_.erase(m);
  else
    terms_[m] = std::move(value);
}

bool TruncatedSeries::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == 1;
}

void TruncatedSeries::check_compatible(const TruncatedSeries& rhs, const char* op) const {
  if (n_ != rhs.n_ || d_ != rhs.d_)
    throw SeriesError(std::string(op) + " of series over different rings (n,d)=(" +
                      std::to_string(n_) + "," + std::to_string(d_) + ") vs (" +
                      std::to_string(rhs.n_) + "," + std::to_string(rhs.d_) + ")");
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries out(n_, d_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, Int(-c));
  return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
  check_compatible(rhs, "sum");
  for (const auto& [m, c] : rhs.terms_) {
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
  check_compatible(rhs, "difference");
  for (const auto& [m, c] : rhs.terms_) {
    auto [it, fresh] = terms_.try_emplace(m, Int(-c));
    if (!fresh) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.check_compatible(b, "product");
  TruncatedSeries out(a.n_, a.d_);
  Monomial key;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (static_cast<int>(ma.size() + mb.size()) > a.d_) continue;
      key = ma;
      key.insert(key.end(), mb.begin(), mb.end());
      auto [it, fresh] = out.terms_.try_emplace(key, Int(ca * cb));
      if (!fresh) {
        it->second += ca * cb;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::inverse() const {
  const Int& c0 = coeff({});
  if (c0 != 1 && c0 != -1)
    throw SeriesError("inverse requires constant term +1 or -1, got " + c0.str());
  // a = c0 (1 - r) with r of degree >= 1, so a^-1 = c0 (1 + r + r^2 + ...),
  // and r^(d+1) vanishes in the quotient.
  TruncatedSeries r = one(n_, d_);
  if (c0 == 1)
    r -= *this;
  else
    r += *this;
  TruncatedSeries acc = one(n_, d_);
  TruncatedSeries pw = one(n_, d_);
  for (int k = 1; k <= d_ && !pw.is_zero(); ++k) {
    pw = pw * r;
    acc += pw;
  }
  if (c0 == -1) acc = -acc;
  return acc;
}

TruncatedSeries TruncatedSeries::subst_zero(int k) const {
  check_var_index(k, n_);
  TruncatedSeries out(n_, d_);
  for (const auto& [m, c] : terms_) {
    bool hits = false;
    for (int i : m)
      if (i == k) {
        hits = true;
        break;
      }
    if (!hits) out.terms_.emplace(m, c);
  }
  return out;
}

TruncatedSeries TruncatedSeries::truncated(int new_cap) const {
  if (new_cap > d_) throw SeriesError("cannot raise the degree cap of a truncated series");
  TruncatedSeries out(n_, new_cap);
  for (const auto& [m, c] : terms_) {
    if (static_cast<int>(m.size()) > new_cap) break;  // terms are degree-sorted
    out.terms_.emplace(m, c);
  }
  return out;
}

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Int mag = c < 0 ? Int(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || m.empty()) os << mag.str();
    for (int i : m) os << "X" << i;
  }
  return os.str();
}

}  // namespace weldmu::series
