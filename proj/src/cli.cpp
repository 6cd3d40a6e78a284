#include "weldmu/cli.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "weldmu/stringlink.hpp"

namespace weldmu::cli {

using gauss::Based;
using milnor::MuBar;
using milnor::MuTable;
using milnor::Sequence;

namespace {

constexpr int kHardRmaxCap = 6;  // beyond this, require --allow-large

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

std::string read_input_text(const DiagramInput& in) {
  if (in.code && in.path) throw UsageError("give either an inline code or a file, not both");
  if (in.code) return *in.code;
  if (!in.path) throw UsageError("no diagram given; pass a file or --code");
  if (*in.path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream f(*in.path);
  if (!f) throw UsageError("cannot open '" + *in.path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

bool looks_like_string_link(const std::string& text) {
  std::istringstream is(text);
  std::string first;
  is >> first;
  return first == "stringlink";
}

Based load_based(const DiagramInput& in, const std::optional<std::vector<int>>& base_override) {
  std::string text = read_input_text(in);
  Based b;
  if (looks_like_json(text)) {
    b = gauss::based_from_json_text(text);
  } else {
    if (looks_like_string_link(text))
      throw UsageError("input is a string link; run the close command first");
    b = gauss::parse_based(text);
  }
  if (base_override) b.base = gauss::normalized_base_points(b.diagram, *base_override);
  return b;
}

int resolve_rmax(const std::optional<int>& requested, int n, bool allow_large) {
  int rmax = requested.value_or(std::min(n + 1, 4));
  if (rmax < 2) throw UsageError("rmax must be at least 2");
  if (rmax > kHardRmaxCap && !allow_large)
    throw UsageError("rmax " + std::to_string(rmax) + " exceeds " +
                     std::to_string(kHardRmaxCap) +
                     "; the table grows like n^rmax, pass --allow-large to proceed");
  return rmax;
}

nlohmann::ordered_json json_int(const Int& v) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (v >= lo && v <= hi) return static_cast<std::int64_t>(v);
  return v.str();  // too wide for a JSON number; emit the decimal string
}

struct Row {
  std::string sequence;
  MuBar values;
};

std::vector<Row> table_rows(const MuTable& table, bool non_repeated_only) {
  std::vector<Row> rows;
  for (const auto& [seq, value] : table.values) {
    if (non_repeated_only && !milnor::is_non_repeated(seq)) continue;
    rows.push_back({milnor::sequence_to_string(seq, table.n), mu_bar_from_table(table, seq)});
  }
  return rows;
}

void print_text_table(std::ostream& out, const std::vector<Row>& rows) {
  std::vector<std::array<std::string, 4>> cells;
  cells.push_back({"sequence", "mu", "delta", "mu_bar"});
  for (const Row& r : rows)
    cells.push_back(
        {r.sequence, r.values.mu.str(), r.values.delta.str(), r.values.residue.str()});
  std::array<std::size_t, 4> width{};
  for (const auto& row : cells)
    for (int c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
  for (const auto& row : cells) {
    for (int c = 0; c < 4; ++c) {
      out << row[c];
      if (c < 3) out << std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << '\n';
  }
}

std::string class_names(const std::set<moves::MoveClass>& classes) {
  std::string s;
  for (moves::MoveClass c : classes) {
    if (!s.empty()) s += ',';
    s += c == moves::MoveClass::WBar ? "wbar" : c == moves::MoveClass::BaseChange ? "base" : "sv";
  }
  return s;
}

// Maps exceptions to the exit-code contract.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const gauss::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace

WalkVerdict check_walk(const std::vector<moves::WalkStep>& walk, int rmax, InvarianceCheck chk) {
  WalkVerdict verdict;
  if (walk.empty()) return verdict;
  const Based& start = walk.front().state;
  MuTable ref = milnor::mu_table(start.diagram, start.base, rmax);
  std::map<Sequence, Int, milnor::SequenceOrder> ref_delta;
  if (chk.mod_delta)
    for (const auto& [seq, v] : ref.values) ref_delta.emplace(seq, milnor::delta(ref, seq));

  for (std::size_t k = 1; k < walk.size(); ++k) {
    const Based& state = walk[k].state;
    MuTable cur = milnor::mu_table(state.diagram, state.base, rmax);
    for (const auto& [seq, v0] : ref.values) {
      if (chk.non_repeated_only && !milnor::is_non_repeated(seq)) continue;
      const Int& vk = cur.at(seq);
      std::string name = milnor::sequence_to_string(seq, ref.n);
      if (!chk.mod_delta) {
        if (vk != v0) {
          verdict = {false, static_cast<int>(k), seq,
                     "mu(" + name + ") changed from " + v0.str() + " to " + vk.str()};
          return verdict;
        }
        continue;
      }
      const Int& d0 = ref_delta.at(seq);
      Int dk = milnor::delta(cur, seq);
      if (dk != d0) {
        verdict = {false, static_cast<int>(k), seq,
                   "delta(" + name + ") changed from " + d0.str() + " to " + dk.str()};
        return verdict;
      }
      bool bad = d0 == 0 ? vk != v0 : (vk - v0) % d0 != 0;
      if (bad) {
        verdict = {false, static_cast<int>(k), seq,
                   "mu(" + name + ") moved from " + v0.str() + " to " + vk.str() +
                       " which is not a multiple of delta = " + d0.str()};
        return verdict;
      }
    }
  }
  return verdict;
}

int cmd_compute(const ComputeRequest& req, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    Based b = load_based(req.input, req.base);
    const int n = b.diagram.component_count();
    int rmax = resolve_rmax(req.rmax, n, req.allow_large);
    MuTable table = milnor::mu_table(b.diagram, b.base, rmax);
    std::vector<Row> rows = table_rows(table, req.non_repeated_only);

    if (req.reduced_check) {
      for (const auto& [seq, v] : table.values) {
        if (!milnor::is_non_repeated(seq)) continue;
        Int reduced = milnor::mu_reduced(b.diagram, b.base, seq);
        if (reduced != v) {
          err << "invariant violation: mu_reduced(" << milnor::sequence_to_string(seq, n)
              << ") = " << reduced.str() << " but mu = " << v.str() << '\n';
          return 4;
        }
      }
    }

    std::vector<std::string> words;
    if (req.longitudes) words = milnor::longitude_words(b.diagram, b.base);

    if (req.json) {
      nlohmann::ordered_json records = nlohmann::ordered_json::array();
      for (const Row& r : rows) {
        nlohmann::ordered_json rec;
        rec["sequence"] = r.sequence;
        rec["mu"] = json_int(r.values.mu);
        rec["delta"] = json_int(r.values.delta);
        rec["mu_bar"] = json_int(r.values.residue);
        records.push_back(std::move(rec));
      }
      if (req.longitudes) {
        nlohmann::ordered_json doc;
        doc["longitudes"] = words;
        doc["records"] = std::move(records);
        out << doc.dump() << '\n';
      } else {
        out << records.dump() << '\n';
      }
    } else {
      if (req.longitudes) {
        for (std::size_t i = 0; i < words.size(); ++i)
          out << 'l' << (i + 1) << " = " << (words[i].empty() ? "1" : words[i]) << '\n';
        out << '\n';
      }
      print_text_table(out, rows);
    }
    return 0;
  });
}

int cmd_fuzz(const FuzzRequest& req, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    Based b = load_based(req.input, req.base);
    const int n = b.diagram.component_count();
    int rmax = resolve_rmax(req.rmax, n, req.allow_large);
    if (req.steps < 0) throw UsageError("steps must be nonnegative");
    if (req.classes.empty()) throw UsageError("at least one move class is required");

    InvarianceCheck chk;
    chk.mod_delta = req.classes.count(moves::MoveClass::BaseChange) > 0;
    chk.non_repeated_only = req.non_repeated.value_or(req.classes.count(moves::MoveClass::SV) > 0);

    auto walk = moves::random_walk(b.diagram, b.base, req.seed, req.steps, req.classes);
    WalkVerdict verdict = check_walk(walk, rmax, chk);
    if (verdict.ok) {
      out << "ok seed=" << req.seed << " steps=" << req.steps << " classes="
          << class_names(req.classes) << " rmax=" << rmax << " crossings_final="
          << walk.back().state.diagram.crossing_count() << '\n';
      return 0;
    }
    out << "violation step=" << verdict.violation_step << " " << verdict.detail << '\n';
    out << "initial " << gauss::serialize_based(b.diagram, b.base) << '\n';
    for (int k = 1; k <= verdict.violation_step; ++k)
      out << to_trace(*walk[k].move) << '\n';
    err << "invariant violation after " << verdict.violation_step << " moves: " << verdict.detail
        << '\n';
    return 4;
  });
}

int cmd_compare(const CompareRequest& req, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    Based a = load_based(req.a, req.base_a);
    Based b = load_based(req.b, req.base_b);
    const int n = a.diagram.component_count();

    if (req.mode == CompareMode::Sv) {
      if (n != b.diagram.component_count())
        throw UsageError("diagrams have different component counts");
      if (n > kHardRmaxCap && !req.allow_large)
        throw UsageError("SV comparison computes mu_table(rmax = n); n = " + std::to_string(n) +
                         " needs --allow-large");
      milnor::SvResult r = milnor::sv_equivalent(a.diagram, a.base, b.diagram, b.base);
      if (r.equivalent) {
        out << "equivalent\n";
        return 0;
      }
      Sequence w = *r.witness;
      out << "not equivalent sequence=" << milnor::sequence_to_string(w, n)
          << " mu_a=" << milnor::mu(a.diagram, a.base, w).str()
          << " mu_b=" << milnor::mu(b.diagram, b.base, w).str() << '\n';
      return 1;
    }

    if (n != b.diagram.component_count())
      throw UsageError("diagrams have different component counts");
    int rmax = resolve_rmax(req.rmax, n, req.allow_large);
    MuTable ta = milnor::mu_table(a.diagram, a.base, rmax);
    MuTable tb = milnor::mu_table(b.diagram, b.base, rmax);
    for (const auto& [seq, va] : ta.values) {
      MuBar ma = mu_bar_from_table(ta, seq);
      MuBar mb = mu_bar_from_table(tb, seq);
      if (!ma.same_invariant(mb)) {
        out << "not equivalent sequence=" << milnor::sequence_to_string(seq, n)
            << " delta_a=" << ma.delta.str() << " mu_bar_a=" << ma.residue.str()
            << " delta_b=" << mb.delta.str() << " mu_bar_b=" << mb.residue.str() << '\n';
        return 1;
      }
    }
    out << "equivalent\n";
    return 0;
  });
}

int cmd_close(const CloseRequest& req, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    std::string text = read_input_text(req.input);
    stringlink::StringLinkDiagram s = stringlink::parse_string_link(text);
    Based b = stringlink::closure(s);
    out << gauss::serialize_based(b.diagram, b.base) << '\n';
    return 0;
  });
}

int cmd_longitudes(const LongitudesRequest& req, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    Based b = load_based(req.input, req.base);
    std::vector<std::string> words = milnor::longitude_words(b.diagram, b.base);
    for (std::size_t i = 0; i < words.size(); ++i)
      out << 'l' << (i + 1) << " = " << (words[i].empty() ? "1" : words[i]) << '\n';
    return 0;
  });
}

}  // namespace weldmu::cli
