#include "weldmu/gauss.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace weldmu::gauss {

namespace {

struct Token {
  std::string text;
  std::size_t pos{};
};

// ';' separates components and binds as its own token; everything else is
// whitespace-delimited.
std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == ';') {
      out.push_back({";", i});
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ';')
      ++i;
    out.push_back({std::string(text.substr(start, i - start)), start});
  }
  return out;
}

struct RawComponent {
  std::vector<Pass> passes;
  std::vector<int> pass_signs;
  bool explicit_empty = false;
  bool has_base = false;
  int base_gap = 0;
  std::size_t pos = 0;  // offset of the first token, for error reporting
};

int parse_decimal(const std::string& s, std::size_t from, std::size_t to, std::size_t tok_pos) {
  if (from >= to) throw ParseError("expected a decimal number", tok_pos + from);
  long value = 0;
  for (std::size_t k = from; k < to; ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw ParseError("expected a decimal digit, got '" + std::string(1, s[k]) + "'", tok_pos + k);
    value = value * 10 + (s[k] - '0');
    if (value > 1'000'000) throw ParseError("number out of range", tok_pos + from);
  }
  return static_cast<int>(value);
}

// A token is either "-", a pass "O12+" / "U3-", or one of those with a base
// annotation "@k" glued on.  Returns the base annotation through *base.
void parse_token(const Token& tok, RawComponent& comp) {
  const std::string& s = tok.text;
  std::size_t at = s.find('@');
  std::string body = s.substr(0, at == std::string::npos ? s.size() : at);

  if (body == "-") {
    if (!comp.passes.empty() || comp.explicit_empty)
      throw ParseError("'-' must be the only token of its component", tok.pos);
    comp.explicit_empty = true;
  } else {
    if (comp.explicit_empty)
      throw ParseError("pass after '-' in the same component", tok.pos);
    if (body.empty()) throw ParseError("empty pass token", tok.pos);
    Role role;
    if (body[0] == 'O')
      role = Role::Over;
    else if (body[0] == 'U')
      role = Role::Under;
    else
      throw ParseError("pass must start with 'O' or 'U', got '" + std::string(1, body[0]) + "'",
                       tok.pos);
    if (body.size() < 3)
      throw ParseError("pass token too short, expected e.g. 'O12+'", tok.pos);
    char sc = body.back();
    int sign;
    if (sc == '+')
      sign = 1;
    else if (sc == '-')
      sign = -1;
    else
      throw ParseError("pass must end with '+' or '-', got '" + std::string(1, sc) + "'",
                       tok.pos + body.size() - 1);
    int id = parse_decimal(body, 1, body.size() - 1, tok.pos);
    comp.passes.push_back({id, role});
    comp.pass_signs.push_back(sign);
  }

  if (at != std::string::npos) {
    if (comp.has_base) throw ParseError("duplicate base annotation", tok.pos + at);
    comp.has_base = true;
    comp.base_gap = parse_decimal(s, at + 1, s.size(), tok.pos);
  }
}

Based parse_impl(std::string_view text) {
  std::vector<Token> tokens = tokenize(text);
  std::vector<RawComponent> raw(1);
  std::map<CrossingId, std::pair<int, std::size_t>> seen_signs;  // id -> (sign, first offset)

  for (const Token& tok : tokens) {
    if (tok.text == ";") {
      raw.emplace_back();
      raw.back().pos = tok.pos;
      continue;
    }
    RawComponent& comp = raw.back();
    if (comp.passes.empty() && !comp.explicit_empty && !comp.has_base) comp.pos = tok.pos;
    if (comp.has_base)
      throw ParseError("base annotation must close its component", tok.pos);
    parse_token(tok, comp);
    if (!comp.pass_signs.empty() && comp.pass_signs.size() == comp.passes.size()) {
      CrossingId id = comp.passes.back().crossing;
      int sign = comp.pass_signs.back();
      auto [it, fresh] = seen_signs.try_emplace(id, sign, tok.pos);
      if (!fresh && it->second.first != sign)
        throw ParseError("crossing " + std::to_string(id) + " annotated with both signs", tok.pos);
    }
  }

  Based out;
  std::vector<int> gaps;
  for (const RawComponent& comp : raw) {
    if (comp.passes.empty() && !comp.explicit_empty && !comp.has_base && raw.size() == 1 &&
        tokens.empty())
      throw ParseError("empty diagram", 0);
    if (comp.passes.empty() && !comp.explicit_empty)
      throw ParseError("component without passes; write '-' for an empty component", comp.pos);
    out.diagram.components.push_back(comp.passes);
    gaps.push_back(comp.has_base ? comp.base_gap : 0);
  }
  for (const auto& [id, sig] : seen_signs) out.diagram.signs[id] = sig.first;

  try {
    validate(out.diagram);
    out.base = normalized_base_points(out.diagram, std::move(gaps));
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), 0);
  }
  return out;
}

char role_char(Role r) { return r == Role::Over ? 'O' : 'U'; }

void serialize_component(std::ostream& os, const Diagram& d, int i) {
  const auto& comp = d.component(i);
  if (comp.empty()) {
    os << '-';
    return;
  }
  for (std::size_t k = 0; k < comp.size(); ++k) {
    if (k) os << ' ';
    os << role_char(comp[k].role) << comp[k].crossing << (d.sign(comp[k].crossing) > 0 ? '+' : '-');
  }
}

}  // namespace

const std::vector<Pass>& Diagram::component(int i) const {
  if (i < 1 || i > component_count())
    throw ValidationError("component index " + std::to_string(i) + " out of range 1.." +
                          std::to_string(component_count()));
  return components[i - 1];
}

int Diagram::sign(CrossingId c) const {
  auto it = signs.find(c);
  if (it == signs.end())
    throw ValidationError("no sign recorded for crossing " + std::to_string(c));
  return it->second;
}

int Diagram::max_crossing_id() const {
  return signs.empty() ? 0 : signs.rbegin()->first;
}

int BasePoints::gap(int i) const {
  if (i < 1 || i > static_cast<int>(gaps.size()))
    throw ValidationError("base point index " + std::to_string(i) + " out of range");
  return gaps[i - 1];
}

void validate(const Diagram& d) {
  if (d.components.empty()) throw ValidationError("diagram has no components");
  std::map<CrossingId, int> overs, unders;
  for (const auto& comp : d.components) {
    for (const Pass& pass : comp) {
      if (pass.crossing < 0) throw ValidationError("negative crossing id");
      (pass.role == Role::Over ? overs : unders)[pass.crossing]++;
    }
  }
  for (const auto& [id, sign] : d.signs) {
    if (sign != 1 && sign != -1)
      throw ValidationError("crossing " + std::to_string(id) + " has sign " + std::to_string(sign));
    if (overs[id] != 1 || unders[id] != 1)
      throw ValidationError("crossing " + std::to_string(id) + " appears " +
                            std::to_string(overs[id]) + " times as Over and " +
                            std::to_string(unders[id]) + " as Under; need exactly one of each");
  }
  for (const auto& [id, cnt] : overs)
    if (!d.signs.count(id))
      throw ValidationError("crossing " + std::to_string(id) + " has no sign recorded");
  for (const auto& [id, cnt] : unders)
    if (!d.signs.count(id))
      throw ValidationError("crossing " + std::to_string(id) + " has no sign recorded");
}

void validate(const Diagram& d, const BasePoints& p) {
  validate(d);
  if (static_cast<int>(p.gaps.size()) != d.component_count())
    throw ValidationError("expected " + std::to_string(d.component_count()) +
                          " base points, got " + std::to_string(p.gaps.size()));
  for (int i = 1; i <= d.component_count(); ++i) {
    int len = d.component_length(i);
    int bound = std::max(len, 1);
    if (p.gap(i) < 0 || p.gap(i) >= bound)
      throw ValidationError("base point of component " + std::to_string(i) + " out of range: gap " +
                            std::to_string(p.gap(i)) + " with " + std::to_string(len) + " passes");
  }
}

BasePoints default_base_points(const Diagram& d) {
  return BasePoints{std::vector<int>(d.components.size(), 0)};
}

BasePoints normalized_base_points(const Diagram& d, std::vector<int> raw) {
  if (static_cast<int>(raw.size()) != d.component_count())
    throw ValidationError("expected " + std::to_string(d.component_count()) +
                          " base points, got " + std::to_string(raw.size()));
  for (int i = 0; i < d.component_count(); ++i) {
    int len = static_cast<int>(d.components[i].size());
    if (len == 0) {
      if (raw[i] != 0)
        throw ValidationError("base point of empty component " + std::to_string(i + 1) +
                              " must be 0");
      continue;
    }
    if (raw[i] < 0 || raw[i] > len)
      throw ValidationError("base point of component " + std::to_string(i + 1) +
                            " out of range: gap " + std::to_string(raw[i]) + " with " +
                            std::to_string(len) + " passes");
    if (raw[i] == len) raw[i] = 0;  // same cyclic gap
  }
  return BasePoints{std::move(raw)};
}

Diagram parse_diagram(std::string_view text) { return parse_impl(text).diagram; }

Based parse_based(std::string_view text) { return parse_impl(text); }

std::string serialize_diagram(const Diagram& d) {
  std::ostringstream os;
  for (int i = 1; i <= d.component_count(); ++i) {
    if (i > 1) os << " ; ";
    serialize_component(os, d, i);
  }
  return os.str();
}

std::string serialize_based(const Diagram& d, const BasePoints& p) {
  validate(d, p);
  std::ostringstream os;
  for (int i = 1; i <= d.component_count(); ++i) {
    if (i > 1) os << " ; ";
    serialize_component(os, d, i);
    os << '@' << p.gap(i);
  }
  return os.str();
}

Based based_from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  try {
    if (!j.is_object() || !j.contains("components"))
      throw ValidationError("JSON diagram needs a \"components\" array");
    Based out;
    for (const auto& jc : j.at("components")) {
      std::vector<Pass> comp;
      for (const auto& jp : jc) {
        std::string role = jp.at("role").get<std::string>();
        if (role != "O" && role != "U")
          throw ValidationError("pass role must be \"O\" or \"U\", got \"" + role + "\"");
        CrossingId id = jp.at("id").get<int>();
        int sign = jp.at("sign").get<int>();
        comp.push_back({id, role == "O" ? Role::Over : Role::Under});
        auto [it, fresh] = out.diagram.signs.try_emplace(id, sign);
        if (!fresh && it->second != sign)
          throw ValidationError("crossing " + std::to_string(id) + " annotated with both signs");
      }
      out.diagram.components.push_back(std::move(comp));
    }
    std::vector<int> gaps(out.diagram.components.size(), 0);
    if (j.contains("base_points")) gaps = j.at("base_points").get<std::vector<int>>();
    validate(out.diagram);
    out.base = normalized_base_points(out.diagram, std::move(gaps));
    return out;
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), 0);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON diagram: ") + e.what(), 0);
  }
}

std::string based_to_json_text(const Diagram& d, const BasePoints& p) {
  validate(d, p);
  nlohmann::ordered_json j;
  j["components"] = nlohmann::ordered_json::array();
  for (const auto& comp : d.components) {
    nlohmann::ordered_json jc = nlohmann::ordered_json::array();
    for (const Pass& pass : comp) {
      jc.push_back({{"role", std::string(1, role_char(pass.role))},
                    {"id", pass.crossing},
                    {"sign", d.sign(pass.crossing)}});
    }
    j["components"].push_back(std::move(jc));
  }
  j["base_points"] = p.gaps;
  return j.dump();
}

std::string to_string(ArcId a) {
  std::ostringstream os;
  os << 'a';
  if (a.component <= 9 && a.index <= 9)
    os << a.component << a.index;
  else
    os << a.component << '_' << a.index;
  return os.str();
}

const ComponentArcs& ArcTable::comp(int i) const {
  if (i < 1 || i > n) throw ValidationError("component index " + std::to_string(i) + " out of range");
  return comps[i - 1];
}

int ArcTable::arc_count(int i) const {
  const ComponentArcs& c = comp(i);
  return c.under_count == 0 ? 1 : c.under_count + 1;
}

ArcTable arc_table(const Diagram& d, const BasePoints& p) {
  validate(d, p);
  const int n = d.component_count();
  ArcTable t;
  t.n = n;
  t.comps.resize(n);

  // Where does each over pass sit, and which crossings are self-crossings.
  std::map<CrossingId, std::pair<int, int>> over_pos;   // id -> (component, position)
  std::map<CrossingId, int> under_comp;
  for (int i = 1; i <= n; ++i) {
    const auto& comp = d.component(i);
    for (int pos = 0; pos < static_cast<int>(comp.size()); ++pos) {
      if (comp[pos].role == Role::Over)
        over_pos[comp[pos].crossing] = {i, pos};
      else
        under_comp[comp[pos].crossing] = i;
    }
  }

  // First sweep: label every pass position with its arc, walking from the
  // base point.  The j-th under pass met ends arc a_{ij} and opens a_{i,j+1}.
  for (int i = 1; i <= n; ++i) {
    const auto& comp = d.component(i);
    const int len = static_cast<int>(comp.size());
    ComponentArcs& ca = t.comps[i - 1];
    ca.arc_at.resize(len);
    int arc = 1;
    for (int step = 0; step < len; ++step) {
      int pos = (p.gap(i) + step) % len;
      ca.arc_at[pos] = ArcId{i, arc};
      if (comp[pos].role == Role::Under) ++arc;
    }
    ca.under_count = arc - 1;
  }

  // Second sweep: the under records in walk order, now that every over pass
  // knows its arc, plus the self-writhe.
  for (int i = 1; i <= n; ++i) {
    const auto& comp = d.component(i);
    const int len = static_cast<int>(comp.size());
    ComponentArcs& ca = t.comps[i - 1];
    for (int step = 0; step < len; ++step) {
      int pos = (p.gap(i) + step) % len;
      if (comp[pos].role != Role::Under) continue;
      CrossingId c = comp[pos].crossing;
      auto [oc, op] = over_pos.at(c);
      ca.unders.push_back({c, t.comps[oc - 1].arc_at[op], d.sign(c)});
    }
    for (const auto& [c, where] : over_pos)
      if (where.first == i && under_comp.at(c) == i) ca.self_writhe += d.sign(c);
  }
  return t;
}

}  // namespace weldmu::gauss
