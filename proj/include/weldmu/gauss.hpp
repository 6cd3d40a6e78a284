#pragma once

/*
 * Gauss codes for welded links.
 *
 * A diagram is an ordered list of oriented components; each component is a
 * cyclic sequence of passes.  A pass is a crossing id together with a role,
 * Over or Under, and every crossing id occurs exactly twice in the whole
 * diagram, once in each role, with a sign attached.  Virtual crossings are
 * not recorded: welded equivalence treats them as free re-routing, so two
 * codes describe the same welded diagram exactly when they are equal.
 *
 * Text form, one diagram per string:
 *
 *     O2+ U1+ ; O1+ O4- U2+ O5+ U3+ O3+ ; U4- U5+
 *
 * "-" stands for a component with no passes.  A component may carry an
 * optional base point annotation "@k": the base point sits in gap k, i.e.
 * immediately before the k-th pass (0-based, cyclic, so k = len is the same
 * gap as k = 0).  Unannotated components are based at gap 0.
 *
 * Base points cut each component into arcs.  Walking component i from its
 * base point, the arcs are a_{i1}, ..., a_{i,m_i+1}, where m_i counts the
 * under passes and the j-th under pass ends arc a_{ij}.  The first and last
 * arc are distinct labels even though both touch the base point; longitudes
 * depend on that distinction.  The arc table records, for the j-th under
 * pass of component i, the arc u_{ij} carrying the matching over pass and
 * the crossing sign e_{ij}, plus the self-writhe w_i (signed count of
 * self-crossings of component i).
 */

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace weldmu::gauss {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

using CrossingId = int;

enum class Role : std::uint8_t { Over, Under };

struct Pass {
  CrossingId crossing{};
  Role role{Role::Over};
  bool operator==(const Pass&) const = default;
};

struct Diagram {
  // components[i-1] is component i; component indices are 1-based in every
  // public interface, matching the usual notation.
  std::vector<std::vector<Pass>> components;
  std::map<CrossingId, int> signs;  // +1 or -1 per crossing

  int component_count() const { return static_cast<int>(components.size()); }
  const std::vector<Pass>& component(int i) const;
  int component_length(int i) const { return static_cast<int>(component(i).size()); }
  int sign(CrossingId c) const;
  int crossing_count() const { return static_cast<int>(signs.size()); }
  int max_crossing_id() const;

  bool operator==(const Diagram&) const = default;
};

struct BasePoints {
  std::vector<int> gaps;  // normalized: 0 <= gaps[i-1] < max(len_i, 1)

  int gap(int i) const;  // 1-based component index
  bool operator==(const BasePoints&) const = default;
};

struct Based {
  Diagram diagram;
  BasePoints base;
  bool operator==(const Based&) const = default;
};

// Crossing ids used exactly twice with both roles, signs recorded exactly
// for the ids present.  Throws ValidationError otherwise.
void validate(const Diagram& d);
void validate(const Diagram& d, const BasePoints& p);

BasePoints default_base_points(const Diagram& d);
// Accepts raw gaps in 0..len_i (len_i wraps to 0) and normalizes.
BasePoints normalized_base_points(const Diagram& d, std::vector<int> raw);

// Parsers validate before returning.  parse_diagram ignores any "@k"
// annotations; parse_based keeps them.
Diagram parse_diagram(std::string_view text);
Based parse_based(std::string_view text);

// Canonical text, no base annotations; parse(serialize(d)) == d.
std::string serialize_diagram(const Diagram& d);
// Same with "@k" appended to every component.
std::string serialize_based(const Diagram& d, const BasePoints& p);

// JSON mirror of the text form:
//   {"components":[[{"role":"O","id":2,"sign":1},...],...],"base_points":[0,0,0]}
// "base_points" is optional on input and defaults to all zeros.
Based based_from_json_text(std::string_view text);
std::string based_to_json_text(const Diagram& d, const BasePoints& p);

struct ArcId {
  int component{};  // 1-based
  int index{};      // 1-based: a_{component,index}
  auto operator<=>(const ArcId&) const = default;
};

// "a21" when both indices are single digits, "a2_10" style otherwise.
std::string to_string(ArcId a);

struct UnderRecord {
  CrossingId crossing{};
  ArcId over_arc{};  // u_{ij}: arc carrying the matching over pass
  int sign{};        // e_{ij}
  bool operator==(const UnderRecord&) const = default;
};

struct ComponentArcs {
  int under_count{};   // m_i
  int self_writhe{};   // w_i
  std::vector<UnderRecord> unders;  // unders[j-1] describes the j-th under pass
  // Arc at each pass position (positions as stored in the component, not in
  // walk order).  An Over pass maps to the arc carrying it; an Under pass to
  // the arc it terminates.
  std::vector<ArcId> arc_at;
  bool operator==(const ComponentArcs&) const = default;
};

struct ArcTable {
  int n{};
  std::vector<ComponentArcs> comps;  // comps[i-1] for component i

  const ComponentArcs& comp(int i) const;
  // Number of distinct arc labels on component i: 1 when m_i = 0, else m_i + 1.
  int arc_count(int i) const;
  bool operator==(const ArcTable&) const = default;
};

// Pure: depends only on (d, p), which stay untouched.
ArcTable arc_table(const Diagram& d, const BasePoints& p);

}  // namespace weldmu::gauss
