#pragma once

/*
 * Welded string links: ordered strands traversed linearly from one endpoint
 * to the other.  The pass structure is the same as for links, so the
 * underlying storage is a Diagram read non-cyclically.  Closing up the
 * strand endpoints turns a string link into a link; the closure carries a
 * canonical base point at each joining spot (gap 0), and interior moves on
 * the string link are exactly the moves on the closure that keep away from
 * those base points.  mu of the closure, which never needs to move a base
 * point, is then an honest integer invariant of the welded string link.
 *
 * Text form: a first line "stringlink", then the diagram grammar with
 * strands in place of components.  Base annotations make no sense here and
 * are rejected.
 */

#include <string>
#include <string_view>
#include <vector>

#include "weldmu/bigint.hpp"
#include "weldmu/gauss.hpp"
#include "weldmu/milnor.hpp"

namespace weldmu::stringlink {

struct StringLinkDiagram {
  // Strands stored as the components of a Diagram; positions read left to
  // right from the initial endpoint.
  gauss::Diagram underlying;

  int strand_count() const { return underlying.component_count(); }
  const std::vector<gauss::Pass>& strand(int i) const { return underlying.component(i); }
  bool operator==(const StringLinkDiagram&) const = default;
};

void validate(const StringLinkDiagram& s);

StringLinkDiagram parse_string_link(std::string_view text);
std::string serialize_string_link(const StringLinkDiagram& s);

// Join each strand's endpoints; the base point sits at the joining gap.
gauss::Based closure(const StringLinkDiagram& s);

// mu of the closure at its canonical base points.
Int mu_string(const StringLinkDiagram& s, const milnor::Sequence& I);

}  // namespace weldmu::stringlink
