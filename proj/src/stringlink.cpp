#include "weldmu/stringlink.hpp"

#include <cctype>

namespace weldmu::stringlink {

void validate(const StringLinkDiagram& s) { gauss::validate(s.underlying); }

StringLinkDiagram parse_string_link(std::string_view text) {
  // Strip leading blank lines, then demand the header line.
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    std::size_t a = 0, b = line.size();
    while (a < b && std::isspace(static_cast<unsigned char>(line[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(line[b - 1]))) --b;
    std::string_view trimmed = line.substr(a, b - a);
    if (!trimmed.empty()) {
      if (trimmed != "stringlink")
        throw gauss::ParseError("string link input must start with a 'stringlink' line", pos + a);
      pos = eol == std::string_view::npos ? text.size() : eol + 1;
      break;
    }
    if (eol == std::string_view::npos)
      throw gauss::ParseError("string link input must start with a 'stringlink' line", pos);
    pos = eol + 1;
  }

  std::string_view body = text.substr(pos);
  std::size_t at = body.find('@');
  if (at != std::string_view::npos)
    throw gauss::ParseError("string links have no base points; '@' is not allowed", pos + at);
  StringLinkDiagram s{gauss::parse_diagram(body)};
  return s;
}

std::string serialize_string_link(const StringLinkDiagram& s) {
  return "stringlink\n" + gauss::serialize_diagram(s.underlying) + "\n";
}

gauss::Based closure(const StringLinkDiagram& s) {
  validate(s);
  return gauss::Based{s.underlying, gauss::default_base_points(s.underlying)};
}

Int mu_string(const StringLinkDiagram& s, const milnor::Sequence& I) {
  gauss::Based c = closure(s);
  return milnor::mu(c.diagram, c.base, I);
}

}  // namespace weldmu::stringlink
