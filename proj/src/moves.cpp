#include "weldmu/moves.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <tuple>

namespace weldmu::moves {

using gauss::Based;
using gauss::BasePoints;
using gauss::CrossingId;
using gauss::Diagram;
using gauss::Pass;
using gauss::Role;

namespace {

struct PassLoc {
  int comp{};  // 1-based
  int pos{};   // 0-based
};

struct PassIndex {
  std::map<CrossingId, PassLoc> over, under;
};

PassIndex build_index(const Diagram& d) {
  PassIndex ix;
  for (int i = 1; i <= d.component_count(); ++i) {
    const auto& comp = d.component(i);
    for (int pos = 0; pos < static_cast<int>(comp.size()); ++pos)
      (comp[pos].role == Role::Over ? ix.over : ix.under)[comp[pos].crossing] = {i, pos};
  }
  return ix;
}

int next_pos(int pos, int len) { return (pos + 1) % len; }
int prev_pos(int pos, int len) { return (pos + len - 1) % len; }
// The gap between pass pos and the cyclically following pass.
int gap_after(int pos, int len) { return (pos + 1) % len; }

bool base_free(const BasePoints& p, int comp, int gap) { return p.gap(comp) != gap; }

const PassLoc& locate(const std::map<CrossingId, PassLoc>& m, CrossingId c, const char* role) {
  auto it = m.find(c);
  if (it == m.end())
    throw MoveError("crossing " + std::to_string(c) + " has no " + role + " pass");
  return it->second;
}

void check_component(const Diagram& d, int i) {
  if (i < 1 || i > d.component_count())
    throw MoveError("component " + std::to_string(i) + " out of range");
}

void check_gap(const Diagram& d, int i, int gap) {
  int len = d.component_length(i);
  if (gap < 0 || gap >= std::max(len, 1))
    throw MoveError("gap " + std::to_string(gap) + " out of range on component " +
                    std::to_string(i));
}

void check_fresh(const Diagram& d, CrossingId c) {
  if (c < 0) throw MoveError("fresh crossing id must be nonnegative");
  if (d.signs.count(c))
    throw MoveError("crossing id " + std::to_string(c) + " already in use");
}

void check_sign(int s) {
  if (s != 1 && s != -1) throw MoveError("crossing sign must be +1 or -1");
}

void insert_block(Based& b, int comp, int gap, const std::vector<Pass>& block) {
  auto& vec = b.diagram.components[comp - 1];
  vec.insert(vec.begin() + gap, block.begin(), block.end());
  int& bg = b.base.gaps[comp - 1];
  if (bg > gap) bg += static_cast<int>(block.size());
}

// positions must be sorted ascending and distinct.
void erase_positions(Based& b, int comp, const std::vector<int>& positions) {
  auto& vec = b.diagram.components[comp - 1];
  int& bg = b.base.gaps[comp - 1];
  int shift = 0;
  for (int pos : positions)
    if (pos < bg) ++shift;
  for (auto it = positions.rbegin(); it != positions.rend(); ++it)
    vec.erase(vec.begin() + *it);
  bg -= shift;
  // A wrapped adjacent pair can leave bg == len; that is the cyclic gap 0.
  bg = vec.empty() ? 0 : bg % static_cast<int>(vec.size());
}

struct Applier {
  const Diagram& d;
  const BasePoints& p;
  PassIndex ix;

  Applier(const Diagram& d_, const BasePoints& p_) : d(d_), p(p_), ix(build_index(d_)) {}

  Based start() const { return Based{d, p}; }

  Based operator()(const R1Insert& m) const {
    check_component(d, m.component);
    check_gap(d, m.component, m.gap);
    check_sign(m.sign);
    check_fresh(d, m.fresh);
    Based out = start();
    std::vector<Pass> block{{m.fresh, Role::Over}, {m.fresh, Role::Under}};
    if (!m.over_first) std::swap(block[0], block[1]);
    insert_block(out, m.component, m.gap, block);
    out.diagram.signs[m.fresh] = m.sign;
    return out;
  }

  Based operator()(const R1Delete& m) const {
    const PassLoc& o = locate(ix.over, m.crossing, "over");
    const PassLoc& u = locate(ix.under, m.crossing, "under");
    if (o.comp != u.comp)
      throw MoveError("crossing " + std::to_string(m.crossing) + " is not a kink: passes on "
                      "different components");
    int len = d.component_length(o.comp);
    bool ok = false;
    if (next_pos(o.pos, len) == u.pos && base_free(p, o.comp, gap_after(o.pos, len))) ok = true;
    if (next_pos(u.pos, len) == o.pos && base_free(p, o.comp, gap_after(u.pos, len))) ok = true;
    if (!ok)
      throw MoveError("crossing " + std::to_string(m.crossing) +
                      " is not a deletable kink (passes not adjacent on a base-free side)");
    Based out = start();
    std::vector<int> positions{o.pos, u.pos};
    std::sort(positions.begin(), positions.end());
    erase_positions(out, o.comp, positions);
    out.diagram.signs.erase(m.crossing);
    return out;
  }

  Based operator()(const R2Insert& m) const {
    check_component(d, m.over_site.component);
    check_component(d, m.under_site.component);
    check_gap(d, m.over_site.component, m.over_site.gap);
    check_gap(d, m.under_site.component, m.under_site.gap);
    check_sign(m.sign);
    check_fresh(d, m.fresh1);
    check_fresh(d, m.fresh2);
    if (m.fresh1 == m.fresh2) throw MoveError("the two fresh crossing ids must differ");
    if (m.under_first && !(m.over_site == m.under_site))
      throw MoveError("under_first only applies when both blocks share a gap");

    Based out = start();
    std::vector<Pass> over_block{{m.fresh1, Role::Over}, {m.fresh2, Role::Over}};
    std::vector<Pass> under_block{{m.fresh2, Role::Under}, {m.fresh1, Role::Under}};
    if (m.over_site.component != m.under_site.component) {
      insert_block(out, m.over_site.component, m.over_site.gap, over_block);
      insert_block(out, m.under_site.component, m.under_site.gap, under_block);
    } else if (m.over_site.gap == m.under_site.gap) {
      // Insert the trailing block first; both gaps refer to the original code.
      const auto& first = m.under_first ? under_block : over_block;
      const auto& second = m.under_first ? over_block : under_block;
      insert_block(out, m.over_site.component, m.over_site.gap, second);
      insert_block(out, m.over_site.component, m.over_site.gap, first);
    } else {
      bool over_higher = m.over_site.gap > m.under_site.gap;
      const Site& hi = over_higher ? m.over_site : m.under_site;
      const Site& lo = over_higher ? m.under_site : m.over_site;
      insert_block(out, hi.component, hi.gap, over_higher ? over_block : under_block);
      insert_block(out, lo.component, lo.gap, over_higher ? under_block : over_block);
    }
    out.diagram.signs[m.fresh1] = m.sign;
    out.diagram.signs[m.fresh2] = -m.sign;
    return out;
  }

  Based operator()(const R2Delete& m) const {
    if (m.c1 == m.c2) throw MoveError("R2 pair needs two distinct crossings");
    const PassLoc& o1 = locate(ix.over, m.c1, "over");
    const PassLoc& o2 = locate(ix.over, m.c2, "over");
    const PassLoc& u1 = locate(ix.under, m.c1, "under");
    const PassLoc& u2 = locate(ix.under, m.c2, "under");
    if (d.sign(m.c1) != -d.sign(m.c2))
      throw MoveError("R2 pair needs opposite signs");
    int olen = d.component_length(o1.comp);
    int ulen = d.component_length(u2.comp);
    if (o1.comp != o2.comp || next_pos(o1.pos, olen) != o2.pos)
      throw MoveError("over passes are not adjacent in the order O(c1) O(c2)");
    if (u2.comp != u1.comp || next_pos(u2.pos, ulen) != u1.pos)
      throw MoveError("under passes are not adjacent in the order U(c2) U(c1)");
    if (!base_free(p, o1.comp, gap_after(o1.pos, olen)) ||
        !base_free(p, u2.comp, gap_after(u2.pos, ulen)))
      throw MoveError("base point sits inside the R2 pair");

    Based out = start();
    if (o1.comp == u2.comp) {
      std::vector<int> positions{o1.pos, o2.pos, u1.pos, u2.pos};
      std::sort(positions.begin(), positions.end());
      erase_positions(out, o1.comp, positions);
    } else {
      std::vector<int> op{o1.pos, o2.pos};
      std::sort(op.begin(), op.end());
      std::vector<int> up{u1.pos, u2.pos};
      std::sort(up.begin(), up.end());
      erase_positions(out, o1.comp, op);
      erase_positions(out, u2.comp, up);
    }
    out.diagram.signs.erase(m.c1);
    out.diagram.signs.erase(m.c2);
    return out;
  }

  Based operator()(const R3& m) const {
    if (m.t == m.m || m.m == m.c || m.t == m.c)
      throw MoveError("R3 needs three distinct crossings");
    if (d.sign(m.t) != -1 || d.sign(m.m) != 1 || d.sign(m.c) != 1)
      throw MoveError("R3 triple has the wrong signs (need t:-1, m:+1, c:+1)");
    const PassLoc& ut = locate(ix.under, m.t, "under");
    const PassLoc& um = locate(ix.under, m.m, "under");
    const PassLoc& om = locate(ix.over, m.m, "over");
    const PassLoc& uc = locate(ix.under, m.c, "under");
    const PassLoc& ot = locate(ix.over, m.t, "over");
    const PassLoc& oc = locate(ix.over, m.c, "over");
    if (ut.comp != um.comp || om.comp != uc.comp || ot.comp != oc.comp)
      throw MoveError("R3 strands are not matched up");
    int blen = d.component_length(ut.comp);
    int mlen = d.component_length(om.comp);
    int tlen = d.component_length(ot.comp);

    // Forward: U(t)U(m) / O(m)U(c) / O(t)O(c); inverse reverses every pair.
    auto matches = [&](const PassLoc& a, const PassLoc& b, int len) {
      return next_pos(a.pos, len) == b.pos;
    };
    bool forward = matches(ut, um, blen) && matches(om, uc, mlen) && matches(ot, oc, tlen);
    bool inverse = matches(um, ut, blen) && matches(uc, om, mlen) && matches(oc, ot, tlen);
    if (!forward && !inverse) throw MoveError("R3 site pattern not present for this triple");
    // On two-pass components both readings match cyclically; the move is
    // legal as long as one of them keeps clear of the base points.
    auto site_free = [&](int gb, int gm, int gt) {
      return base_free(p, ut.comp, gb) && base_free(p, om.comp, gm) && base_free(p, ot.comp, gt);
    };
    bool clear = (forward && site_free(gap_after(ut.pos, blen), gap_after(om.pos, mlen),
                                       gap_after(ot.pos, tlen))) ||
                 (inverse && site_free(gap_after(um.pos, blen), gap_after(uc.pos, mlen),
                                       gap_after(oc.pos, tlen)));
    if (!clear) throw MoveError("base point sits inside the R3 site");

    Based out = start();
    auto swap_pair = [&](const PassLoc& a, const PassLoc& b) {
      std::swap(out.diagram.components[a.comp - 1][a.pos],
                out.diagram.components[b.comp - 1][b.pos]);
    };
    swap_pair(ut, um);
    swap_pair(om, uc);
    swap_pair(ot, oc);
    return out;
  }

  Based operator()(const OCSwap& m) const {
    check_component(d, m.component);
    int len = d.component_length(m.component);
    if (len < 2) throw MoveError("component too short for an over-over swap");
    check_gap(d, m.component, m.gap);
    int a = prev_pos(m.gap, len);
    int b = m.gap;
    const auto& comp = d.component(m.component);
    if (comp[a].role != Role::Over || comp[b].role != Role::Over)
      throw MoveError("the passes around the gap are not both over passes");
    if (!base_free(p, m.component, m.gap))
      throw MoveError("base point sits between the two over passes");
    Based out = start();
    std::swap(out.diagram.components[m.component - 1][a],
              out.diagram.components[m.component - 1][b]);
    return out;
  }

  Based operator()(const BaseShift& m) const {
    check_component(d, m.component);
    if (m.dir != 1 && m.dir != -1) throw MoveError("base shift direction must be +1 or -1");
    int len = d.component_length(m.component);
    if (len == 0) throw MoveError("cannot shift the base point of an empty component");
    Based out = start();
    int& bg = out.base.gaps[m.component - 1];
    bg = (bg + m.dir + len) % len;
    return out;
  }

  Based operator()(const SVDelete& m) const {
    const PassLoc& o = locate(ix.over, m.crossing, "over");
    const PassLoc& u = locate(ix.under, m.crossing, "under");
    if (o.comp != u.comp)
      throw MoveError("crossing " + std::to_string(m.crossing) +
                      " is not a self-crossing; SV does not apply");
    Based out = start();
    std::vector<int> positions{o.pos, u.pos};
    std::sort(positions.begin(), positions.end());
    erase_positions(out, o.comp, positions);
    out.diagram.signs.erase(m.crossing);
    return out;
  }
};

void structural_moves(const Diagram& d, const BasePoints& p, MoveClass cls,
                      std::vector<Move>& out) {
  PassIndex ix = build_index(d);

  if (cls == MoveClass::WBar) {
    // Kinks: same component, adjacent on at least one base-free side.
    for (const auto& [c, sign] : d.signs) {
      auto oit = ix.over.find(c);
      auto uit = ix.under.find(c);
      if (oit->second.comp != uit->second.comp) continue;
      int len = d.component_length(oit->second.comp);
      int po = oit->second.pos, pu = uit->second.pos;
      bool ok = (next_pos(po, len) == pu &&
                 base_free(p, oit->second.comp, gap_after(po, len))) ||
                (next_pos(pu, len) == po &&
                 base_free(p, oit->second.comp, gap_after(pu, len)));
      if (ok) out.push_back(R1Delete{c});
    }

    // R2 pairs: adjacent O(c1)O(c2) with matching adjacent U(c2)U(c1).
    for (int i = 1; i <= d.component_count(); ++i) {
      const auto& comp = d.component(i);
      int len = static_cast<int>(comp.size());
      for (int t = 0; t < len; ++t) {
        int t2 = next_pos(t, len);
        if (t2 == t) continue;
        if (comp[t].role != Role::Over || comp[t2].role != Role::Over) continue;
        CrossingId c1 = comp[t].crossing, c2 = comp[t2].crossing;
        if (d.sign(c1) != -d.sign(c2)) continue;
        const PassLoc& u2 = ix.under.at(c2);
        const PassLoc& u1 = ix.under.at(c1);
        int ulen = d.component_length(u2.comp);
        if (u1.comp != u2.comp || next_pos(u2.pos, ulen) != u1.pos) continue;
        if (!base_free(p, i, gap_after(t, len))) continue;
        if (!base_free(p, u2.comp, gap_after(u2.pos, ulen))) continue;
        out.push_back(R2Delete{c1, c2});
      }
    }

    // R3 triangles, both orientations of the same pattern.
    std::set<std::tuple<CrossingId, CrossingId, CrossingId>> seen_r3;
    auto try_r3 = [&](CrossingId t, CrossingId mm, bool fwd, int bottom_comp, int bottom_gap) {
      if (d.sign(t) != -1 || d.sign(mm) != 1) return;
      const PassLoc& om = ix.over.at(mm);
      int mlen = d.component_length(om.comp);
      int mpos = fwd ? next_pos(om.pos, mlen) : prev_pos(om.pos, mlen);
      if (mpos == om.pos) return;
      const Pass& mid = d.component(om.comp)[mpos];
      if (mid.role != Role::Under) return;
      CrossingId c = mid.crossing;
      if (c == t || c == mm || d.sign(c) != 1) return;
      const PassLoc& ot = ix.over.at(t);
      int tlen = d.component_length(ot.comp);
      int tpos = fwd ? next_pos(ot.pos, tlen) : prev_pos(ot.pos, tlen);
      if (tpos == ot.pos) return;
      const Pass& top = d.component(ot.comp)[tpos];
      if (top.role != Role::Over || top.crossing != c) return;
      int gm = fwd ? gap_after(om.pos, mlen) : gap_after(mpos, mlen);
      int gt = fwd ? gap_after(ot.pos, tlen) : gap_after(tpos, tlen);
      if (!base_free(p, bottom_comp, bottom_gap)) return;
      if (!base_free(p, om.comp, gm) || !base_free(p, ot.comp, gt)) return;
      if (seen_r3.insert({t, mm, c}).second) out.push_back(R3{t, mm, c});
    };
    for (int i = 1; i <= d.component_count(); ++i) {
      const auto& comp = d.component(i);
      int len = static_cast<int>(comp.size());
      for (int t = 0; t < len; ++t) {
        int t2 = next_pos(t, len);
        if (t2 == t) continue;
        if (comp[t].role != Role::Under || comp[t2].role != Role::Under) continue;
        // Forward reading: U(t)=U(T), U(t2)=U(M); inverse: U(t)=U(M), U(t2)=U(T).
        try_r3(comp[t].crossing, comp[t2].crossing, true, i, gap_after(t, len));
        try_r3(comp[t2].crossing, comp[t].crossing, false, i, gap_after(t, len));
      }
    }

    // Over-over swaps.
    for (int i = 1; i <= d.component_count(); ++i) {
      const auto& comp = d.component(i);
      int len = static_cast<int>(comp.size());
      for (int t = 0; t < len; ++t) {
        int t2 = next_pos(t, len);
        if (t2 == t) continue;
        if (comp[t].role != Role::Over || comp[t2].role != Role::Over) continue;
        if (!base_free(p, i, gap_after(t, len))) continue;
        out.push_back(OCSwap{i, gap_after(t, len)});
      }
    }
  }

  if (cls == MoveClass::BaseChange) {
    for (int i = 1; i <= d.component_count(); ++i) {
      if (d.component_length(i) == 0) continue;
      out.push_back(BaseShift{i, 1});
      out.push_back(BaseShift{i, -1});
    }
  }

  if (cls == MoveClass::SV) {
    for (const auto& [c, sign] : d.signs)
      if (ix.over.at(c).comp == ix.under.at(c).comp) out.push_back(SVDelete{c});
  }
}

void insertion_moves(const Diagram& d, std::vector<Move>& out) {
  CrossingId f1 = d.max_crossing_id() + 1;
  CrossingId f2 = f1 + 1;

  std::vector<Site> sites;
  for (int i = 1; i <= d.component_count(); ++i)
    for (int g = 0; g < std::max(d.component_length(i), 1); ++g) sites.push_back({i, g});

  for (const Site& s : sites)
    for (int sign : {1, -1})
      for (bool over_first : {true, false})
        out.push_back(R1Insert{s.component, s.gap, sign, over_first, f1});

  for (const Site& a : sites)
    for (const Site& b : sites)
      for (int sign : {1, -1}) {
        out.push_back(R2Insert{a, b, sign, false, f1, f2});
        if (a == b) out.push_back(R2Insert{a, b, sign, true, f1, f2});
      }
}

char sign_char(int s) { return s > 0 ? '+' : '-'; }

int parse_sign_token(const std::string& v) {
  if (v == "+") return 1;
  if (v == "-") return -1;
  throw MoveError("bad sign '" + v + "' in trace");
}

std::map<std::string, std::string> trace_fields(std::string_view line, std::string& kind) {
  std::istringstream is{std::string(line)};
  if (!(is >> kind)) throw MoveError("empty trace line");
  std::map<std::string, std::string> kv;
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw MoveError("bad trace token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

const std::string& field(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw MoveError("trace line missing field '" + key + "'");
  return it->second;
}

int to_int(const std::string& v) {
  try {
    std::size_t used = 0;
    int r = std::stoi(v, &used);
    if (used != v.size()) throw MoveError("bad number '" + v + "' in trace");
    return r;
  } catch (const std::exception&) {
    throw MoveError("bad number '" + v + "' in trace");
  }
}

Site parse_site(const std::string& v) {
  auto colon = v.find(':');
  if (colon == std::string::npos) throw MoveError("bad site '" + v + "' in trace");
  return Site{to_int(v.substr(0, colon)), to_int(v.substr(colon + 1))};
}

}  // namespace

MoveClass move_class(const Move& m) {
  if (std::holds_alternative<BaseShift>(m)) return MoveClass::BaseChange;
  if (std::holds_alternative<SVDelete>(m)) return MoveClass::SV;
  return MoveClass::WBar;
}

std::string to_trace(const Move& m) {
  std::ostringstream os;
  if (const auto* r = std::get_if<R1Insert>(&m)) {
    os << "R1I c=" << r->fresh << " comp=" << r->component << " gap=" << r->gap
       << " sign=" << sign_char(r->sign) << " ord=" << (r->over_first ? "OU" : "UO");
  } else if (const auto* r = std::get_if<R1Delete>(&m)) {
    os << "R1D c=" << r->crossing;
  } else if (const auto* r = std::get_if<R2Insert>(&m)) {
    os << "R2I c1=" << r->fresh1 << " c2=" << r->fresh2 << " over=" << r->over_site.component
       << ':' << r->over_site.gap << " under=" << r->under_site.component << ':'
       << r->under_site.gap << " sign=" << sign_char(r->sign)
       << " ord=" << (r->under_first ? "UO" : "OU");
  } else if (const auto* r = std::get_if<R2Delete>(&m)) {
    os << "R2D c1=" << r->c1 << " c2=" << r->c2;
  } else if (const auto* r = std::get_if<R3>(&m)) {
    os << "R3 t=" << r->t << " m=" << r->m << " c=" << r->c;
  } else if (const auto* r = std::get_if<OCSwap>(&m)) {
    os << "OC comp=" << r->component << " gap=" << r->gap;
  } else if (const auto* r = std::get_if<BaseShift>(&m)) {
    os << "BS comp=" << r->component << " dir=" << (r->dir > 0 ? "+1" : "-1");
  } else if (const auto* r = std::get_if<SVDelete>(&m)) {
    os << "SV c=" << r->crossing;
  }
  return os.str();
}

Move move_from_trace(std::string_view line) {
  std::string kind;
  auto kv = trace_fields(line, kind);
  if (kind == "R1I") {
    std::string ord = field(kv, "ord");
    if (ord != "OU" && ord != "UO") throw MoveError("bad ord '" + ord + "' in trace");
    return R1Insert{to_int(field(kv, "comp")), to_int(field(kv, "gap")),
                    parse_sign_token(field(kv, "sign")), ord == "OU", to_int(field(kv, "c"))};
  }
  if (kind == "R1D") return R1Delete{to_int(field(kv, "c"))};
  if (kind == "R2I") {
    std::string ord = field(kv, "ord");
    if (ord != "OU" && ord != "UO") throw MoveError("bad ord '" + ord + "' in trace");
    return R2Insert{parse_site(field(kv, "over")), parse_site(field(kv, "under")),
                    parse_sign_token(field(kv, "sign")), ord == "UO", to_int(field(kv, "c1")),
                    to_int(field(kv, "c2"))};
  }
  if (kind == "R2D") return R2Delete{to_int(field(kv, "c1")), to_int(field(kv, "c2"))};
  if (kind == "R3") return R3{to_int(field(kv, "t")), to_int(field(kv, "m")), to_int(field(kv, "c"))};
  if (kind == "OC") return OCSwap{to_int(field(kv, "comp")), to_int(field(kv, "gap"))};
  if (kind == "BS") {
    std::string dir = field(kv, "dir");
    if (dir != "+1" && dir != "-1") throw MoveError("bad dir '" + dir + "' in trace");
    return BaseShift{to_int(field(kv, "comp")), dir == "+1" ? 1 : -1};
  }
  if (kind == "SV") return SVDelete{to_int(field(kv, "c"))};
  throw MoveError("unknown move kind '" + kind + "' in trace");
}

Based apply(const Diagram& d, const BasePoints& p, const Move& m) {
  gauss::validate(d, p);
  Applier ap(d, p);
  Based out = std::visit(ap, m);
  gauss::validate(out.diagram, out.base);
  return out;
}

std::vector<Move> legal_moves(const Diagram& d, const BasePoints& p, MoveClass cls) {
  gauss::validate(d, p);
  std::vector<Move> out;
  structural_moves(d, p, cls, out);
  if (cls == MoveClass::WBar) insertion_moves(d, out);
  return out;
}

std::vector<WalkStep> random_walk(const Diagram& d, const BasePoints& p, std::uint64_t seed,
                                  int steps, const std::set<MoveClass>& classes,
                                  WalkOptions opts) {
  if (steps < 0) throw MoveError("negative step count");
  if (classes.empty()) throw MoveError("random walk needs at least one move class");
  gauss::validate(d, p);

  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
  auto unit = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

  std::vector<WalkStep> walk;
  walk.reserve(steps + 1);
  walk.push_back({Based{d, p}, std::nullopt});
  CrossingId next_fresh = d.max_crossing_id() + 1;

  for (int s = 0; s < steps; ++s) {
    const Based& cur = walk.back().state;
    std::vector<Move> structural;
    for (MoveClass cls : classes) structural_moves(cur.diagram, cur.base, cls, structural);

    std::vector<Move> shrinking;
    for (const Move& m : structural)
      if (std::holds_alternative<R1Delete>(m) || std::holds_alternative<R2Delete>(m) ||
          std::holds_alternative<SVDelete>(m))
        shrinking.push_back(m);

    int ncross = cur.diagram.crossing_count();
    std::vector<Move> pool;
    if (ncross >= opts.size_cap && !structural.empty()) {
      pool = std::move(structural);
    } else if (ncross > opts.deletion_bias_from && !shrinking.empty() &&
               unit() < static_cast<double>(ncross - opts.deletion_bias_from) /
                            std::max(1, opts.size_cap - opts.deletion_bias_from)) {
      pool = std::move(shrinking);
    } else {
      pool = std::move(structural);
      insertion_moves(cur.diagram, pool);
    }
    if (pool.empty()) insertion_moves(cur.diagram, pool);

    Move mv = pool[pick(pool.size())];
    if (auto* r1 = std::get_if<R1Insert>(&mv)) {
      r1->fresh = next_fresh++;
    } else if (auto* r2 = std::get_if<R2Insert>(&mv)) {
      r2->fresh1 = next_fresh++;
      r2->fresh2 = next_fresh++;
    }
    walk.push_back({apply(cur.diagram, cur.base, mv), mv});
  }
  return walk;
}

}  // namespace weldmu::moves
