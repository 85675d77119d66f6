#pragma once

// Virtual link diagrams: 4-valent diagrams with classical (over/under) and
// virtual crossings, plus a count of crossing-free loops.
//
// Conventions, used everywhere downstream:
//  * each crossing stores its four edge-ends counterclockwise (slots 0..3);
//    slots 0,2 belong to one strand, slots 1,3 to the other;
//  * for a classical crossing, slot 0 is the incoming under-strand end and
//    slot 2 the outgoing under-strand end;
//  * sign of a classical crossing is +1 iff the over-strand enters at slot 3;
//  * parity() is the rotation sense from the slot-0 strand's direction to the
//    other strand's direction (defined for virtual crossings as well).

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace stacklab {

using EdgeId = std::uint32_t;

enum class Kind : std::uint8_t { Classical, Virtual };

struct End {
  EdgeId edge = 0;
  bool in = false;
  bool operator==(const End&) const = default;
};

struct Crossing {
  Kind kind = Kind::Classical;
  std::array<End, 4> ccw{};

  bool operator==(const Crossing&) const = default;

  // +1 iff the over-strand enters at slot 3. Classical crossings only.
  int sign() const {
    if (kind != Kind::Classical) throw std::logic_error("sign() of a virtual crossing");
    return ccw[3].in ? +1 : -1;
  }

  // Rotation sense from the slot-0 strand's direction to the slot-1 strand's
  // direction. With slot k drawn at compass point S,E,N,W for k=0..3, the
  // slot-0 strand runs vertically and the other horizontally.
  int parity() const {
    int ay = ccw[0].in ? +1 : -1;
    int bx = ccw[3].in ? +1 : -1;
    return -ay * bx;
  }
};

struct VirtualDiagram {
  std::vector<Crossing> crossings;
  std::uint32_t free_loops = 0;

  bool operator==(const VirtualDiagram&) const = default;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int n_classical(const VirtualDiagram& d) {
  int n = 0;
  for (const auto& c : d.crossings) n += c.kind == Kind::Classical;
  return n;
}
inline int n_virtual(const VirtualDiagram& d) {
  return static_cast<int>(d.crossings.size()) - n_classical(d);
}

// An edge-end position: crossing index + slot.
struct EndRef {
  int crossing = -1;
  int slot = -1;
  bool valid() const { return crossing >= 0; }
  bool operator==(const EndRef&) const = default;
};

// The strand continues at the opposite slot.
inline int opposite_slot(int slot) { return slot ^ 2; }

namespace detail {

struct EdgeEnds {
  EndRef out;  // tail: the end where the edge leaves a crossing
  EndRef in;   // head
  int count = 0;
};

inline std::map<EdgeId, EdgeEnds> edge_index(const VirtualDiagram& d,
                                             std::vector<std::string>* violations = nullptr) {
  std::map<EdgeId, EdgeEnds> idx;
  auto complain = [&](const std::string& msg) {
    if (violations)
      violations->push_back(msg);
    else
      throw DiagramError(msg);
  };
  for (int ci = 0; ci < static_cast<int>(d.crossings.size()); ++ci) {
    for (int s = 0; s < 4; ++s) {
      const End& e = d.crossings[ci].ccw[s];
      if (e.edge == 0) {
        complain("edge id 0 at crossing " + std::to_string(ci));
        continue;
      }
      auto& ee = idx[e.edge];
      ee.count++;
      if (e.in) {
        if (ee.in.valid())
          complain("edge " + std::to_string(e.edge) + " used twice as incoming");
        else
          ee.in = EndRef{ci, s};
      } else {
        if (ee.out.valid())
          complain("edge " + std::to_string(e.edge) + " used twice as outgoing");
        else
          ee.out = EndRef{ci, s};
      }
    }
  }
  for (const auto& [e, ee] : idx) {
    if (ee.count != 2)
      complain("edge " + std::to_string(e) + " occurs " + std::to_string(ee.count) +
               " times (expected 2)");
    else if (!ee.in.valid() || !ee.out.valid())
      complain("edge " + std::to_string(e) + " lacks a consistent in/out pair");
  }
  return idx;
}

}  // namespace detail

// Structural violations, empty iff the diagram is valid. Violations are
// returned rather than thrown.
inline std::vector<std::string> validate(const VirtualDiagram& d) {
  std::vector<std::string> v;
  for (int ci = 0; ci < static_cast<int>(d.crossings.size()); ++ci) {
    const Crossing& c = d.crossings[ci];
    auto str = std::to_string(ci);
    if (c.kind == Kind::Classical) {
      if (!c.ccw[0].in) v.push_back("crossing " + str + ": slot 0 must be the incoming under-end");
      if (c.ccw[2].in) v.push_back("crossing " + str + ": slot 2 must be the outgoing under-end");
    } else {
      if (c.ccw[0].in == c.ccw[2].in)
        v.push_back("crossing " + str + ": slots 0,2 must be one incoming, one outgoing");
    }
    if (c.ccw[1].in == c.ccw[3].in)
      v.push_back("crossing " + str + ": slots 1,3 must be one incoming, one outgoing");
  }
  detail::edge_index(d, &v);
  return v;
}

inline void require_valid(const VirtualDiagram& d) {
  auto v = validate(d);
  if (!v.empty()) throw DiagramError("invalid diagram: " + v.front());
}

namespace detail {

// Oriented components of the strand graph: each is the cyclic sequence of
// head-ends visited. Components are ordered by their smallest edge id.
inline std::vector<std::vector<EndRef>> trace_components(
    const VirtualDiagram& d, const std::map<EdgeId, EdgeEnds>& idx) {
  std::vector<std::vector<EndRef>> comps;
  std::set<EdgeId> seen;
  for (const auto& [start_edge, ends] : idx) {
    if (seen.count(start_edge)) continue;
    std::vector<EndRef> cycle;
    EdgeId e = start_edge;
    do {
      seen.insert(e);
      EndRef head = idx.at(e).in;
      cycle.push_back(head);
      int exit_slot = opposite_slot(head.slot);
      const End& next = d.crossings[head.crossing].ccw[exit_slot];
      if (next.in) throw DiagramError("strand exits into an incoming end");
      e = next.edge;
    } while (e != start_edge);
    comps.push_back(std::move(cycle));
  }
  return comps;
}

}  // namespace detail

// Number of closed components, free loops included.
inline int components(const VirtualDiagram& d) {
  auto idx = detail::edge_index(d);
  return static_cast<int>(detail::trace_components(d, idx).size()) + static_cast<int>(d.free_loops);
}

// Map edge -> component index (components ordered as in components()).
inline std::map<EdgeId, int> component_of_edge(const VirtualDiagram& d) {
  auto idx = detail::edge_index(d);
  auto comps = detail::trace_components(d, idx);
  std::map<EdgeId, int> m;
  for (int k = 0; k < static_cast<int>(comps.size()); ++k)
    for (const EndRef& head : comps[k]) {
      const End& e = d.crossings[head.crossing].ccw[head.slot];
      m[e.edge] = k;
    }
  return m;
}

// Sum of classical crossing signs.
inline int writhe(const VirtualDiagram& d) {
  int w = 0;
  for (const auto& c : d.crossings)
    if (c.kind == Kind::Classical) w += c.sign();
  return w;
}

inline Crossing rotated(const Crossing& c, int k) {
  Crossing r = c;
  for (int i = 0; i < 4; ++i) r.ccw[i] = c.ccw[(i + k) & 3];
  return r;
}

// Switch over/under at every classical crossing (the quadruple is re-anchored
// so slot 0 is the new incoming under-end). Virtual crossings are unchanged.
inline VirtualDiagram vertical_reflect(const VirtualDiagram& d) {
  VirtualDiagram r = d;
  for (auto& c : r.crossings) {
    if (c.kind != Kind::Classical) continue;
    c = rotated(c, c.sign() > 0 ? 3 : 1);
  }
  return r;
}

// Mirror image: reverse each quadruple's cyclic order keeping slot 0 anchored;
// over/under assignments are preserved, signs negate.
inline VirtualDiagram horizontal_reflect(const VirtualDiagram& d) {
  VirtualDiagram r = d;
  for (auto& c : r.crossings) {
    std::swap(c.ccw[1], c.ccw[3]);
  }
  return r;
}

// --- PD text ---------------------------------------------------------------
//
// Grammar: PD[ item (, item)* ] with item := X[a,b,c,d] | V[a,b,c,d] | O.
// X entries follow the usual convention: a is the incoming under-edge, b,c,d
// counterclockwise. Direction flags are inferred: classical under-passages are
// pinned, remaining strand directions come from consecutive edge numbering
// along each component (single wraparound allowed). Ambiguous orientations are
// rejected.

namespace detail {

struct PdTokenizer {
  const std::string& s;
  size_t pos = 0;
  explicit PdTokenizer(const std::string& text) : s(text) {}
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw ParseError("PD syntax error: expected '" + std::string(1, c) + "' at offset " +
                       std::to_string(pos));
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  long number() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw ParseError("PD syntax error: expected number at offset " + std::to_string(pos));
    return std::stol(s.substr(start, pos - start));
  }
};

// Resolve in/out flags. Classical under-passages fix the orientation of their
// component; components without such a pin fall back to consecutive edge
// numbering (cyclically increasing with exactly one descent).
inline void infer_directions(VirtualDiagram& d) {
  int n = static_cast<int>(d.crossings.size());
  // Occurrences of each edge among all slots.
  std::map<EdgeId, std::vector<EndRef>> occ;
  for (int ci = 0; ci < n; ++ci)
    for (int s = 0; s < 4; ++s) {
      EdgeId e = d.crossings[ci].ccw[s].edge;
      if (e == 0) throw ParseError("edge ids must be positive");
      occ[e].push_back(EndRef{ci, s});
    }
  for (const auto& [e, ends] : occ)
    if (ends.size() != 2)
      throw DiagramError("edge-matching violation: edge " + std::to_string(e) + " occurs " +
                         std::to_string(ends.size()) + " times");

  // Undirected components: walk slot -> opposite slot -> other occurrence.
  std::vector<std::array<int, 4>> comp(n, {-1, -1, -1, -1});
  auto other_occurrence = [&](int ci, int s) -> EndRef {
    const auto& ends = occ.at(d.crossings[ci].ccw[s].edge);
    return ends[0] == EndRef{ci, s} ? ends[1] : ends[0];
  };
  int ncomp = 0;
  std::vector<std::vector<EndRef>> members;
  for (int ci = 0; ci < n; ++ci)
    for (int s = 0; s < 4; ++s) {
      if (comp[ci][s] != -1) continue;
      std::vector<EndRef> mem;
      int c = ci, sl = s;
      while (comp[c][sl] == -1) {
        comp[c][sl] = ncomp;
        mem.push_back({c, sl});
        int op = opposite_slot(sl);
        comp[c][op] = ncomp;
        mem.push_back({c, op});
        EndRef nxt = other_occurrence(c, op);
        c = nxt.crossing;
        sl = nxt.slot;
      }
      members.push_back(std::move(mem));
      ++ncomp;
    }

  // For one choice of direction, check the classical pins and whether the
  // edge numbers are cyclically increasing. A "direction" is expressed by
  // walking the component from a fixed start end, treating that end as
  // incoming (fw) or outgoing (bw).
  std::vector<std::array<signed char, 4>> inflag(n, {-1, -1, -1, -1});
  for (int k = 0; k < ncomp; ++k) {
    EndRef start = members[static_cast<size_t>(k)].front();
    std::vector<std::vector<std::pair<EndRef, EndRef>>> valid;  // (in end, out end) walks
    for (int dir = 0; dir < 2; ++dir) {
      // dir 0 treats `start` as incoming; dir 1 walks the reverse orientation,
      // whose entry slot at the same passage is the opposite one.
      EndRef head = dir == 0 ? start : EndRef{start.crossing, opposite_slot(start.slot)};
      std::vector<std::pair<EndRef, EndRef>> passages;
      std::vector<EdgeId> edge_seq;
      EndRef cur = head;
      do {
        EndRef out{cur.crossing, opposite_slot(cur.slot)};
        passages.push_back({cur, out});
        edge_seq.push_back(d.crossings[cur.crossing].ccw[cur.slot].edge);
        cur = other_occurrence(out.crossing, out.slot);
      } while (!(cur == head));
      // Classical pins: an under passage must enter at slot 0.
      bool pinned = false, pin_ok = true;
      for (auto& [pin, pout] : passages) {
        if (d.crossings[pin.crossing].kind != Kind::Classical) continue;
        if (pin.slot == 0 || pin.slot == 2) {
          pinned = true;
          if (pin.slot != 0) pin_ok = false;
        }
      }
      bool ok;
      if (pinned) {
        ok = pin_ok;
      } else {
        // Numbering rule: edge ids cyclically increasing along the walk.
        int descents = 0;
        for (size_t i = 0; i < edge_seq.size() && edge_seq.size() > 1; ++i)
          if (edge_seq[(i + 1) % edge_seq.size()] <= edge_seq[i]) ++descents;
        ok = descents <= 1;
      }
      if (ok) valid.push_back(std::move(passages));
    }
    if (valid.empty())
      throw ParseError("no consistent in/out assignment (component containing crossing " +
                       std::to_string(start.crossing) + ")");
    if (valid.size() > 1)
      throw ParseError("ambiguous orientation (component containing crossing " +
                       std::to_string(start.crossing) + ")");
    for (auto& [pin, pout] : valid.front()) {
      inflag[pin.crossing][pin.slot] = 1;
      inflag[pout.crossing][pout.slot] = 0;
    }
  }
  for (int ci = 0; ci < n; ++ci)
    for (int s = 0; s < 4; ++s) d.crossings[ci].ccw[s].in = inflag[ci][s] == 1;
}

}  // namespace detail

inline VirtualDiagram parse_pd(const std::string& text) {
  detail::PdTokenizer t(text);
  t.skip_ws();
  if (!(t.eat('P') && t.eat('D')))
    throw ParseError("PD syntax error: input must start with PD[");
  t.expect('[');
  VirtualDiagram d;
  if (!t.eat(']')) {
    do {
      char c = t.peek();
      if (c == 'O' || c == 'o') {
        ++t.pos;
        d.free_loops++;
      } else if (c == 'X' || c == 'V') {
        ++t.pos;
        t.expect('[');
        Crossing cr;
        cr.kind = (c == 'X') ? Kind::Classical : Kind::Virtual;
        for (int i = 0; i < 4; ++i) {
          if (i) t.expect(',');
          long v = t.number();
          if (v <= 0) throw ParseError("edge ids must be positive");
          cr.ccw[i].edge = static_cast<EdgeId>(v);
        }
        t.expect(']');
        d.crossings.push_back(cr);
      } else {
        throw ParseError("PD syntax error: expected X, V or O at offset " + std::to_string(t.pos));
      }
    } while (t.eat(','));
    t.expect(']');
  }
  t.skip_ws();
  if (t.pos != t.s.size()) throw ParseError("PD syntax error: trailing input");

  if (!d.crossings.empty()) detail::infer_directions(d);
  auto v = validate(d);
  if (!v.empty()) throw DiagramError("edge-matching violation: " + v.front());
  return d;
}

// Serialize with canonical consecutive edge numbering (components ordered by
// smallest original edge id, each renumbered along its orientation).
inline std::string to_pd_text(const VirtualDiagram& d) {
  auto idx = detail::edge_index(d);
  auto comps = detail::trace_components(d, idx);
  std::map<EdgeId, EdgeId> renum;
  EdgeId next = 1;
  for (auto& cyc : comps) {
    // Start at the smallest old edge id in the cycle.
    size_t best = 0;
    for (size_t i = 1; i < cyc.size(); ++i) {
      EdgeId ei = d.crossings[cyc[i].crossing].ccw[cyc[i].slot].edge;
      EdgeId eb = d.crossings[cyc[best].crossing].ccw[cyc[best].slot].edge;
      if (ei < eb) best = i;
    }
    for (size_t i = 0; i < cyc.size(); ++i) {
      const EndRef& r = cyc[(best + i) % cyc.size()];
      renum[d.crossings[r.crossing].ccw[r.slot].edge] = next++;
    }
  }
  std::string out = "PD[";
  bool first = true;
  for (const auto& c : d.crossings) {
    if (!first) out += ", ";
    first = false;
    out += (c.kind == Kind::Classical) ? "X[" : "V[";
    for (int i = 0; i < 4; ++i) {
      if (i) out += ",";
      out += std::to_string(renum.at(c.ccw[i].edge));
    }
    out += "]";
  }
  for (std::uint32_t i = 0; i < d.free_loops; ++i) {
    if (!first) out += ", ";
    first = false;
    out += "O";
  }
  out += "]";
  return out;
}

// Signed over/under Gauss code of a one-component diagram; virtual crossings
// are omitted. The code starts at the tail of the smallest edge.
inline std::string gauss_code(const VirtualDiagram& d) {
  auto idx = detail::edge_index(d);
  auto comps = detail::trace_components(d, idx);
  if (comps.size() + d.free_loops != 1) throw DiagramError("gauss_code needs a one-component diagram");
  if (comps.empty()) return "";
  // Order passages starting with the passage that emits the smallest edge.
  const auto& cyc = comps[0];
  size_t start = 0;
  EdgeId beste = 0;
  for (size_t i = 0; i < cyc.size(); ++i) {
    // cyc[i] is the head end of some edge; the passage at cyc[i] emits the
    // edge at the opposite slot.
    const EndRef& r = cyc[i];
    EdgeId emitted = d.crossings[r.crossing].ccw[opposite_slot(r.slot)].edge;
    if (beste == 0 || emitted < beste) {
      beste = emitted;
      start = i;
    }
  }
  std::map<int, int> label;
  std::string code;
  for (size_t k = 0; k < cyc.size(); ++k) {
    const EndRef& r = cyc[(start + k) % cyc.size()];
    const Crossing& c = d.crossings[r.crossing];
    if (c.kind != Kind::Classical) continue;
    auto it = label.find(r.crossing);
    if (it == label.end()) it = label.emplace(r.crossing, static_cast<int>(label.size()) + 1).first;
    bool under = (r.slot == 0);
    code += under ? 'U' : 'O';
    code += std::to_string(it->second);
    code += c.sign() > 0 ? '+' : '-';
  }
  return code;
}

// Apply an edge relabeling (must be injective on the diagram's edges).
inline VirtualDiagram relabel_edges(const VirtualDiagram& d, const std::map<EdgeId, EdgeId>& m) {
  VirtualDiagram r = d;
  for (auto& c : r.crossings)
    for (auto& e : c.ccw) e.edge = m.at(e.edge);
  return r;
}

// Insert a Reidemeister-I kink on the given edge. The original edge keeps its
// id up to the kink's under-entry; two fresh ids continue to the old head.
inline VirtualDiagram with_kink(const VirtualDiagram& d, EdgeId edge, bool positive) {
  auto idx = detail::edge_index(d);
  if (!idx.count(edge)) throw DiagramError("with_kink: no such edge");
  EdgeId n1 = 0, n2 = 0;
  for (const auto& [e, ee] : idx) n1 = std::max(n1, e);
  n2 = n1 + 2;
  n1 = n1 + 1;
  VirtualDiagram r = d;
  EndRef head = idx.at(edge).in;
  r.crossings[head.crossing].ccw[head.slot].edge = n2;
  Crossing k;
  k.kind = Kind::Classical;
  if (positive) {
    k.ccw = {End{edge, true}, End{n2, false}, End{n1, false}, End{n1, true}};
  } else {
    k.ccw = {End{edge, true}, End{n1, true}, End{n1, false}, End{n2, false}};
  }
  r.crossings.push_back(k);
  return r;
}

// Keep only the selected components (indices as ordered by components():
// strand components by smallest edge id first, then free loops). Crossings
// between a kept and a dropped strand are smoothed into pass-throughs; kept
// components that lose all crossings become free loops.
inline VirtualDiagram restrict_to_components(const VirtualDiagram& d, const std::set<int>& keep) {
  auto idx = detail::edge_index(d);
  auto comps = detail::trace_components(d, idx);
  int nstrand = static_cast<int>(comps.size());
  std::vector<int> comp_of_cr(d.crossings.size() * 4, -1);
  for (int k = 0; k < nstrand; ++k)
    for (const EndRef& r : comps[static_cast<size_t>(k)]) {
      comp_of_cr[static_cast<size_t>(r.crossing) * 4 + r.slot] = k;
      comp_of_cr[static_cast<size_t>(r.crossing) * 4 + opposite_slot(r.slot)] = k;
    }
  auto strand_kept = [&](int ci, int slot) {
    return keep.count(comp_of_cr[static_cast<size_t>(ci) * 4 + slot]) > 0;
  };
  std::vector<char> crossing_kept(d.crossings.size(), 0);
  for (size_t ci = 0; ci < d.crossings.size(); ++ci)
    crossing_kept[ci] = strand_kept(static_cast<int>(ci), 0) && strand_kept(static_cast<int>(ci), 1);

  VirtualDiagram out;
  std::map<std::pair<int, int>, EdgeId> new_edge_at;  // (crossing, in-slot) -> new in edge
  EdgeId next_edge = 1;
  for (int k = 0; k < nstrand; ++k) {
    if (!keep.count(k)) continue;
    std::vector<EndRef> kept_heads;
    for (const EndRef& r : comps[static_cast<size_t>(k)])
      if (crossing_kept[static_cast<size_t>(r.crossing)]) kept_heads.push_back(r);
    if (kept_heads.empty()) {
      out.free_loops++;
      continue;
    }
    for (size_t i = 0; i < kept_heads.size(); ++i) {
      const EndRef& from = kept_heads[i];
      const EndRef& to = kept_heads[(i + 1) % kept_heads.size()];
      // New edge from the passage at `from` to the passage entry at `to`.
      new_edge_at[{to.crossing, to.slot}] = next_edge;
      new_edge_at[{from.crossing, -1 - opposite_slot(from.slot)}] = next_edge;  // out marker
      ++next_edge;
    }
  }
  for (size_t ci = 0; ci < d.crossings.size(); ++ci) {
    if (!crossing_kept[ci]) continue;
    Crossing c = d.crossings[ci];
    for (int s = 0; s < 4; ++s) {
      auto key = c.ccw[s].in ? std::pair<int, int>{static_cast<int>(ci), s}
                             : std::pair<int, int>{static_cast<int>(ci), -1 - s};
      c.ccw[s].edge = new_edge_at.at(key);
    }
    out.crossings.push_back(c);
  }
  for (int k = nstrand; k < nstrand + static_cast<int>(d.free_loops); ++k)
    if (keep.count(k)) out.free_loops++;
  return out;
}

}  // namespace stacklab
