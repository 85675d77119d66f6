#pragma once

// Stacks: m vertically glued copies of a diagram, copy i reflected when the
// i-th symbol is '-'. Layer 1 is the top layer. Diagrammatically every edge
// becomes m parallel cables and every crossing an m x m grid of crossings
// between the two cables, the higher layer passing over.

#include <string>
#include <vector>

#include "stacklab/diagram.hpp"

namespace stacklab {

struct StackSequence {
  std::vector<int> signs;  // +1 / -1, layer 1 first (top)

  int layers() const { return static_cast<int>(signs.size()); }
  std::string text() const {
    std::string s;
    for (int x : signs) s += x > 0 ? '+' : '-';
    return s;
  }
  bool operator==(const StackSequence&) const = default;
};

inline StackSequence parse_stack_sequence(const std::string& text) {
  if (text.empty()) throw ParseError("stack sequence must be nonempty");
  StackSequence s;
  for (char c : text) {
    if (c == '+')
      s.signs.push_back(+1);
    else if (c == '-')
      s.signs.push_back(-1);
    else
      throw ParseError(std::string("stack sequence: illegal character '") + c + "'");
  }
  return s;
}

inline VirtualDiagram build_stack(const VirtualDiagram& d, const StackSequence& seq) {
  require_valid(d);
  const int m = seq.layers();
  if (m < 1) throw DiagramError("stack needs at least one layer");

  // Cable ids: sorted base edges, m copies each, layer-major within an edge.
  auto idx = detail::edge_index(d);
  std::map<EdgeId, EdgeId> cable_base;
  EdgeId next_id = 1;
  for (const auto& [e, ends] : idx) {
    cable_base[e] = next_id;
    next_id += static_cast<EdgeId>(m);
  }
  auto cable = [&](EdgeId base_edge, int layer) -> EdgeId {
    return cable_base.at(base_edge) + static_cast<EdgeId>(layer - 1);
  };

  VirtualDiagram out;
  out.free_loops = d.free_loops * static_cast<std::uint32_t>(m);
  out.crossings.reserve(d.crossings.size() * static_cast<size_t>(m) * static_cast<size_t>(m));

  for (const Crossing& c : d.crossings) {
    // Passage P occupies slots 0,2 and Q slots 1,3, each oriented in -> out.
    int p_in_slot = c.ccw[0].in ? 0 : 2;
    int q_in_slot = c.ccw[1].in ? 1 : 3;
    EdgeId p_in = c.ccw[p_in_slot].edge, p_out = c.ccw[opposite_slot(p_in_slot)].edge;
    EdgeId q_in = c.ccw[q_in_slot].edge, q_out = c.ccw[opposite_slot(q_in_slot)].edge;
    const int eps = c.parity();

    // Internal grid edges: P-cable rows then Q-cable columns, m-1 steps each.
    std::vector<std::vector<EdgeId>> p_chain(static_cast<size_t>(m + 1)),
        q_chain(static_cast<size_t>(m + 1));
    for (int i = 1; i <= m; ++i) {
      auto& ch = p_chain[static_cast<size_t>(i)];
      ch.push_back(cable(p_in, i));
      for (int t = 1; t < m; ++t) ch.push_back(next_id++);
      ch.push_back(cable(p_out, i));
    }
    for (int j = 1; j <= m; ++j) {
      auto& ch = q_chain[static_cast<size_t>(j)];
      ch.push_back(cable(q_in, j));
      for (int t = 1; t < m; ++t) ch.push_back(next_id++);
      ch.push_back(cable(q_out, j));
    }

    // Position of column j along P^(i)'s walk, and of row i along Q^(j)'s.
    auto p_step = [&](int j) { return eps > 0 ? j - 1 : m - j; };
    auto q_step = [&](int i) { return eps > 0 ? m - i : i - 1; };

    for (int i = 1; i <= m; ++i) {
      for (int j = 1; j <= m; ++j) {
        EdgeId pi = p_chain[static_cast<size_t>(i)][static_cast<size_t>(p_step(j))];
        EdgeId po = p_chain[static_cast<size_t>(i)][static_cast<size_t>(p_step(j)) + 1];
        EdgeId qi = q_chain[static_cast<size_t>(j)][static_cast<size_t>(q_step(i))];
        EdgeId qo = q_chain[static_cast<size_t>(j)][static_cast<size_t>(q_step(i)) + 1];

        Crossing g;
        End P_in{pi, true}, P_out{po, false}, Q_in{qi, true}, Q_out{qo, false};
        // Counterclockwise cycle is (P_in, south, P_out, north); the Q ends
        // sit south/north according to the parity.
        End south = eps > 0 ? Q_in : Q_out;
        End north = eps > 0 ? Q_out : Q_in;
        if (c.kind == Kind::Virtual) {
          g.kind = Kind::Virtual;
          g.ccw = {P_in, south, P_out, north};
        } else {
          g.kind = Kind::Classical;
          bool p_under;
          if (i < j)
            p_under = false;  // layer i is higher: P over
          else if (i > j)
            p_under = true;
          else
            p_under = seq.signs[static_cast<size_t>(i - 1)] > 0;
          if (p_under) {
            g.ccw = {P_in, south, P_out, north};
          } else if (eps > 0) {
            g.ccw = {Q_in, P_out, Q_out, P_in};
          } else {
            g.ccw = {Q_in, P_in, Q_out, P_out};
          }
        }
        out.crossings.push_back(g);
      }
    }
  }
  return out;
}

}  // namespace stacklab
