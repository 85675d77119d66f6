#pragma once

// Canonical encodings of diagrams up to relabeling: a breadth-first labeling
// from every possible start end, keeping the lexicographic minimum. Two
// diagrams are isomorphic (as abstract oriented diagrams) iff their canonical
// encodings agree. Virtual quadruples are compared up to rotation; classical
// ones are anchored at the under-in end.

#include <cstdint>
#include <deque>
#include <map>

#include "stacklab/diagram.hpp"

namespace stacklab {

namespace detail {

inline std::vector<std::uint64_t> encode_from(const VirtualDiagram& d,
                                              const std::map<EdgeId, EdgeEnds>& idx, int start_cr,
                                              int start_slot) {
  std::vector<std::uint64_t> enc;
  std::map<int, int> cr_new;
  std::map<EdgeId, std::uint64_t> edge_new;
  std::deque<std::pair<int, int>> queue;  // (crossing, entry slot)
  queue.push_back({start_cr, start_slot});
  while (!queue.empty()) {
    auto [ci, entry] = queue.front();
    queue.pop_front();
    if (cr_new.count(ci)) continue;
    cr_new[ci] = static_cast<int>(cr_new.size());
    const Crossing& c = d.crossings[static_cast<size_t>(ci)];
    enc.push_back(c.kind == Kind::Classical ? 1 : 2);
    for (int k = 0; k < 4; ++k) {
      int slot = c.kind == Kind::Classical ? k : (entry + k) & 3;
      const End& e = c.ccw[slot];
      auto it = edge_new.find(e.edge);
      if (it == edge_new.end()) it = edge_new.emplace(e.edge, edge_new.size() + 1).first;
      enc.push_back(it->second * 2 + (e.in ? 1 : 0));
      const EdgeEnds& ee = idx.at(e.edge);
      EndRef other = (ee.in.crossing == ci && ee.in.slot == slot) ? ee.out : ee.in;
      if (!cr_new.count(other.crossing)) queue.push_back({other.crossing, other.slot});
    }
  }
  return enc;
}

}  // namespace detail

// Sorted piece encodings plus the free-loop count.
inline std::vector<std::vector<std::uint64_t>> canonical_encoding(const VirtualDiagram& d) {
  auto idx = detail::edge_index(d);
  int n = static_cast<int>(d.crossings.size());
  // Connected pieces of the crossing graph.
  std::vector<int> piece(static_cast<size_t>(n), -1);
  std::vector<std::vector<int>> pieces;
  for (int s = 0; s < n; ++s) {
    if (piece[static_cast<size_t>(s)] != -1) continue;
    std::vector<int> stack{s}, mem;
    piece[static_cast<size_t>(s)] = static_cast<int>(pieces.size());
    while (!stack.empty()) {
      int ci = stack.back();
      stack.pop_back();
      mem.push_back(ci);
      for (int k = 0; k < 4; ++k) {
        const detail::EdgeEnds& ee = idx.at(d.crossings[static_cast<size_t>(ci)].ccw[k].edge);
        for (const EndRef& r : {ee.in, ee.out}) {
          if (piece[static_cast<size_t>(r.crossing)] == -1) {
            piece[static_cast<size_t>(r.crossing)] = piece[static_cast<size_t>(ci)];
            stack.push_back(r.crossing);
          }
        }
      }
    }
    pieces.push_back(std::move(mem));
  }
  std::vector<std::vector<std::uint64_t>> result;
  for (const auto& mem : pieces) {
    std::vector<std::uint64_t> best;
    for (int ci : mem)
      for (int s = 0; s < 4; ++s) {
        auto enc = detail::encode_from(d, idx, ci, s);
        if (best.empty() || enc < best) best = std::move(enc);
      }
    result.push_back(std::move(best));
  }
  std::sort(result.begin(), result.end());
  result.push_back({d.free_loops});
  return result;
}

inline bool isomorphic(const VirtualDiagram& a, const VirtualDiagram& b) {
  return canonical_encoding(a) == canonical_encoding(b);
}

// FNV-1a over the canonical encoding; usable as a content key.
inline std::uint64_t canonical_hash(const VirtualDiagram& d) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (const auto& piece : canonical_encoding(d)) {
    mix(0xabcdef);
    for (std::uint64_t v : piece) mix(v);
  }
  return h;
}

}  // namespace stacklab
