#pragma once

// Kauffman bracket state sum for virtual diagrams, and the writhe-normalized
// Jones polynomial in q = t^{1/2}.
//
// The A-smoothing at a classical crossing joins slots (0,1) and (2,3) of the
// anchored quadruple; the B-smoothing joins (1,2) and (3,0). This pairing is
// pinned by the calibration <positive kink> = -A^3. Strands pass straight
// through virtual crossings.

#include <array>
#include <atomic>
#include <cstdint>
#include <thread>

#include "stacklab/diagram.hpp"
#include "stacklab/laurent.hpp"

namespace stacklab {

struct BracketOptions {
  int state_cap = 24;
  int threads = 1;
};

namespace detail {

struct BracketStructure {
  std::vector<int> classical;        // crossing indices
  std::vector<int> port_partner;     // size 4*classical.size(); fixed wiring between classical ends
  int base_loops = 0;                // loops avoiding every classical crossing (incl. free loops)
};

inline BracketStructure bracket_structure(const VirtualDiagram& d) {
  require_valid(d);
  BracketStructure bs;
  auto idx = edge_index(d);
  const int n = static_cast<int>(d.crossings.size());
  std::vector<int> port_of(static_cast<size_t>(n) * 4, -1);
  for (int ci = 0; ci < n; ++ci)
    if (d.crossings[static_cast<size_t>(ci)].kind == Kind::Classical) {
      int base = static_cast<int>(bs.classical.size()) * 4;
      for (int s = 0; s < 4; ++s) port_of[static_cast<size_t>(ci) * 4 + s] = base + s;
      bs.classical.push_back(ci);
    }

  auto edge_other = [&](int ci, int s) -> EndRef {
    const EdgeEnds& ee = idx.at(d.crossings[static_cast<size_t>(ci)].ccw[s].edge);
    return (ee.in.crossing == ci && ee.in.slot == s) ? ee.out : ee.in;
  };

  bs.port_partner.assign(bs.classical.size() * 4, -1);
  std::vector<char> seen(static_cast<size_t>(n) * 4, 0);
  for (size_t p = 0; p < bs.classical.size() * 4; ++p) {
    if (bs.port_partner[p] != -1) continue;
    int ci = bs.classical[p / 4], s = static_cast<int>(p % 4);
    seen[static_cast<size_t>(ci) * 4 + s] = 1;
    EndRef cur = edge_other(ci, s);
    while (d.crossings[static_cast<size_t>(cur.crossing)].kind == Kind::Virtual) {
      seen[static_cast<size_t>(cur.crossing) * 4 + cur.slot] = 1;
      cur = EndRef{cur.crossing, opposite_slot(cur.slot)};
      seen[static_cast<size_t>(cur.crossing) * 4 + cur.slot] = 1;
      cur = edge_other(cur.crossing, cur.slot);
    }
    seen[static_cast<size_t>(cur.crossing) * 4 + cur.slot] = 1;
    int q = port_of[static_cast<size_t>(cur.crossing) * 4 + cur.slot];
    bs.port_partner[p] = q;
    bs.port_partner[static_cast<size_t>(q)] = static_cast<int>(p);
  }
  // Cycles through virtual crossings only.
  for (int ci = 0; ci < n; ++ci) {
    if (d.crossings[static_cast<size_t>(ci)].kind != Kind::Virtual) continue;
    for (int s = 0; s < 4; ++s) {
      if (seen[static_cast<size_t>(ci) * 4 + s]) continue;
      EndRef cur{ci, s};
      while (!seen[static_cast<size_t>(cur.crossing) * 4 + cur.slot]) {
        seen[static_cast<size_t>(cur.crossing) * 4 + cur.slot] = 1;
        int op = opposite_slot(cur.slot);
        seen[static_cast<size_t>(cur.crossing) * 4 + op] = 1;
        cur = edge_other(cur.crossing, op);
      }
      bs.base_loops++;
    }
  }
  bs.base_loops += static_cast<int>(d.free_loops);
  return bs;
}

}  // namespace detail

inline LaurentA kauffman_bracket(const VirtualDiagram& d, const BracketOptions& opt = {}) {
  auto bs = detail::bracket_structure(d);
  const int c = static_cast<int>(bs.classical.size());
  if (c > opt.state_cap)
    throw DiagramError("kauffman_bracket: " + std::to_string(c) +
                       " classical crossings exceed the state cap of " +
                       std::to_string(opt.state_cap));
  const int total_loops_base = bs.base_loops;
  if (c == 0) {
    // No states to sum; delta^(loops-1), with the empty diagram normalized to 1.
    LaurentA r = LaurentA::constant(1);
    LaurentA delta = bracket_delta();
    for (int i = 1; i < total_loops_base; ++i) r = r * delta;
    return r;
  }

  const std::uint64_t nstates = 1ull << c;
  const int nports = 4 * c;
  const int max_loops = nports / 2 + total_loops_base + 1;

  // Histogram over (number of A-smoothings, loop count).
  using Histogram = std::vector<std::uint64_t>;
  auto hist_index = [&](int a_count, int loops) {
    return static_cast<size_t>(a_count) * static_cast<size_t>(max_loops + 1) + static_cast<size_t>(loops);
  };

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi, Histogram& h) {
    std::vector<int> parent(static_cast<size_t>(nports));
    auto find = [&](int x) {
      while (parent[static_cast<size_t>(x)] != x) {
        parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        x = parent[static_cast<size_t>(x)];
      }
      return x;
    };
    auto unite = [&](int x, int y) {
      x = find(x);
      y = find(y);
      if (x != y) parent[static_cast<size_t>(x)] = y;
    };
    for (std::uint64_t state = lo; state < hi; ++state) {
      for (int i = 0; i < nports; ++i) parent[static_cast<size_t>(i)] = i;
      int a_count = 0;
      for (int i = 0; i < c; ++i) {
        int base = 4 * i;
        if (state >> i & 1) {
          ++a_count;  // A: join (0,1) and (2,3)
          unite(base + 0, base + 1);
          unite(base + 2, base + 3);
        } else {
          unite(base + 1, base + 2);
          unite(base + 3, base + 0);
        }
      }
      for (int p = 0; p < nports; ++p) unite(p, bs.port_partner[static_cast<size_t>(p)]);
      int loops = total_loops_base;
      for (int p = 0; p < nports; ++p)
        if (find(p) == p) ++loops;
      h[hist_index(a_count, loops)]++;
    }
  };

  const int threads = std::max(1, opt.threads);
  Histogram hist(static_cast<size_t>(c + 1) * static_cast<size_t>(max_loops + 1), 0);
  if (threads == 1 || nstates < 1024) {
    run_range(0, nstates, hist);
  } else {
    const std::uint64_t chunk = (nstates + 63) / 64;
    std::vector<Histogram> parts(64, hist);
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (;;) {
          int t = next.fetch_add(1);
          if (t >= 64) return;
          std::uint64_t lo = chunk * static_cast<std::uint64_t>(t);
          if (lo >= nstates) return;
          run_range(lo, std::min(nstates, lo + chunk), parts[static_cast<size_t>(t)]);
        }
      });
    for (auto& th : pool) th.join();
    for (const auto& part : parts)
      for (size_t i = 0; i < hist.size(); ++i) hist[i] += part[i];
  }

  // Assemble sum_{states} A^(a-b) delta^(loops-1).
  std::vector<LaurentA> delta_pow(static_cast<size_t>(max_loops + 1));
  delta_pow[0] = LaurentA::constant(1);
  for (int i = 1; i <= max_loops; ++i) delta_pow[static_cast<size_t>(i)] = delta_pow[static_cast<size_t>(i - 1)] * bracket_delta();
  LaurentA result;
  for (int a = 0; a <= c; ++a)
    for (int loops = 1; loops <= max_loops; ++loops) {
      std::uint64_t count = hist[hist_index(a, loops)];
      if (!count) continue;
      LaurentA term = LaurentA::monomial(2 * a - c, static_cast<long long>(count));
      result += term * delta_pow[static_cast<size_t>(loops - 1)];
    }
  return result;
}

// Writhe-normalized polynomial: (-A^3)^(-w) <d> with A = t^(-1/4), reported
// in q = t^(1/2). Every A-exponent must be even after normalization.
inline LaurentQ jones(const VirtualDiagram& d, const BracketOptions& opt = {}) {
  LaurentA b = kauffman_bracket(d, opt);
  const int w = writhe(d);
  const long long sign = (w % 2 == 0) ? 1 : -1;
  LaurentQ out;
  for (auto& [e, v] : b.c) {
    int shifted = e - 3 * w;
    if (shifted % 2 != 0)
      throw std::logic_error("jones: odd exponent after writhe normalization (bug)");
    out.add_term(-shifted / 2, sign * v);
  }
  return out;
}

}  // namespace stacklab
