#pragma once

// Finite group presentations: Wirtinger presentations of diagram groups and
// their Tietze simplification.

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "stacklab/diagram.hpp"
#include "stacklab/word.hpp"

namespace stacklab {

struct Presentation {
  int generator_count = 0;
  std::vector<Word> relators;
  bool operator==(const Presentation&) const = default;

  std::size_t total_length() const {
    std::size_t n = 0;
    for (const auto& r : relators) n += r.size();
    return n;
  }
};

// One generator per arc (maximal strand run not interrupted by an
// under-passage at a classical crossing), one conjugation relator per
// classical crossing: v = o u o^-1 at positive crossings, v = o^-1 u o at
// negative ones. Free loops contribute a generator and no relator. Relators
// are returned unreduced, one per crossing.
inline Presentation wirtinger(const VirtualDiagram& d) {
  require_valid(d);
  auto idx = detail::edge_index(d);
  auto comps = detail::trace_components(d, idx);

  std::map<EdgeId, int> arc_of;
  int arcs = 0;
  for (const auto& cyc : comps) {
    // cyc[t] is the head end of edge e_t; breaks happen at classical
    // under-entries (slot 0).
    const size_t L = cyc.size();
    std::vector<size_t> breaks;
    for (size_t t = 0; t < L; ++t) {
      const EndRef& h = cyc[t];
      if (d.crossings[static_cast<size_t>(h.crossing)].kind == Kind::Classical && h.slot == 0)
        breaks.push_back(t);
    }
    auto edge_at = [&](size_t t) {
      const EndRef& h = cyc[t % L];
      return d.crossings[static_cast<size_t>(h.crossing)].ccw[h.slot].edge;
    };
    if (breaks.empty()) {
      int a = arcs++;
      for (size_t t = 0; t < L; ++t) arc_of[edge_at(t)] = a;
      continue;
    }
    // The arc after break b runs over edges e_{b+1} .. e_{b'} where b' is the
    // next break position.
    for (size_t bi = 0; bi < breaks.size(); ++bi) {
      size_t b = breaks[bi];
      size_t next = breaks[(bi + 1) % breaks.size()];
      size_t span = (next + L - b) % L;
      if (span == 0) span = L;
      int a = arcs++;
      for (size_t t = 1; t <= span; ++t) arc_of[edge_at(b + t)] = a;
    }
  }

  Presentation p;
  for (const auto& c : d.crossings) {
    if (c.kind != Kind::Classical) continue;
    int u = arc_of.at(c.ccw[0].edge);
    int v = arc_of.at(c.ccw[2].edge);
    int over_in = c.sign() > 0 ? 3 : 1;
    int o = arc_of.at(c.ccw[over_in].edge);
    assert(o == arc_of.at(c.ccw[opposite_slot(over_in)].edge));
    if (c.sign() > 0)
      p.relators.push_back({{v, +1}, {o, +1}, {u, -1}, {o, -1}});
    else
      p.relators.push_back({{v, +1}, {o, -1}, {u, -1}, {o, +1}});
  }
  p.generator_count = arcs + static_cast<int>(d.free_loops);
  return p;
}

// Zero-relator detection after simplification; not a freeness decision.
inline std::optional<int> is_free(const Presentation& p) {
  for (const auto& r : p.relators)
    if (!r.empty()) return std::nullopt;
  return p.generator_count;
}

struct Abelianization {
  std::vector<long long> divisors;  // elementary divisors > 1
  int free_rank = 0;
  bool operator==(const Abelianization&) const = default;
};

// Smith normal form of the relator exponent matrix.
inline Abelianization abelianization(const Presentation& p) {
  const int rows = static_cast<int>(p.relators.size());
  const int cols = p.generator_count;
  std::vector<std::vector<long long>> m(static_cast<size_t>(rows),
                                        std::vector<long long>(static_cast<size_t>(cols), 0));
  for (int i = 0; i < rows; ++i)
    for (const Letter& l : p.relators[static_cast<size_t>(i)])
      m[static_cast<size_t>(i)][static_cast<size_t>(l.gen)] += l.exp;

  int t = 0;
  std::vector<long long> diag;
  while (t < rows && t < cols) {
    // Find the minimal nonzero entry in the remaining submatrix.
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        long long v = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (v == 0) continue;
        if (pi == -1 || std::abs(v) < std::abs(m[static_cast<size_t>(pi)][static_cast<size_t>(pj)])) {
          pi = i;
          pj = j;
        }
      }
    if (pi == -1) break;
    std::swap(m[static_cast<size_t>(t)], m[static_cast<size_t>(pi)]);
    for (int i = 0; i < rows; ++i) std::swap(m[static_cast<size_t>(i)][static_cast<size_t>(t)], m[static_cast<size_t>(i)][static_cast<size_t>(pj)]);
    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      long long q = m[static_cast<size_t>(i)][static_cast<size_t>(t)] / m[static_cast<size_t>(t)][static_cast<size_t>(t)];
      if (q != 0)
        for (int j = t; j < cols; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] -= q * m[static_cast<size_t>(t)][static_cast<size_t>(j)];
      if (m[static_cast<size_t>(i)][static_cast<size_t>(t)] != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      long long q = m[static_cast<size_t>(t)][static_cast<size_t>(j)] / m[static_cast<size_t>(t)][static_cast<size_t>(t)];
      if (q != 0)
        for (int i = t; i < rows; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] -= q * m[static_cast<size_t>(i)][static_cast<size_t>(t)];
      if (m[static_cast<size_t>(t)][static_cast<size_t>(j)] != 0) clean = false;
    }
    if (!clean) continue;  // smaller pivot now exists; redo this step
    diag.push_back(std::abs(m[static_cast<size_t>(t)][static_cast<size_t>(t)]));
    ++t;
  }
  // Fix divisibility d1 | d2 | ... with gcd/lcm.
  for (size_t i = 0; i + 1 < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      long long a = diag[i], b = diag[j];
      long long g = std::gcd(a, b);
      diag[i] = g;
      diag[j] = g == 0 ? 0 : a / g * b;
    }
  Abelianization ab;
  ab.free_rank = cols - static_cast<int>(diag.size());
  for (long long v : diag)
    if (v > 1) ab.divisors.push_back(v);
  return ab;
}

// --- Tietze simplification ---------------------------------------------------

struct TietzeOptions {
  long long budget = 200000;  // applied-transformation limit
};

struct TietzeResult {
  Presentation presentation;
  bool complete = true;
  long long steps = 0;
};

namespace detail {

inline void normalize_relators(std::vector<Word>& relators) {
  for (auto& r : relators) r = cyclic_reduce(r);
  std::erase_if(relators, [](const Word& w) { return w.empty(); });
}

// Substitute g -> w everywhere in r (g must not occur in w).
inline Word substitute(const Word& r, int g, const Word& w) {
  Word out;
  Word winv = word_inverse(w);
  for (const Letter& l : r) {
    if (l.gen != g) {
      out.push_back(l);
    } else {
      const Word& rep = l.exp > 0 ? w : winv;
      out.insert(out.end(), rep.begin(), rep.end());
    }
  }
  return free_reduce(out);
}

// Longest common contiguous subword between cyclic words a and b; returns
// (length, start in a, start in b). Both are scanned in doubled form.
inline std::tuple<int, int, int> longest_cyclic_match(const Word& a, const Word& b) {
  const int la = static_cast<int>(a.size()), lb = static_cast<int>(b.size());
  int best = 0, bi = 0, bj = 0;
  if (la == 0 || lb == 0) return {0, 0, 0};
  for (int i = 0; i < la; ++i)
    for (int j = 0; j < lb; ++j) {
      int len = 0;
      int cap = std::min(la, lb);
      while (len < cap && a[static_cast<size_t>((i + len) % la)] == b[static_cast<size_t>((j + len) % lb)]) ++len;
      if (len > best) {
        best = len;
        bi = i;
        bj = j;
      }
    }
  return {best, bi, bj};
}

}  // namespace detail

// Greedy deterministic simplification: trivial-relator deletion, free and
// cyclic reduction, single-occurrence generator elimination (choosing the
// elimination that minimizes the resulting total length, ties by lowest
// generator index), and relator-vs-relator shortening with cyclic matches.
inline TietzeResult tietze_simplify(const Presentation& input, const TietzeOptions& opt = {}) {
  TietzeResult res;
  std::vector<Word> relators = input.relators;
  detail::normalize_relators(relators);
  std::vector<char> alive(static_cast<size_t>(input.generator_count), 1);
  auto alive_count = [&] { return static_cast<int>(std::count(alive.begin(), alive.end(), 1)); };

  auto budget_left = [&] { return res.steps < opt.budget; };

  auto shorten_pass = [&]() -> bool {
    bool any = false;
    bool progress = true;
    while (progress && budget_left()) {
      progress = false;
      for (size_t i = 0; i < relators.size() && budget_left(); ++i) {
        for (size_t j = 0; j < relators.size(); ++j) {
          if (i == j) continue;
          const Word& r = relators[i];
          for (int dir = 0; dir < 2; ++dir) {
            Word s = dir == 0 ? relators[j] : word_inverse(relators[j]);
            auto [len, ri, si] = detail::longest_cyclic_match(r, s);
            // Replacing the matched subword w of r by the inverse of s's
            // complement changes |r| by |s| - 2*len.
            if (2 * len <= static_cast<int>(s.size())) continue;
            const int lr = static_cast<int>(r.size()), ls = static_cast<int>(s.size());
            if (len > lr) continue;
            Word rot;  // r rotated so the match is a prefix
            for (int t = 0; t < lr; ++t) rot.push_back(r[static_cast<size_t>((ri + t) % lr)]);
            Word comp;  // s's complement after the match, inverted
            for (int t = ls - 1; t >= len; --t) {
              const Letter& l = s[static_cast<size_t>((si + t) % ls)];
              comp.push_back({l.gen, -l.exp});
            }
            Word repl = comp;
            repl.insert(repl.end(), rot.begin() + len, rot.end());
            repl = cyclic_reduce(repl);
            if (repl.size() < r.size()) {
              relators[i] = repl;
              res.steps++;
              any = true;
              progress = true;
              break;
            }
          }
          if (progress) break;
        }
        if (progress) break;
      }
      if (progress) detail::normalize_relators(relators);
    }
    return any;
  };

  auto eliminate_best = [&]() -> bool {
    long long best_total = -1;
    int best_gen = -1;
    size_t best_rel = 0;
    Word best_repl;
    for (size_t ri = 0; ri < relators.size(); ++ri) {
      const Word& r = relators[ri];
      std::map<int, int> occur;
      for (const Letter& l : r) occur[l.gen]++;
      for (size_t pos = 0; pos < r.size(); ++pos) {
        int g = r[pos].gen;
        if (occur[g] != 1) continue;
        // Rotate r so g^e leads: g^e z = 1, so g = z^-1 (e=+1) or z (e=-1).
        Word z;
        for (size_t t = 1; t < r.size(); ++t) z.push_back(r[(pos + t) % r.size()]);
        Word repl = r[pos].exp > 0 ? word_inverse(z) : z;
        long long total = 0;
        for (size_t rj = 0; rj < relators.size(); ++rj) {
          if (rj == ri) continue;
          total += static_cast<long long>(cyclic_reduce(detail::substitute(relators[rj], g, repl)).size());
        }
        if (best_total < 0 || total < best_total ||
            (total == best_total && g < best_gen)) {
          best_total = total;
          best_gen = g;
          best_rel = ri;
          best_repl = repl;
        }
      }
    }
    if (best_gen < 0) return false;
    std::vector<Word> next;
    for (size_t rj = 0; rj < relators.size(); ++rj) {
      if (rj == best_rel) continue;
      next.push_back(detail::substitute(relators[rj], best_gen, best_repl));
    }
    relators = std::move(next);
    detail::normalize_relators(relators);
    alive[static_cast<size_t>(best_gen)] = 0;
    res.steps++;
    return true;
  };

  while (budget_left()) {
    bool changed = shorten_pass();
    if (budget_left() && eliminate_best()) changed = true;
    if (!changed) break;
  }
  res.complete = budget_left();

  // Renumber surviving generators densely, in ascending order.
  std::vector<int> remap(static_cast<size_t>(input.generator_count), -1);
  int k = 0;
  for (int g = 0; g < input.generator_count; ++g)
    if (alive[static_cast<size_t>(g)]) remap[static_cast<size_t>(g)] = k++;
  for (auto& r : relators)
    for (auto& l : r) l.gen = remap[static_cast<size_t>(l.gen)];
  std::sort(relators.begin(), relators.end(),
            [](const Word& a, const Word& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  res.presentation.generator_count = alive_count();
  res.presentation.relators = std::move(relators);
  return res;
}

// --- text & naming -----------------------------------------------------------

inline std::string generator_name(int i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "g" + std::to_string(i + 1);
}

inline std::string word_to_text(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.size();) {
    size_t j = i;
    int e = 0;
    while (j < w.size() && w[j].gen == w[i].gen && (e == 0 || (w[j].exp > 0) == (e > 0))) {
      e += w[j].exp;
      ++j;
    }
    if (!s.empty()) s += ' ';
    s += generator_name(w[i].gen);
    if (e != 1) s += "^" + std::to_string(e);
    i = j;
  }
  return s;
}

inline std::string presentation_to_text(const Presentation& p) {
  std::string s = "< ";
  for (int i = 0; i < p.generator_count; ++i) {
    if (i) s += ", ";
    s += generator_name(i);
  }
  s += " |";
  for (size_t i = 0; i < p.relators.size(); ++i) {
    s += i ? ", " : " ";
    s += word_to_text(p.relators[i]);
  }
  s += " >";
  return s;
}

inline Presentation presentation_from_text(const std::string& text) {
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*')) ++pos;
  };
  auto ident = [&]() -> std::string {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) throw ParseError("presentation: expected a generator name at offset " + std::to_string(pos));
    return text.substr(start, pos - start);
  };
  skip_ws();
  if (pos >= text.size() || text[pos] != '<') throw ParseError("presentation must start with '<'");
  ++pos;
  std::map<std::string, int> gen_index;
  std::vector<std::string> names;
  skip_ws();
  while (pos < text.size() && text[pos] != '|') {
    std::string n = ident();
    if (gen_index.count(n)) throw ParseError("duplicate generator " + n);
    gen_index[n] = static_cast<int>(names.size());
    names.push_back(n);
    skip_ws();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      skip_ws();
    }
  }
  if (pos >= text.size()) throw ParseError("presentation: missing '|'");
  ++pos;  // '|'
  Presentation p;
  p.generator_count = static_cast<int>(names.size());
  skip_ws();
  Word cur;
  while (pos < text.size() && text[pos] != '>') {
    char c = text[pos];
    if (c == ',') {
      p.relators.push_back(cur);
      cur.clear();
      ++pos;
      skip_ws();
      continue;
    }
    if (c == '1') {  // explicit trivial word
      ++pos;
      skip_ws();
      continue;
    }
    if (c == '=') throw ParseError("presentation: write relators as words, not equations");
    std::string n = ident();
    auto it = gen_index.find(n);
    if (it == gen_index.end()) throw ParseError("unknown generator " + n);
    long e = 1;
    skip_ws();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      skip_ws();
      bool neg = false;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) throw ParseError("presentation: malformed exponent");
      e = std::stol(text.substr(start, pos - start));
      if (neg) e = -e;
    }
    for (long t = 0; t < std::abs(e); ++t) cur.push_back({it->second, e > 0 ? +1 : -1});
    skip_ws();
  }
  if (pos >= text.size()) throw ParseError("presentation: missing '>'");
  if (!cur.empty()) p.relators.push_back(cur);
  return p;
}

}  // namespace stacklab
