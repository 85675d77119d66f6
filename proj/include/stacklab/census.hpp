#pragma once

// Counting inequivalent epimorphisms from a finitely presented group onto
// S_n: exhaustive enumeration of generator images with the first generator
// restricted to conjugacy class representatives (completions weighted by
// class size), relators checked as early as their deepest generator allows,
// and the innermost loop evaluated through cached constant segments.
// Inequivalent means up to conjugation in the target; S_n acts freely on
// epimorphism tuples (trivial center), so the orbit count is an exact
// division and divisibility is checked.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <thread>

#include "stacklab/perm.hpp"
#include "stacklab/presentation.hpp"

namespace stacklab {

struct CensusOptions {
  int degree = 5;
  int max_generators = 4;
  int threads = 1;
};

struct CensusReport {
  int degree = 0;
  int generator_count = 0;
  std::uint64_t total_homs = 0;
  std::uint64_t total_epis = 0;
  std::uint64_t orbit_count = 0;
  double seconds = 0;
  std::uint64_t leaves_scanned = 0;
  std::uint64_t subtree_prunes = 0;
};

struct CensusRefused : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Rank-indexed arithmetic for one symmetric group. A full multiplication
// table is kept for n <= 6; degree 7 composes directly.
class SnTable {
 public:
  explicit SnTable(int n) : n_(n), order_(factorial(n)) {
    perms_.reserve(order_);
    for (std::uint32_t r = 0; r < order_; ++r) perms_.push_back(perm_unrank(n, r));
    inv_.resize(order_);
    for (std::uint32_t r = 0; r < order_; ++r) inv_[r] = perm_rank(perms_[r].inverse());
    if (order_ <= 720) {
      mult_.resize(static_cast<size_t>(order_) * order_);
      for (std::uint32_t a = 0; a < order_; ++a)
        for (std::uint32_t b = 0; b < order_; ++b)
          mult_[static_cast<size_t>(a) * order_ + b] =
              static_cast<std::uint16_t>(perm_rank(perms_[a].then(perms_[b])));
    }
  }

  int degree() const { return n_; }
  std::uint32_t order() const { return order_; }
  const Perm& perm(std::uint32_t r) const { return perms_[r]; }
  std::uint32_t inv(std::uint32_t r) const { return inv_[r]; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (!mult_.empty()) return mult_[static_cast<size_t>(a) * order_ + b];
    return perm_rank(perms_[a].then(perms_[b]));
  }

  bool generates(const std::vector<std::uint32_t>& gens) const {
    std::vector<char> seen(order_, 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::uint32_t count = 1;
    while (!stack.empty()) {
      std::uint32_t p = stack.back();
      stack.pop_back();
      for (std::uint32_t g : gens) {
        std::uint32_t q = mul(p, g);
        if (!seen[q]) {
          seen[q] = 1;
          if (++count == order_) return true;
          stack.push_back(q);
        }
      }
    }
    return false;
  }

 private:
  int n_;
  std::uint32_t order_;
  std::vector<Perm> perms_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint16_t> mult_;
};

struct CompiledLetter {
  int gen;
  bool invert;
};

// Innermost relator split on occurrences of the last generator x:
// C0 x^{e1} C1 x^{e2} ... x^{er} Cr with constant segments C_i.
struct InnerRelator {
  std::vector<std::pair<std::vector<CompiledLetter>, bool>> parts;  // (segment, x inverted)
  std::vector<CompiledLetter> tail;
};

}  // namespace detail

inline CensusReport census(const Presentation& p, const CensusOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  if (opt.degree < 1 || opt.degree > kMaxDegree)
    throw CensusRefused("census: degree must be between 1 and 7");
  const int k = p.generator_count;
  if (k > opt.max_generators)
    throw CensusRefused("census: presentation has " + std::to_string(k) +
                        " generators, cap is " + std::to_string(opt.max_generators) +
                        "; simplify the presentation further");

  detail::SnTable sn(opt.degree);
  const std::uint32_t order = sn.order();

  CensusReport rep;
  rep.degree = opt.degree;
  rep.generator_count = k;

  if (k == 0) {
    rep.total_homs = 1;
    rep.total_epis = order == 1 ? 1 : 0;
    rep.orbit_count = rep.total_epis / order;
    return rep;
  }

  // Compile relators (cyclic conjugates have the same kernel of solutions).
  std::vector<std::vector<detail::CompiledLetter>> compiled;
  for (const Word& r : p.relators) {
    Word w = cyclic_reduce(r);
    if (w.empty()) continue;
    std::vector<detail::CompiledLetter> c;
    for (const Letter& l : w) {
      if (l.gen < 0 || l.gen >= k) throw std::logic_error("census: relator mentions unknown generator");
      c.push_back({l.gen, l.exp < 0});
    }
    compiled.push_back(std::move(c));
  }
  std::sort(compiled.begin(), compiled.end(),
            [](const auto& a, const auto& b) { return a.size() < b.size(); });

  // Bucket by deepest generator; the bucket for the last generator is split
  // into cached segments.
  std::vector<std::vector<std::vector<detail::CompiledLetter>>> by_depth(static_cast<size_t>(k));
  for (const auto& c : compiled) {
    int depth = 0;
    for (const auto& l : c) depth = std::max(depth, l.gen);
    by_depth[static_cast<size_t>(depth)].push_back(c);
  }
  const int last = k - 1;
  std::vector<detail::InnerRelator> inner;
  for (const auto& c : by_depth[static_cast<size_t>(last)]) {
    detail::InnerRelator ir;
    std::vector<detail::CompiledLetter> seg;
    for (const auto& l : c) {
      if (l.gen == last) {
        ir.parts.push_back({seg, l.invert});
        seg.clear();
      } else {
        seg.push_back(l);
      }
    }
    ir.tail = seg;
    inner.push_back(std::move(ir));
  }

  auto class_reps = conjugacy_class_reps(opt.degree);

  struct Partial {
    std::uint64_t homs = 0, epis = 0, leaves = 0, prunes = 0;
  };

  // Work items: (class rep, block of second-generator values). Partition is
  // independent of the thread count, and the partial sums commute.
  struct Task {
    size_t rep_index;
    std::uint32_t a1_lo, a1_hi;  // unused when k == 1
  };
  std::vector<Task> tasks;
  const std::uint32_t block = 12;
  for (size_t ri = 0; ri < class_reps.size(); ++ri) {
    if (k == 1) {
      tasks.push_back({ri, 0, 0});
    } else {
      for (std::uint32_t lo = 0; lo < order; lo += block)
        tasks.push_back({ri, lo, std::min(order, lo + block)});
    }
  }

  auto run_task = [&](const Task& task, Partial& out) {
    std::vector<std::uint32_t> a(static_cast<size_t>(k)), ai(static_cast<size_t>(k));
    const auto& [rep_perm, rep_weight] = class_reps[task.rep_index];
    a[0] = perm_rank(rep_perm);
    ai[0] = sn.inv(a[0]);

    auto eval = [&](const std::vector<detail::CompiledLetter>& w) -> std::uint32_t {
      std::uint32_t r = 0;
      for (const auto& l : w) r = sn.mul(r, l.invert ? ai[l.gen] : a[l.gen]);
      return r;
    };

    auto check_depth = [&](int d) -> bool {
      for (const auto& w : by_depth[static_cast<size_t>(d)])
        if (eval(w) != 0) return false;
      return true;
    };

    auto leaf_accept = [&]() {
      out.homs += rep_weight;
      std::vector<std::uint32_t> gens(a.begin(), a.end());
      if (sn.generates(gens)) out.epis += rep_weight;
    };

    if (k == 1) {
      out.leaves += 1;
      if (check_depth(0)) leaf_accept();
      return;
    }

    if (!check_depth(0)) {
      out.prunes++;
      return;
    }

    // Innermost generator: evaluate the depth-(k-1) relators through constant
    // segments cached once per outer tuple.
    std::vector<std::uint32_t> seg_const;
    auto inner_loop = [&](std::uint32_t lo, std::uint32_t hi) {
      seg_const.clear();
      for (const auto& ir : inner) {
        for (const auto& part : ir.parts) seg_const.push_back(eval(part.first));
        seg_const.push_back(eval(ir.tail));
      }
      for (std::uint32_t x = lo; x < hi; ++x) {
        a[static_cast<size_t>(last)] = x;
        ai[static_cast<size_t>(last)] = sn.inv(x);
        out.leaves++;
        bool ok = true;
        size_t at = 0;
        for (const auto& ir : inner) {
          std::uint32_t r = 0;
          for (const auto& part : ir.parts) {
            r = sn.mul(r, seg_const[at++]);
            r = sn.mul(r, part.second ? ai[static_cast<size_t>(last)] : x);
          }
          r = sn.mul(r, seg_const[at++]);
          if (r != 0) {
            ok = false;
            break;
          }
        }
        if (ok) leaf_accept();
      }
    };

    if (k == 2) {
      inner_loop(task.a1_lo, task.a1_hi);
      return;
    }

    auto recurse = [&](auto&& self, int d) -> void {
      if (d == last) {
        inner_loop(0, order);
        return;
      }
      for (std::uint32_t v = 0; v < order; ++v) {
        a[static_cast<size_t>(d)] = v;
        ai[static_cast<size_t>(d)] = sn.inv(v);
        if (!check_depth(d)) {
          out.prunes++;
          continue;
        }
        self(self, d + 1);
      }
    };

    for (std::uint32_t v = task.a1_lo; v < task.a1_hi; ++v) {
      a[1] = v;
      ai[1] = sn.inv(v);
      if (!check_depth(1)) {
        out.prunes++;
        continue;
      }
      recurse(recurse, 2);
    }
  };

  int threads = std::max(1, opt.threads);
  std::vector<Partial> partials(tasks.size());
  if (threads == 1) {
    for (size_t t = 0; t < tasks.size(); ++t) run_task(tasks[t], partials[t]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (;;) {
          size_t t = next.fetch_add(1);
          if (t >= tasks.size()) return;
          run_task(tasks[t], partials[t]);
        }
      });
    for (auto& th : pool) th.join();
  }
  for (const Partial& q : partials) {
    rep.total_homs += q.homs;
    rep.total_epis += q.epis;
    rep.leaves_scanned += q.leaves;
    rep.subtree_prunes += q.prunes;
  }

  if (rep.total_epis % order != 0)
    throw std::logic_error("census: epimorphism count " + std::to_string(rep.total_epis) +
                           " not divisible by the group order (implementation bug)");
  rep.orbit_count = rep.total_epis / order;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace stacklab
