#pragma once

// Permutations of small degree (n <= 7) with rank-based arithmetic.
//
// Composition convention: left-then-right. (p.then(q))(x) = q(p(x)); a word
// g h means "apply g first, then h".

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "stacklab/word.hpp"

namespace stacklab {

inline constexpr int kMaxDegree = 7;

struct Perm {
  std::array<std::uint8_t, kMaxDegree> img{};
  int n = 0;

  static Perm identity(int degree) {
    Perm p;
    p.n = degree;
    for (int i = 0; i < degree; ++i) p.img[static_cast<size_t>(i)] = static_cast<std::uint8_t>(i);
    return p;
  }

  // Apply *this first, then q.
  Perm then(const Perm& q) const {
    Perm r;
    r.n = n;
    for (int i = 0; i < n; ++i) r.img[static_cast<size_t>(i)] = q.img[img[static_cast<size_t>(i)]];
    return r;
  }

  Perm inverse() const {
    Perm r;
    r.n = n;
    for (int i = 0; i < n; ++i) r.img[img[static_cast<size_t>(i)]] = static_cast<std::uint8_t>(i);
    return r;
  }

  bool is_identity() const {
    for (int i = 0; i < n; ++i)
      if (img[static_cast<size_t>(i)] != i) return false;
    return true;
  }

  bool operator==(const Perm&) const = default;

  std::string cycle_string() const {
    std::string s;
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < n; ++i) {
      if (seen[static_cast<size_t>(i)] || img[static_cast<size_t>(i)] == i) continue;
      s += '(';
      int j = i;
      bool first = true;
      while (!seen[static_cast<size_t>(j)]) {
        seen[static_cast<size_t>(j)] = true;
        if (!first) s += ' ';
        first = false;
        s += std::to_string(j);
        j = img[static_cast<size_t>(j)];
      }
      s += ')';
    }
    return s.empty() ? "()" : s;
  }
};

inline std::uint32_t factorial(int n) {
  std::uint32_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint32_t>(i);
  return f;
}

// Lehmer-code rank; identity ranks 0.
inline std::uint32_t perm_rank(const Perm& p) {
  std::uint32_t r = 0;
  for (int i = 0; i < p.n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < p.n; ++j)
      if (p.img[static_cast<size_t>(j)] < p.img[static_cast<size_t>(i)]) ++smaller;
    r = r * static_cast<std::uint32_t>(p.n - i) + static_cast<std::uint32_t>(smaller);
  }
  return r;
}

inline Perm perm_unrank(int n, std::uint32_t rank) {
  std::array<std::uint8_t, kMaxDegree> pool{};
  for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = static_cast<std::uint8_t>(i);
  std::array<std::uint32_t, kMaxDegree + 1> radix{};
  radix[0] = 1;
  for (int i = 1; i <= n; ++i) radix[static_cast<size_t>(i)] = radix[static_cast<size_t>(i - 1)] * static_cast<std::uint32_t>(i);
  Perm p;
  p.n = n;
  for (int i = 0; i < n; ++i) {
    std::uint32_t base = radix[static_cast<size_t>(n - 1 - i)];
    std::uint32_t k = rank / base;
    rank %= base;
    p.img[static_cast<size_t>(i)] = pool[static_cast<size_t>(k)];
    for (int j = static_cast<int>(k); j < n - 1 - i; ++j)
      pool[static_cast<size_t>(j)] = pool[static_cast<size_t>(j + 1)];
  }
  return p;
}

// One representative per integer partition of n, with conjugacy class sizes.
// Deterministic order (partitions in lexicographically decreasing order).
inline std::vector<std::pair<Perm, std::uint64_t>> conjugacy_class_reps(int n) {
  if (n < 1 || n > kMaxDegree) throw std::invalid_argument("degree must be in 1..7");
  std::vector<std::vector<int>> partitions;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int maxpart) -> void {
    if (remaining == 0) {
      partitions.push_back(cur);
      return;
    }
    for (int k = std::min(remaining, maxpart); k >= 1; --k) {
      cur.push_back(k);
      self(self, remaining - k, k);
      cur.pop_back();
    }
  };
  rec(rec, n, n);

  std::vector<std::pair<Perm, std::uint64_t>> reps;
  for (const auto& part : partitions) {
    Perm p = Perm::identity(n);
    int at = 0;
    for (int len : part) {
      for (int i = 0; i < len; ++i)
        p.img[static_cast<size_t>(at + i)] = static_cast<std::uint8_t>(at + (i + 1) % len);
      at += len;
    }
    // |class| = n! / prod(k^{m_k} m_k!)
    std::uint64_t denom = 1;
    for (size_t i = 0; i < part.size();) {
      size_t j = i;
      while (j < part.size() && part[j] == part[i]) ++j;
      std::uint64_t mult = j - i;
      for (std::uint64_t t = 1; t <= mult; ++t) denom *= t;
      for (size_t t = i; t < j; ++t) denom *= static_cast<std::uint64_t>(part[i]);
      i = j;
    }
    reps.push_back({p, factorial(n) / denom});
  }
  return reps;
}

// Product permutation of a word under an assignment of generator images.
inline Perm evaluate_word(const Word& w, const std::vector<Perm>& assignment) {
  if (assignment.empty()) throw std::invalid_argument("evaluate_word: empty assignment");
  Perm r = Perm::identity(assignment.front().n);
  for (const Letter& l : w) {
    const Perm& g = assignment.at(static_cast<size_t>(l.gen));
    r = l.exp > 0 ? r.then(g) : r.then(g.inverse());
  }
  return r;
}

// True iff the given permutations generate the full symmetric group.
inline bool generates_full(const std::vector<Perm>& gens, int n) {
  std::uint32_t order = factorial(n);
  std::vector<char> seen(order, 0);
  std::vector<Perm> frontier{Perm::identity(n)};
  seen[perm_rank(frontier.front())] = 1;
  std::uint32_t count = 1;
  while (!frontier.empty()) {
    Perm p = frontier.back();
    frontier.pop_back();
    for (const Perm& g : gens) {
      Perm q = p.then(g);
      std::uint32_t r = perm_rank(q);
      if (!seen[r]) {
        seen[r] = 1;
        ++count;
        if (count == order) return true;
        frontier.push_back(q);
      }
    }
  }
  return count == order;
}

}  // namespace stacklab
