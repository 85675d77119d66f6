#pragma once

// Sparse Laurent polynomials with exact integer coefficients. LaurentA is in
// the bracket variable A; LaurentQ is in q = t^{1/2} (the substitution is
// A = t^{-1/4}, i.e. q = A^{-2}).

#include <cstdint>
#include <map>
#include <string>

namespace stacklab {

namespace detail {

template <class Tag>
struct SparseLaurent {
  std::map<int, long long> c;  // exponent -> coefficient, zero-free

  bool operator==(const SparseLaurent&) const = default;

  static SparseLaurent constant(long long v) {
    SparseLaurent p;
    if (v) p.c[0] = v;
    return p;
  }
  static SparseLaurent monomial(int exp, long long v) {
    SparseLaurent p;
    if (v) p.c[exp] = v;
    return p;
  }

  void add_term(int exp, long long v) {
    if (!v) return;
    auto it = c.find(exp);
    if (it == c.end()) {
      c[exp] = v;
    } else if ((it->second += v) == 0) {
      c.erase(it);
    }
  }

  SparseLaurent& operator+=(const SparseLaurent& o) {
    for (auto& [e, v] : o.c) add_term(e, v);
    return *this;
  }

  friend SparseLaurent operator*(const SparseLaurent& a, const SparseLaurent& b) {
    SparseLaurent r;
    for (auto& [ea, va] : a.c)
      for (auto& [eb, vb] : b.c) r.add_term(ea + eb, va * vb);
    return r;
  }

  bool is_zero() const { return c.empty(); }

  long long eval_at_one() const {
    long long s = 0;
    for (auto& [e, v] : c) s += v;
    return s;
  }
};

struct TagA {};
struct TagQ {};

}  // namespace detail

using LaurentA = detail::SparseLaurent<detail::TagA>;
using LaurentQ = detail::SparseLaurent<detail::TagQ>;

// Loop weight delta = -A^2 - A^-2.
inline LaurentA bracket_delta() {
  LaurentA d;
  d.c[2] = -1;
  d.c[-2] = -1;
  return d;
}

// Render a q-polynomial with t^{k/2} powers, ascending exponents,
// e.g. "-t^{-3/2} - t^{-1} + 3 + t^{1/2}".
inline std::string jones_to_text(const LaurentQ& p) {
  if (p.c.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [k, v] : p.c) {
    long long av = v < 0 ? -v : v;
    if (first) {
      if (v < 0) s += "-";
      first = false;
    } else {
      s += v < 0 ? " - " : " + ";
    }
    std::string power;
    if (k != 0) {
      if (k == 2)
        power = "t";
      else if (k % 2 == 0)
        power = "t^{" + std::to_string(k / 2) + "}";
      else
        power = "t^{" + std::to_string(k) + "/2}";
    }
    if (power.empty())
      s += std::to_string(av);
    else if (av == 1)
      s += power;
    else
      s += std::to_string(av) + " " + power;
  }
  return s;
}

}  // namespace stacklab
