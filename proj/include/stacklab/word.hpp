#pragma once

// Words over group generators: sequences of (generator index, exponent +-1).

#include <vector>

namespace stacklab {

struct Letter {
  int gen = 0;
  int exp = +1;
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

inline Word word_inverse(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->gen, -it->exp});
  return r;
}

inline Word free_reduce(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (const Letter& l : w) {
    if (!r.empty() && r.back().gen == l.gen && r.back().exp == -l.exp)
      r.pop_back();
    else
      r.push_back(l);
  }
  return r;
}

// Free reduction plus trimming of cancelling ends (conjugation).
inline Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  while (r.size() >= 2 && r.front().gen == r.back().gen && r.front().exp == -r.back().exp) {
    r.erase(r.begin());
    r.pop_back();
  }
  return r;
}

}  // namespace stacklab
