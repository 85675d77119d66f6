#include <doctest.h>

#include "stacklab/canonical.hpp"
#include "stacklab/stack.hpp"
#include "test_util.hpp"

using namespace stacklab;

TEST_CASE("stack sequence parsing") {
  CHECK(parse_stack_sequence("+-").signs == std::vector<int>{+1, -1});
  CHECK(parse_stack_sequence("++").signs == std::vector<int>{+1, +1});
  CHECK(parse_stack_sequence("+").layers() == 1);
  CHECK(parse_stack_sequence("+-+").text() == "+-+");
  CHECK_THROWS_AS(parse_stack_sequence("+*"), ParseError);
  CHECK_THROWS_AS(parse_stack_sequence(""), ParseError);
}

TEST_CASE("stack of the crossing-free unknot is an unlink") {
  auto d = parse_pd("PD[O]");
  auto s = build_stack(d, parse_stack_sequence("++"));
  CHECK(s.crossings.empty());
  CHECK(s.free_loops == 2);
  CHECK(components(s) == 2);
}

TEST_CASE("stack count formulas on random diagrams, m <= 3") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    auto d = testing::random_diagram(rng, 3, 2, trial % 2);
    const int c = n_classical(d), v = n_virtual(d), comp = components(d), w = writhe(d);
    for (const char* seq : {"+", "-", "++", "+-", "-+", "--", "+++", "+-+", "--+"}) {
      auto ss = parse_stack_sequence(seq);
      const int m = ss.layers();
      auto s = build_stack(d, ss);
      CAPTURE(seq);
      CAPTURE(trial);
      REQUIRE(validate(s).empty());
      CHECK(n_classical(s) == m * m * c);
      CHECK(n_virtual(s) == m * m * v);
      CHECK(components(s) == m * comp);
      int sigma = 0;
      for (int x : ss.signs) sigma += x;
      CHECK(writhe(s) == sigma * w);
    }
  }
}

TEST_CASE("kishino vertical double has 16+8 crossings, 2 components, writhe 0") {
  auto d = parse_pd(testing::kKishinoPd);
  auto s = build_stack(d, parse_stack_sequence("+-"));
  CHECK(n_classical(s) == 16);
  CHECK(n_virtual(s) == 8);
  CHECK(components(s) == 2);
  CHECK(writhe(s) == 0);
}

TEST_CASE("S_{-+}(L) is S_{+-}(vertical_reflect(L)) up to relabeling") {
  auto check = [](const VirtualDiagram& d) {
    auto a = build_stack(d, parse_stack_sequence("-+"));
    auto b = build_stack(vertical_reflect(d), parse_stack_sequence("+-"));
    CHECK(isomorphic(a, b));
  };
  check(parse_pd(testing::kKishinoPd));
  check(parse_pd("PD[X[1,1,2,2]]"));
  std::mt19937 rng(5);
  for (int trial = 0; trial < 6; ++trial) check(testing::random_diagram(rng, 3, 1));
}

TEST_CASE("within-layer subdiagrams are the base or its reflection") {
  auto base = parse_pd(testing::kKishinoPd);
  for (const char* seq : {"++", "+-", "-+", "--", "+-+"}) {
    auto ss = parse_stack_sequence(seq);
    auto s = build_stack(base, ss);
    const int m = ss.layers();
    // One component per layer; match the multiset of extracted layers
    // against the multiset of expected per-layer diagrams.
    std::vector<std::vector<std::vector<std::uint64_t>>> got, want;
    for (int i = 0; i < m; ++i) {
      got.push_back(canonical_encoding(restrict_to_components(s, {i})));
      want.push_back(canonical_encoding(ss.signs[static_cast<size_t>(i)] > 0
                                            ? base
                                            : vertical_reflect(base)));
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CAPTURE(seq);
    CHECK(got == want);
  }
}

TEST_CASE("grid pairs at unequal layers cancel in the writhe") {
  // Aggregate form of the cancellation: with all layers '+', the stack writhe
  // is m * w(d), so the m^2 - m off-diagonal crossings contribute zero.
  auto k = parse_pd("PD[X[1,1,2,2]]");
  CHECK(writhe(build_stack(k, parse_stack_sequence("++"))) == 2);
  CHECK(writhe(build_stack(k, parse_stack_sequence("+++"))) == 3);
  CHECK(writhe(build_stack(k, parse_stack_sequence("+-"))) == 0);
}
