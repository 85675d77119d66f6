// Acceptance suite: reproduces the published reference values from first
// principles and prints one verdict line per criterion. A criterion fails if
// any of its cells disagrees with the published value; documented
// discrepancies (see data/expected_values.json) are flagged inline but still
// count as failures, so the verdicts reflect the published text as-is.

#include <chrono>
#include <cstdio>
#include <random>

#include "stacklab/canonical.hpp"
#include "stacklab/expected_values.hpp"
#include "stacklab/kishino.hpp"
#include "test_util.hpp"

using namespace stacklab;

namespace {

int failures = 0;

void verdict(int number, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %d (%s): %s%s%s\n", number, name, pass ? "PASS" : "FAIL",
              detail.empty() ? "" : " - ", detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string cell_name(const char* label, const char* which) {
  return std::string("S_") + (std::string(which) == "vd" ? "+-" : "++") + "(" + label + ")";
}

}  // namespace

int main() {
  const auto& exp = expected_values();
  const auto t_start = std::chrono::steady_clock::now();

  std::printf("identifying fixtures...\n");
  PipelineOptions popt;
  auto ident = kishino_identify(popt);
  auto variant_of = [&](const char* name) {
    return ident.binding(*label_from_name(name)).variant;
  };
  auto signature_of = [&](const char* name) {
    return ident.signatures[static_cast<size_t>(variant_of(name))];
  };

  // ---- criterion 1: the 14 two-layer census cells --------------------------
  {
    auto t0 = std::chrono::steady_clock::now();
    // Independent oracle for the "free" rows: brute force over all 120^2 pairs.
    std::vector<Perm> perms;
    for (std::uint32_t r = 0; r < 120; ++r) perms.push_back(perm_unrank(5, r));
    std::uint64_t generating_pairs = 0;
    for (auto& p : perms)
      for (auto& q : perms)
        if (generates_full({p, q}, 5)) ++generating_pairs;
    const std::uint64_t f2_oracle = generating_pairs / 120;

    int ok = 0, total = 0;
    std::string notes;
    for (KishinoLabel l : kKishinoLabels) {
      const char* name = label_name(l);
      for (const char* which : {"vd", "dd"}) {
        ++total;
        const auto& pub = exp.at("table1").at(name).at(which);
        const StackInvariants& si =
            std::string(which) == "vd" ? signature_of(name).vd : signature_of(name).dd;
        bool pass;
        if (pub.is_string())
          pass = si.group_free && si.generators == 2 && si.census == f2_oracle;
        else
          pass = !si.group_free && si.census == pub.get<std::uint64_t>();
        if (pass) {
          ++ok;
        } else {
          notes += "\n    " + cell_name(name, which) + ": computed " +
                   (si.group_free ? "free" : std::to_string(si.census)) + ", published " +
                   pub.dump();
          std::string key = "table1." + std::string(name) + "." + which;
          if (exp.at("known_discrepancies").contains(key))
            notes += " [documented discrepancy: " +
                     exp.at("known_discrepancies").at(key).at("note").get<std::string>() + "]";
        }
      }
    }
    double secs = seconds_since(t0);
    char head[160];
    std::snprintf(head, sizeof head, "%d/%d cells exact; free rows vs pair oracle %llu; %.1fs",
                  ok, total, static_cast<unsigned long long>(f2_oracle), secs);
    verdict(1, "two-layer census table", ok == total && secs <= 300.0, head + notes);
  }

  // ---- criterion 2: three-layer counts -------------------------------------
  {
    auto t0 = std::chrono::steady_clock::now();
    int ok = 0;
    std::string notes;
    for (const char* name : {"K_switch", "K5"}) {
      std::uint64_t pub = exp.at("three_layer").at(name).get<std::uint64_t>();
      auto triple = build_stack(kishino_variant(variant_of(name)), parse_stack_sequence("+++"));
      auto pres = tietze_simplify(wirtinger(triple)).presentation;
      auto rep = census(pres, {.degree = 5});
      bool free2plus = is_free(pres).has_value();
      bool pass = !free2plus && rep.orbit_count == pub;
      if (pass) {
        ++ok;
      } else {
        notes += "\n    S_+++(" + std::string(name) + "): computed " +
                 (free2plus ? "free rank " + std::to_string(pres.generator_count) +
                                  " (census " + std::to_string(rep.orbit_count) + ")"
                            : std::to_string(rep.orbit_count)) +
                 ", published " + std::to_string(pub);
        std::string key = std::string("three_layer.") + name;
        if (exp.at("known_discrepancies").contains(key))
          notes += " [documented discrepancy: " +
                   exp.at("known_discrepancies").at(key).at("note").get<std::string>() + "]";
      }
    }
    char head[96];
    std::snprintf(head, sizeof head, "%d/2 counts match; %.1fs", ok, seconds_since(t0));
    verdict(2, "three-layer census counts", ok == 2, head + notes);
  }

  // ---- criterion 3: self polynomials ----------------------------------------
  {
    int ok = 0;
    std::string notes;
    for (KishinoLabel l : kKishinoLabels) {
      const char* name = label_name(l);
      LaurentQ pub = laurentq_from_json(exp.at("self_jones").at(name));
      if (signature_of(name).jones_self == pub)
        ++ok;
      else
        notes += "\n    " + std::string(name) + ": computed " +
                 jones_to_text(signature_of(name).jones_self) + ", published " + jones_to_text(pub);
    }
    bool k6k7 = signature_of("K6").jones_self == signature_of("K7").jones_self;
    if (!k6k7) notes += "\n    K6 and K7 self polynomials differ";
    char head[64];
    std::snprintf(head, sizeof head, "%d/7 exact; K6=K7 %s", ok, k6k7 ? "yes" : "no");
    verdict(3, "self polynomials", ok == 7 && k6k7, head + notes);
  }

  // ---- criterion 4: stack polynomials ----------------------------------------
  {
    int ok = 0, total = 0;
    std::string notes;
    for (KishinoLabel l : kKishinoLabels) {
      const char* name = label_name(l);
      for (const char* which : {"vd", "dd"}) {
        ++total;
        LaurentQ pub = laurentq_from_json(exp.at("stack_jones").at(name).at(which));
        const LaurentQ& got = std::string(which) == "vd" ? signature_of(name).vd.jones
                                                         : signature_of(name).dd.jones;
        if (got == pub) {
          ++ok;
        } else {
          notes += "\n    " + cell_name(name, which) + ": computed " + jones_to_text(got) +
                   ", published " + jones_to_text(pub);
          std::string key = "stack_jones." + std::string(name) + "." + which;
          if (exp.at("known_discrepancies").contains(key))
            notes += " [documented discrepancy: " +
                     exp.at("known_discrepancies").at(key).at("note").get<std::string>() + "]";
        }
      }
    }
    // Equalities visible in the published list.
    LaurentQ two_unlink;
    two_unlink.add_term(-1, -1);
    two_unlink.add_term(1, -1);
    bool eq1 = signature_of("K_switch").vd.jones == two_unlink;
    bool eq2 = signature_of("K").dd.jones == signature_of("K_v").dd.jones;
    bool eq3 = signature_of("K6").dd.jones == signature_of("K7").dd.jones;
    if (!eq1) notes += "\n    S_+-(K_switch) is not the 2-unlink polynomial";
    if (!eq2) notes += "\n    S_++(K) and S_++(K_v) differ";
    if (!eq3) notes += "\n    S_++(K6) and S_++(K7) differ";
    char head[80];
    std::snprintf(head, sizeof head, "%d/%d cells exact; published equalities %s", ok, total,
                  eq1 && eq2 && eq3 ? "hold" : "violated");
    verdict(4, "stack polynomials", ok == total && eq1 && eq2 && eq3, head + notes);
  }

  // ---- criterion 5: calibration and property suite ---------------------------
  {
    std::string notes;
    bool pass = true;
    auto fail = [&](const std::string& msg) {
      pass = false;
      notes += "\n    " + msg;
    };

    // Calibration: bracket of the positive kink.
    LaurentA minus_a3;
    minus_a3.add_term(3, -1);
    if (kauffman_bracket(parse_pd("PD[X[1,1,2,2]]")) != minus_a3)
      fail("bracket calibration: positive kink is not -A^3");

    // R1 invariance on all seven fixtures.
    for (KishinoLabel l : kKishinoLabels) {
      auto d = kishino_variant(variant_of(label_name(l)));
      auto base = jones(d);
      if (jones(with_kink(d, 1, true)) != base || jones(with_kink(d, 1, false)) != base)
        fail(std::string("R1 invariance fails for ") + label_name(l));
    }

    // t=1 evaluation on every polynomial computed for the table.
    auto check_t1 = [&](const LaurentQ& p, int comps, const std::string& what) {
      long long want = 1;
      for (int i = 1; i < comps; ++i) want *= -2;
      if (p.eval_at_one() != want) fail("t=1 check fails for " + what);
    };
    for (KishinoLabel l : kKishinoLabels) {
      const char* name = label_name(l);
      check_t1(signature_of(name).jones_self, 1, name);
      check_t1(signature_of(name).vd.jones, 2, cell_name(name, "vd"));
      check_t1(signature_of(name).dd.jones, 2, cell_name(name, "dd"));
    }

    // Census divisibility on fresh runs (also enforced inside census()).
    for (const char* text : {"< a, d | d a d^-1 a d^-1 a^-1 >", "< a, b | >"}) {
      auto rep = census(presentation_from_text(text), {.degree = 5});
      if (rep.total_epis % 120 != 0) fail("census divisibility violated");
    }

    // Tietze census invariance on fixture presentations.
    for (const char* pd : {"PD[X[1,1,2,2]]", "PD[X[1,2,2,1]]", testing::kKishinoPd}) {
      auto p = wirtinger(parse_pd(pd));
      auto s = tietze_simplify(p).presentation;
      if (census(p, {.degree = 5}).total_epis != census(s, {.degree = 5}).total_epis)
        fail("simplification changed a census");
    }

    // Stack count formulas on random diagrams.
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 6; ++trial) {
      auto d = testing::random_diagram(rng, 3, 2, trial % 2);
      for (const char* seq : {"+", "+-", "++", "+-+", "---"}) {
        auto ss = parse_stack_sequence(seq);
        auto s = build_stack(d, ss);
        int m = ss.layers(), sigma = 0;
        for (int x : ss.signs) sigma += x;
        if (n_classical(s) != m * m * n_classical(d) || n_virtual(s) != m * m * n_virtual(d) ||
            components(s) != m * components(d) || writhe(s) != sigma * writhe(d))
          fail("stack count formulas fail on a random diagram");
      }
    }

    // S_-+(L) and S_+-(vertical_reflect(L)) coincide on all seven fixtures.
    for (KishinoLabel l : kKishinoLabels) {
      auto d = kishino_variant(variant_of(label_name(l)));
      if (!isomorphic(build_stack(d, parse_stack_sequence("-+")),
                      build_stack(vertical_reflect(d), parse_stack_sequence("+-"))))
        fail(std::string("S_-+ / S_+- reflection identity fails for ") + label_name(l));
    }

    verdict(5, "calibration and properties", pass, pass ? "all checks hold" : notes);
  }

  // ---- criterion 6: fixture identification -----------------------------------
  {
    std::string notes;
    bool pass = ident.complete;
    if (!pass) notes += "\n    identification incomplete";
    std::set<int> used;
    for (const auto& b : ident.bindings) used.insert(b.variant);
    if (used.size() != 7) {
      pass = false;
      notes += "\n    bindings not pairwise distinct";
    }
    if (variant_of("K_v") != (15 ^ variant_of("K"))) {
      pass = false;
      notes += "\n    K_v is not the vertical reflection of K";
    }
    if (kishino_variant(variant_of("K_v")) !=
        vertical_reflect(kishino_variant(variant_of("K")))) {
      pass = false;
      notes += "\n    K_v diagram mismatch";
    }
    // Stability: a second full run binds identically.
    auto again = kishino_identify(popt);
    for (size_t i = 0; i < kKishinoLabels.size(); ++i)
      if (again.bindings[i].variant != ident.bindings[i].variant) {
        pass = false;
        notes += "\n    unstable binding for " + std::string(label_name(kKishinoLabels[i]));
      }
    std::string head = "labels bound to variants:";
    for (size_t i = 0; i < kKishinoLabels.size(); ++i)
      head += " " + std::string(label_name(kKishinoLabels[i])) + "=" +
              std::to_string(ident.bindings[i].variant);
    verdict(6, "fixture identification", pass, head + notes);
  }

  std::printf("acceptance finished in %.1fs with %d failing criterion(s)\n",
              seconds_since(t_start), failures);
  return failures;
}
