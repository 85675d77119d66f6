#pragma once

// The seven Kishino-family fixtures. The family is produced by switching
// crossings of one 4-classical + 2-virtual shadow (two interlaced clasp
// tangles joined as a connected sum); the labels are recovered by matching
// each variant's invariants against the published reference values embedded
// in the data file. Two reference cells are documented there as inconsistent
// with recomputation; identification matches those cells against the
// recomputed values and the discrepancy is reported, never silently dropped.

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "stacklab/bracket.hpp"
#include "stacklab/census.hpp"
#include "stacklab/expected_values.hpp"
#include "stacklab/presentation.hpp"
#include "stacklab/stack.hpp"

namespace stacklab {

enum class KishinoLabel { K, Kswitch, Kalt, Kv, K5, K6, K7 };

inline constexpr std::array<KishinoLabel, 7> kKishinoLabels = {
    KishinoLabel::K,  KishinoLabel::Kswitch, KishinoLabel::Kalt, KishinoLabel::Kv,
    KishinoLabel::K5, KishinoLabel::K6,      KishinoLabel::K7};

inline const char* label_name(KishinoLabel l) {
  switch (l) {
    case KishinoLabel::K: return "K";
    case KishinoLabel::Kswitch: return "K_switch";
    case KishinoLabel::Kalt: return "K_alt";
    case KishinoLabel::Kv: return "K_v";
    case KishinoLabel::K5: return "K5";
    case KishinoLabel::K6: return "K6";
    case KishinoLabel::K7: return "K7";
  }
  return "?";
}

inline std::optional<KishinoLabel> label_from_name(const std::string& s) {
  for (KishinoLabel l : kKishinoLabels)
    if (s == label_name(l)) return l;
  return std::nullopt;
}

// Variant `mask` switches crossing i of the base shadow iff bit i of mask is
// set; variant 0 is the base, variant 15 its vertical reflection. The base is
// the writhe-zero variant whose group is infinite cyclic.
inline VirtualDiagram kishino_variant(int mask) {
  if (mask < 0 || mask > 15) throw std::invalid_argument("kishino_variant: mask must be 0..15");
  // Passages along the traversal c1 v1 c2 c1 v1 c2 c3 v2 c4 c3 v2 c4,
  // edge k running from position k to k+1 (mod 12).
  struct Passage {
    EdgeId in, out;
  };
  static constexpr Passage first[4] = {{12, 1}, {2, 3}, {6, 7}, {8, 9}};
  static constexpr Passage second[4] = {{3, 4}, {5, 6}, {9, 10}, {11, 12}};
  // Base over-strand choice per crossing (second passage over at c1, c3).
  static constexpr int base_bits = 0b0101;
  const int bits = base_bits ^ mask;

  VirtualDiagram d;
  auto classical = [&](int i) {
    Passage p1 = first[i], p2 = second[i];
    End p1in{p1.in, true}, p1out{p1.out, false}, p2in{p2.in, true}, p2out{p2.out, false};
    Crossing c;
    c.kind = Kind::Classical;
    // All four crossings have positive rotation parity between the first and
    // second passage; the quadruple is anchored at the under-entry.
    if (bits >> i & 1)
      c.ccw = {p1in, p2in, p1out, p2out};  // second passage over
    else
      c.ccw = {p2in, p1out, p2out, p1in};  // first passage over
    return c;
  };
  auto virt = [&](Passage a, Passage b) {
    Crossing c;
    c.kind = Kind::Virtual;
    c.ccw = {End{a.in, true}, End{b.in, true}, End{a.out, false}, End{b.out, false}};
    return c;
  };
  d.crossings = {classical(0), virt({1, 2}, {4, 5}), classical(1),
                 classical(2), virt({7, 8}, {10, 11}), classical(3)};
  return d;
}

inline VirtualDiagram kishino_base_shadow() { return kishino_variant(0); }

inline std::vector<VirtualDiagram> kishino_variants() {
  std::vector<VirtualDiagram> v;
  for (int mask = 0; mask < 16; ++mask) v.push_back(kishino_variant(mask));
  return v;
}

// --- signatures ---------------------------------------------------------------

struct PipelineOptions {
  int threads = 1;
  long long tietze_budget = 200000;
  int state_cap = 24;
  int census_max_generators = 4;
  int census_degree = 5;
};

struct StackInvariants {
  LaurentQ jones;
  bool group_free = false;  // zero relators after simplification
  int generators = 0;
  std::uint64_t census = 0;  // orbit count (free groups included)
  bool operator==(const StackInvariants&) const = default;
};

struct InvariantSignature {
  LaurentQ jones_self;
  StackInvariants vd, dd;
  bool operator==(const InvariantSignature&) const = default;
};

inline StackInvariants stack_invariants(const VirtualDiagram& stacked, const PipelineOptions& opt) {
  StackInvariants si;
  si.jones = jones(stacked, {.state_cap = opt.state_cap, .threads = opt.threads});
  auto pres = tietze_simplify(wirtinger(stacked), {.budget = opt.tietze_budget}).presentation;
  si.generators = pres.generator_count;
  si.group_free = is_free(pres).has_value();
  si.census = census(pres, {.degree = opt.census_degree,
                            .max_generators = opt.census_max_generators,
                            .threads = opt.threads})
                  .orbit_count;
  return si;
}

inline InvariantSignature kishino_signature(const VirtualDiagram& d, const PipelineOptions& opt = {}) {
  InvariantSignature sig;
  sig.jones_self = jones(d, {.state_cap = opt.state_cap, .threads = opt.threads});
  sig.vd = stack_invariants(build_stack(d, parse_stack_sequence("+-")), opt);
  sig.dd = stack_invariants(build_stack(d, parse_stack_sequence("++")), opt);
  return sig;
}

// --- identification -----------------------------------------------------------

namespace detail {

// Reference cell for matching: either "free on two generators" or a count.
// Cells listed under known_discrepancies match against the recomputed value;
// the published one is kept for reporting.
struct CensusCell {
  bool free = false;
  std::uint64_t count = 0;
  bool overridden = false;
};

inline CensusCell reference_census_cell(const std::string& label, const std::string& which) {
  const auto& exp = expected_values();
  CensusCell cell;
  const auto& disc = exp.value("known_discrepancies", nlohmann::json::object());
  std::string key = "table1." + label + "." + which;
  if (disc.contains(key)) {
    cell.overridden = true;
    cell.count = disc.at(key).at("computed").get<std::uint64_t>();
    return cell;
  }
  const auto& raw = exp.at("table1").at(label).at(which);
  if (raw.is_string()) {
    cell.free = true;
    cell.count = exp.at("f2_s5_orbit_count").get<std::uint64_t>();
  } else {
    cell.count = raw.get<std::uint64_t>();
  }
  return cell;
}

inline LaurentQ reference_stack_jones(const std::string& label, const std::string& which) {
  const auto& exp = expected_values();
  const auto& disc = exp.value("known_discrepancies", nlohmann::json::object());
  std::string key = "stack_jones." + label + "." + which;
  if (disc.contains(key)) return laurentq_from_json(disc.at(key).at("computed"));
  return laurentq_from_json(exp.at("stack_jones").at(label).at(which));
}

inline bool matches_census_cell(const StackInvariants& got, const CensusCell& want) {
  if (want.free) return got.group_free && got.generators == 2 && got.census == want.count;
  return !got.group_free && got.census == want.count;
}

}  // namespace detail

struct LabelBinding {
  int variant = -1;
  // Cells where the matched value is the documented recomputation rather than
  // the published number.
  std::vector<std::string> discrepancy_notes;
};

struct KishinoIdentification {
  std::array<LabelBinding, 7> bindings;  // indexed as kKishinoLabels
  std::vector<InvariantSignature> signatures;  // all 16 variants
  std::vector<std::string> failures;  // per-label failure reports
  bool complete = false;

  const LabelBinding& binding(KishinoLabel l) const {
    for (size_t i = 0; i < kKishinoLabels.size(); ++i)
      if (kKishinoLabels[i] == l) return bindings[i];
    throw std::logic_error("unknown label");
  }
};

// The signature provider is swappable so callers can route the per-variant
// pipeline through a result cache.
inline KishinoIdentification kishino_identify(
    const std::function<InvariantSignature(int)>& signature_of) {
  KishinoIdentification res;
  for (int mask = 0; mask < 16; ++mask) res.signatures.push_back(signature_of(mask));

  const auto& exp = expected_values();
  const auto& disc = exp.value("known_discrepancies", nlohmann::json::object());

  auto matches_label = [&](int variant, const std::string& label) {
    const InvariantSignature& s = res.signatures[static_cast<size_t>(variant)];
    if (s.jones_self != laurentq_from_json(exp.at("self_jones").at(label))) return false;
    if (s.vd.jones != detail::reference_stack_jones(label, "vd")) return false;
    if (s.dd.jones != detail::reference_stack_jones(label, "dd")) return false;
    return detail::matches_census_cell(s.vd, detail::reference_census_cell(label, "vd")) &&
           detail::matches_census_cell(s.dd, detail::reference_census_cell(label, "dd"));
  };
  auto note_overrides = [&](LabelBinding& b, const std::string& label) {
    for (const char* which : {"vd", "dd"}) {
      for (const char* prefix : {"table1.", "stack_jones."}) {
        std::string key = prefix + label + ("." + std::string(which));
        if (disc.contains(key))
          b.discrepancy_notes.push_back(key + ": " + disc.at(key).at("note").get<std::string>());
      }
    }
  };

  auto bind = [&](KishinoLabel l, int variant) {
    for (size_t i = 0; i < kKishinoLabels.size(); ++i)
      if (kKishinoLabels[i] == l) {
        res.bindings[i].variant = variant;
        note_overrides(res.bindings[i], label_name(l));
      }
  };

  std::array<bool, 16> taken{};
  // K first: K_v is its vertical reflection, the complementary variant.
  for (KishinoLabel l : {KishinoLabel::K, KishinoLabel::Kswitch, KishinoLabel::Kalt,
                         KishinoLabel::K5, KishinoLabel::K6, KishinoLabel::K7}) {
    int found = -1;
    for (int v = 0; v < 16 && found < 0; ++v)
      if (!taken[static_cast<size_t>(v)] && matches_label(v, label_name(l))) found = v;
    if (found < 0) {
      std::string report = std::string("no variant matches ") + label_name(l) + "; computed rows:";
      for (int v = 0; v < 16; ++v) {
        const auto& s = res.signatures[static_cast<size_t>(v)];
        report += "\n  variant " + std::to_string(v) + ": self=" + jones_to_text(s.jones_self) +
                  " vd=" + (s.vd.group_free ? "free" : std::to_string(s.vd.census)) +
                  " dd=" + (s.dd.group_free ? "free" : std::to_string(s.dd.census));
      }
      res.failures.push_back(report);
      continue;
    }
    taken[static_cast<size_t>(found)] = true;
    bind(l, found);
    if (l == KishinoLabel::K) {
      int reflected = 15 ^ found;
      if (!matches_label(reflected, "K_v")) {
        res.failures.push_back("vertical reflection of K does not match K_v's reference row");
      }
      taken[static_cast<size_t>(reflected)] = true;
      bind(KishinoLabel::Kv, reflected);
    }
  }
  res.complete = res.failures.empty();
  for (const auto& b : res.bindings) res.complete = res.complete && b.variant >= 0;
  return res;
}

inline KishinoIdentification kishino_identify(const PipelineOptions& opt = {}) {
  return kishino_identify([&](int mask) { return kishino_signature(kishino_variant(mask), opt); });
}

}  // namespace stacklab
