// stacklab: virtual link diagrams, stacks, link-group censuses and bracket
// polynomials from the command line.
//
// Exit codes: 0 success, 1 computation error, 2 usage error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "stacklab/census.hpp"
#include "stacklab/expected_values.hpp"
#include "stacklab/json_io.hpp"
#include "stacklab/report.hpp"

using namespace stacklab;

namespace {

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string laurenta_to_text(const LaurentA& p) {
  if (p.c.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [e, v] : p.c) {
    long long av = v < 0 ? -v : v;
    if (first) {
      if (v < 0) s += "-";
      first = false;
    } else {
      s += v < 0 ? " - " : " + ";
    }
    std::string power;
    if (e == 1)
      power = "A";
    else if (e != 0)
      power = "A^" + std::to_string(e);
    if (power.empty())
      s += std::to_string(av);
    else if (av == 1)
      s += power;
    else
      s += std::to_string(av) + " " + power;
  }
  return s;
}

nlohmann::json laurenta_to_json(const LaurentA& p) {
  nlohmann::json j = nlohmann::json::object();
  for (auto& [e, v] : p.c) j[std::to_string(e)] = v;
  return j;
}

nlohmann::json census_to_json(const CensusReport& r) {
  nlohmann::json j;
  j["degree"] = r.degree;
  j["generator_count"] = r.generator_count;
  j["total_homs"] = r.total_homs;
  j["total_epis"] = r.total_epis;
  j["orbit_count"] = r.orbit_count;
  j["leaves_scanned"] = r.leaves_scanned;
  j["subtree_prunes"] = r.subtree_prunes;
  j["seconds"] = r.seconds;
  return j;
}

nlohmann::json diagram_summary(const VirtualDiagram& d) {
  nlohmann::json j = diagram_to_json(d);
  j["classical"] = n_classical(d);
  j["virtual"] = n_virtual(d);
  j["components"] = components(d);
  j["writhe"] = writhe(d);
  j["pd"] = to_pd_text(d);
  return j;
}

struct GlobalOptions {
  int threads = 0;  // 0: resolve from env / hardware
  std::string cache_dir = ".stacklab-cache";
  bool no_cache = false;
  std::string format = "json";
  int state_cap = 24;
  long long budget = 200000;

  int resolved_threads() const {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("STACKLAB_THREADS")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }
  PipelineOptions pipeline() const {
    PipelineOptions p;
    p.threads = resolved_threads();
    p.tietze_budget = budget;
    p.state_cap = state_cap;
    return p;
  }
  Cache cache() const { return no_cache ? Cache() : Cache(cache_dir); }
  bool pretty() const { return format == "pretty"; }
};

void emit(const GlobalOptions& g, const nlohmann::json& j, const std::string& pretty_text) {
  if (g.pretty())
    std::cout << pretty_text;
  else
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"virtual link stacks: diagrams, groups, censuses, bracket polynomials"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--threads", g.threads, "worker threads (default: STACKLAB_THREADS or hardware)");
  app.add_option("--cache", g.cache_dir, "cache directory")->capture_default_str();
  app.add_flag("--no-cache", g.no_cache, "disable the result cache");
  app.add_option("--format", g.format, "output format: json or pretty")
      ->check(CLI::IsMember({"json", "pretty"}));
  app.add_option("--state-cap", g.state_cap, "bracket state-sum crossing cap")
      ->capture_default_str();
  app.add_option("--budget", g.budget, "simplification step budget")->capture_default_str();

  std::string input;
  std::string layers;
  int degree = 5, max_generators = 4;
  bool raw_group = false, no_timings = false;

  auto* cmd_parse = app.add_subcommand("parse", "parse and validate a diagram");
  cmd_parse->add_option("input", input, "file with PD text or diagram JSON (default stdin)");

  auto* cmd_stack = app.add_subcommand("stack", "build a layer stack of a diagram");
  cmd_stack->add_option("--layers", layers, "sign sequence, e.g. +- or ++")->required();
  cmd_stack->add_option("input", input);

  auto* cmd_group = app.add_subcommand("group", "link group presentation of a diagram");
  cmd_group->add_flag("--raw", raw_group, "emit the unsimplified arc presentation");
  cmd_group->add_option("input", input);

  auto* cmd_epi = app.add_subcommand("epi-count", "count inequivalent epimorphisms onto S_n");
  cmd_epi->add_option("--degree", degree, "symmetric group degree")->capture_default_str();
  cmd_epi->add_option("--max-generators", max_generators, "feasibility cap")->capture_default_str();
  cmd_epi->add_option("input", input, "presentation text or JSON");

  auto* cmd_bracket = app.add_subcommand("bracket", "Kauffman bracket polynomial");
  cmd_bracket->add_option("input", input);

  auto* cmd_jones = app.add_subcommand("jones", "writhe-normalized polynomial in t^{1/2}");
  cmd_jones->add_option("input", input);

  auto* cmd_kishino = app.add_subcommand("kishino", "fixture family operations");
  auto* cmd_identify = cmd_kishino->add_subcommand("identify", "bind the seven labels to variants");
  cmd_kishino->require_subcommand(1);

  auto* cmd_report = app.add_subcommand("report", "reproduce the full reference tables");
  cmd_report->add_flag("--no-timings", no_timings, "omit timing fields (deterministic output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_parse) {
      auto d = diagram_from_text(read_input(input));
      std::ostringstream pretty;
      pretty << to_pd_text(d) << "\n"
             << "classical " << n_classical(d) << ", virtual " << n_virtual(d) << ", components "
             << components(d) << ", writhe " << writhe(d) << "\n";
      emit(g, diagram_summary(d), pretty.str());
    } else if (*cmd_stack) {
      auto d = diagram_from_text(read_input(input));
      auto s = build_stack(d, parse_stack_sequence(layers));
      std::ostringstream pretty;
      pretty << to_pd_text(s) << "\n"
             << "classical " << n_classical(s) << ", virtual " << n_virtual(s) << ", components "
             << components(s) << ", writhe " << writhe(s) << "\n";
      emit(g, diagram_summary(s), pretty.str());
    } else if (*cmd_group) {
      auto d = diagram_from_text(read_input(input));
      auto p = wirtinger(d);
      nlohmann::json j;
      j["arc_presentation"] = presentation_to_json(p);
      std::string text;
      if (!raw_group) {
        auto res = tietze_simplify(p, {.budget = g.budget});
        j["simplified"] = presentation_to_json(res.presentation);
        j["complete"] = res.complete;
        j["steps"] = res.steps;
        text = presentation_to_text(res.presentation);
      } else {
        text = presentation_to_text(p);
      }
      j["text"] = text;
      emit(g, j, text + "\n");
    } else if (*cmd_epi) {
      auto p = presentation_from_input(read_input(input));
      auto rep = census(p, {.degree = degree,
                            .max_generators = max_generators,
                            .threads = g.resolved_threads()});
      std::ostringstream pretty;
      pretty << rep.orbit_count << " inequivalent epimorphisms onto S_" << degree << " ("
             << rep.total_epis << " epimorphisms, " << rep.total_homs << " homomorphisms)\n";
      emit(g, census_to_json(rep), pretty.str());
    } else if (*cmd_bracket) {
      auto d = diagram_from_text(read_input(input));
      auto b = kauffman_bracket(d, {.state_cap = g.state_cap, .threads = g.resolved_threads()});
      nlohmann::json j;
      j["A_coeffs"] = laurenta_to_json(b);
      j["text"] = laurenta_to_text(b);
      emit(g, j, laurenta_to_text(b) + "\n");
    } else if (*cmd_jones) {
      auto d = diagram_from_text(read_input(input));
      auto q = jones(d, {.state_cap = g.state_cap, .threads = g.resolved_threads()});
      nlohmann::json j;
      j["q_coeffs"] = laurentq_to_json(q);
      j["text"] = jones_to_text(q);
      emit(g, j, jones_to_text(q) + "\n");
    } else if (*cmd_identify) {
      ReportOptions ro{g.pipeline(), g.cache(), !no_timings};
      auto ident = kishino_identify_cached(ro);
      nlohmann::json j;
      for (size_t i = 0; i < kKishinoLabels.size(); ++i) {
        const char* name = label_name(kKishinoLabels[i]);
        const LabelBinding& b = ident.bindings[i];
        nlohmann::json lj;
        lj["variant"] = b.variant;
        if (b.variant >= 0) {
          lj["pd"] = to_pd_text(kishino_variant(b.variant));
          const auto& s = ident.signatures[static_cast<size_t>(b.variant)];
          lj["jones"] = laurentq_to_json(s.jones_self);
          lj["vd"] = s.vd.group_free ? nlohmann::json("free") : nlohmann::json(s.vd.census);
          lj["dd"] = s.dd.group_free ? nlohmann::json("free") : nlohmann::json(s.dd.census);
          lj["jones_vd"] = laurentq_to_json(s.vd.jones);
          lj["jones_dd"] = laurentq_to_json(s.dd.jones);
        }
        if (!b.discrepancy_notes.empty()) lj["discrepancy_notes"] = b.discrepancy_notes;
        j[name] = std::move(lj);
      }
      if (!ident.failures.empty()) j["failures"] = ident.failures;
      std::ostringstream pretty;
      for (size_t i = 0; i < kKishinoLabels.size(); ++i)
        pretty << label_name(kKishinoLabels[i]) << " -> variant "
               << ident.bindings[i].variant << "\n";
      if (!ident.complete) pretty << "identification incomplete; see failures\n";
      emit(g, j, pretty.str());
      if (!ident.complete) return 1;
    } else if (*cmd_report) {
      ReportOptions ro{g.pipeline(), g.cache(), !no_timings};
      auto rep = build_report(ro);
      emit(g, rep, render_report_pretty(rep));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
