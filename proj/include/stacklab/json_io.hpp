#pragma once

// Lossless JSON round trip for diagrams: direction flags explicit, nothing is
// inferred on input.

#include <json.hpp>

#include "stacklab/diagram.hpp"
#include "stacklab/presentation.hpp"

namespace stacklab {

inline nlohmann::json diagram_to_json(const VirtualDiagram& d) {
  nlohmann::json j;
  j["crossings"] = nlohmann::json::array();
  for (const auto& c : d.crossings) {
    nlohmann::json cj;
    cj["kind"] = c.kind == Kind::Classical ? "X" : "V";
    cj["ccw"] = nlohmann::json::array();
    for (const auto& e : c.ccw) cj["ccw"].push_back({e.edge, e.in ? "in" : "out"});
    j["crossings"].push_back(std::move(cj));
  }
  j["free_loops"] = d.free_loops;
  return j;
}

inline VirtualDiagram diagram_from_json(const nlohmann::json& j) {
  VirtualDiagram d;
  for (const auto& cj : j.at("crossings")) {
    Crossing c;
    std::string kind = cj.at("kind").get<std::string>();
    if (kind == "X")
      c.kind = Kind::Classical;
    else if (kind == "V")
      c.kind = Kind::Virtual;
    else
      throw ParseError("diagram JSON: kind must be \"X\" or \"V\"");
    const auto& ccw = cj.at("ccw");
    if (ccw.size() != 4) throw ParseError("diagram JSON: ccw must have 4 entries");
    for (int i = 0; i < 4; ++i) {
      c.ccw[i].edge = ccw[i].at(0).get<EdgeId>();
      std::string dir = ccw[i].at(1).get<std::string>();
      if (dir != "in" && dir != "out") throw ParseError("diagram JSON: direction must be in/out");
      c.ccw[i].in = dir == "in";
    }
    d.crossings.push_back(c);
  }
  d.free_loops = j.value("free_loops", 0u);
  auto v = validate(d);
  if (!v.empty()) throw DiagramError("diagram JSON: " + v.front());
  return d;
}

// Parse either PD text or the JSON form, by sniffing the first character.
inline VirtualDiagram diagram_from_text(const std::string& text) {
  size_t i = text.find_first_not_of(" \t\r\n");
  if (i == std::string::npos) throw ParseError("empty diagram input");
  if (text[i] == '{') return diagram_from_json(nlohmann::json::parse(text));
  return parse_pd(text);
}

// Presentations: runs of a generator are collapsed to [gen, exponent].
inline nlohmann::json presentation_to_json(const Presentation& p) {
  nlohmann::json j;
  j["generator_count"] = p.generator_count;
  nlohmann::json gens = nlohmann::json::array();
  for (int i = 0; i < p.generator_count; ++i) gens.push_back(generator_name(i));
  j["generators"] = std::move(gens);
  nlohmann::json rels = nlohmann::json::array();
  for (const Word& w : p.relators) {
    nlohmann::json rel = nlohmann::json::array();
    for (size_t i = 0; i < w.size();) {
      size_t k = i;
      int e = 0;
      while (k < w.size() && w[k].gen == w[i].gen && (e == 0 || (w[k].exp > 0) == (e > 0))) {
        e += w[k].exp;
        ++k;
      }
      rel.push_back({w[i].gen, e});
      i = k;
    }
    rels.push_back(std::move(rel));
  }
  j["relators"] = std::move(rels);
  return j;
}

inline Presentation presentation_from_json(const nlohmann::json& j) {
  Presentation p;
  p.generator_count = j.at("generator_count").get<int>();
  for (const auto& rel : j.at("relators")) {
    Word w;
    for (const auto& pair : rel) {
      int gen = pair.at(0).get<int>();
      long long e = pair.at(1).get<long long>();
      if (gen < 0 || gen >= p.generator_count) throw ParseError("presentation JSON: bad generator index");
      for (long long t = 0; t < std::llabs(e); ++t) w.push_back({gen, e > 0 ? +1 : -1});
    }
    p.relators.push_back(std::move(w));
  }
  return p;
}

inline Presentation presentation_from_input(const std::string& text) {
  size_t i = text.find_first_not_of(" \t\r\n");
  if (i == std::string::npos) throw ParseError("empty presentation input");
  if (text[i] == '{') return presentation_from_json(nlohmann::json::parse(text));
  return presentation_from_text(text);
}

}  // namespace stacklab
