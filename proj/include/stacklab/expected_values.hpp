#pragma once

// Access to the embedded reference-values data file.

#include <json.hpp>
#include <stacklab/expected_values_data.hpp>

#include "stacklab/laurent.hpp"

namespace stacklab {

inline const nlohmann::json& expected_values() {
  static const nlohmann::json j = nlohmann::json::parse(data::kExpectedValuesJson);
  return j;
}

// Coefficient maps are stored as {"exponent": coefficient} in q-units.
inline LaurentQ laurentq_from_json(const nlohmann::json& obj) {
  LaurentQ p;
  for (auto it = obj.begin(); it != obj.end(); ++it)
    p.add_term(std::stoi(it.key()), it.value().get<long long>());
  return p;
}

inline nlohmann::json laurentq_to_json(const LaurentQ& p) {
  nlohmann::json j = nlohmann::json::object();
  for (auto& [e, v] : p.c) j[std::to_string(e)] = v;
  return j;
}

}  // namespace stacklab
