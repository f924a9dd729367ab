#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "lipset/interval_set.hpp"

namespace lipset {

// Set description format:
//   {"parts": [{"lo": "p/q" | "-inf", "hi": "p/q" | "+inf",
//               "lo_closed": bool, "hi_closed": bool}, ...]}
// Rationals travel as decimal-digit strings "p/q"; plain integers "p" are
// accepted. Parsing canonicalizes; serialization emits the canonical form.
IntervalSet set_from_json(const nlohmann::json& j);
nlohmann::json set_to_json(const IntervalSet& s);

// Chain format: {"stages": [<set description>, ...]}
std::vector<IntervalSet> stages_from_json(const nlohmann::json& j);
nlohmann::json stages_to_json(const std::vector<IntervalSet>& stages);

ExtendedRational ext_from_string(const std::string& s);

IntervalSet load_set_file(const std::string& path);
std::vector<IntervalSet> load_chain_file(const std::string& path);

}  // namespace lipset
