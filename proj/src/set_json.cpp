#include "lipset/set_json.hpp"

#include <fstream>

namespace lipset {

ExtendedRational ext_from_string(const std::string& s) {
  if (s == "-inf") return ExtendedRational::neg_inf();
  if (s == "+inf" || s == "inf") return ExtendedRational::pos_inf();
  return Rational::from_string(s);
}

namespace {

std::string ext_to_string(const ExtendedRational& v) { return v.to_string(); }

Interval interval_from_json(const nlohmann::json& j, std::size_t index) {
  try {
    ExtendedRational lo = ext_from_string(j.at("lo").get<std::string>());
    ExtendedRational hi = ext_from_string(j.at("hi").get<std::string>());
    bool lc = j.at("lo_closed").get<bool>();
    bool hc = j.at("hi_closed").get<bool>();
    return Interval(lo, hi, lc, hc);
  } catch (const std::exception& e) {
    throw std::invalid_argument("parts[" + std::to_string(index) + "]: " + e.what());
  }
}

}  // namespace

IntervalSet set_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("parts") || !j.at("parts").is_array())
    throw std::invalid_argument("set description: expected object with a \"parts\" array");
  std::vector<Interval> parts;
  const auto& arr = j.at("parts");
  parts.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    parts.push_back(interval_from_json(arr[i], i));
  return IntervalSet::canonical(std::move(parts));
}

nlohmann::json set_to_json(const IntervalSet& s) {
  nlohmann::json parts = nlohmann::json::array();
  for (const Interval& p : s.parts()) {
    parts.push_back({{"lo", ext_to_string(p.lo)},
                     {"hi", ext_to_string(p.hi)},
                     {"lo_closed", p.lo_closed},
                     {"hi_closed", p.hi_closed}});
  }
  return nlohmann::json{{"parts", std::move(parts)}};
}

std::vector<IntervalSet> stages_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("stages") || !j.at("stages").is_array())
    throw std::invalid_argument("chain description: expected object with a \"stages\" array");
  std::vector<IntervalSet> stages;
  for (const auto& s : j.at("stages")) stages.push_back(set_from_json(s));
  return stages;
}

nlohmann::json stages_to_json(const std::vector<IntervalSet>& stages) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : stages) arr.push_back(set_to_json(s));
  return nlohmann::json{{"stages", std::move(arr)}};
}

namespace {

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

IntervalSet load_set_file(const std::string& path) {
  return set_from_json(load_json_file(path));
}

std::vector<IntervalSet> load_chain_file(const std::string& path) {
  return stages_from_json(load_json_file(path));
}

}  // namespace lipset
