#include <json.hpp>

#include "sortsynth/prover.hpp"

namespace sortsynth {

namespace {

void writeText(const TraceNode& n, int indent, std::string& out) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  std::string line = pad;
  if (!n.label.empty()) line += n.label + (n.text.empty() && n.rule.empty() ? "" : ": ");
  if (!n.rule.empty()) line += "[" + n.rule + "] ";
  line += n.text;
  out += line + "\n";
  if (!n.goal.empty()) out += pad + "    goal: " + n.goal + "\n";
  for (const auto& c : n.children) writeText(c, indent + 1, out);
}

nlohmann::ordered_json toJson(const TraceNode& n) {
  nlohmann::ordered_json j;
  if (!n.label.empty()) j["label"] = n.label;
  if (!n.rule.empty()) j["rule"] = n.rule;
  j["text"] = n.text;
  if (!n.goal.empty()) j["goal"] = n.goal;
  if (!n.children.empty()) {
    j["children"] = nlohmann::ordered_json::array();
    for (const auto& c : n.children) j["children"].push_back(toJson(c));
  }
  return j;
}

}  // namespace

std::string traceText(const std::vector<TraceNode>& trace) {
  std::string out;
  for (const auto& n : trace) writeText(n, 0, out);
  return out;
}

std::string traceJson(const std::vector<TraceNode>& trace) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& n : trace) j.push_back(toJson(n));
  return j.dump(2);
}

}  // namespace sortsynth
