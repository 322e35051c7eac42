#pragma once

#include "confalg/runner.hpp"
#include "json.hpp"

namespace confalg {

inline nlohmann::ordered_json to_json(const Record& r) {
  nlohmann::ordered_json j;
  j["statement"] = r.statement;
  j["identity"] = r.identity;
  j["status"] = std::string(to_string(r.status));
  auto& ws = j["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& w : r.witnesses) {
    nlohmann::ordered_json x;
    x["tuple"] = w.tuple;
    x["args"] = w.args;
    x["label"] = w.label;
    x["residual"] = w.residual;
    ws.push_back(std::move(x));
  }
  j["elapsed_ms"] = r.elapsed_ms;
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (!r.output.empty()) j["output"] = r.output;
  if (!r.error_code.empty()) j["error_code"] = r.error_code;
  return j;
}

inline nlohmann::ordered_json to_json(const Report& rep) {
  nlohmann::ordered_json j;
  j["tool"] = "confalg";
  j["version"] = rep.version;
  j["command"] = rep.command;
  j["seed"] = rep.seed;
  auto& rs = j["records"] = nlohmann::ordered_json::array();
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& r : rep.records) {
    rs.push_back(to_json(r));
    ++counts[static_cast<int>(r.status)];
  }
  j["summary"] = {{"holds", counts[0]}, {"fails", counts[1]}, {"errors", counts[2]}};
  j["exit_code"] = rep.exit_code();
  return j;
}

}  // namespace confalg
