#include "sattl/trace_io.hpp"

#include <istream>

#include <json.hpp>

#include "sattl/errors.hpp"

namespace sattl {

using nlohmann::json;

TraceRecord parse_trace_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw TraceFormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("labels") || !j["labels"].is_array())
    throw TraceFormatError("expected an object with a \"labels\" array");
  TraceRecord rec;
  for (const auto& step : j["labels"]) {
    if (!step.is_array()) throw TraceFormatError("each label set must be an array of atom names");
    LabelSet labels;
    for (const auto& a : step) {
      if (!a.is_string() || !is_valid_atom_name(a.get<std::string>()))
        throw TraceFormatError("invalid atom in label set: " + a.dump());
      labels.insert(a.get<std::string>());
    }
    rec.trace.steps.push_back(std::move(labels));
  }
  rec.trace.check_end_contract();
  if (j.contains("meta")) rec.meta_json = j["meta"].dump();
  return rec;
}

std::vector<TraceRecord> read_trace_jsonl(std::istream& in) {
  std::vector<TraceRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_trace_line(line));
    } catch (const TraceFormatError& e) {
      throw TraceFormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::string format_trace_line(const TraceRecord& rec) {
  json labels = json::array();
  for (const auto& step : rec.trace.steps) labels.push_back(json(std::vector<std::string>(step.begin(), step.end())));
  json j{{"labels", labels}, {"meta", json::parse(rec.meta_json)}};
  return j.dump();
}

}  // namespace sattl
