#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sattl/formula.hpp"

namespace sattl {

struct TraceRecord {
  Trace trace;
  std::string meta_json = "{}";  // opaque "meta" object, re-serialized
};

// One episode per line: {"labels": [["soil"], ["soil", "end"]], "meta": {...}}.
// Blank lines are skipped. Throws TraceFormatError with the line number.
std::vector<TraceRecord> read_trace_jsonl(std::istream& in);
TraceRecord parse_trace_line(const std::string& line);
std::string format_trace_line(const TraceRecord& rec);

}  // namespace sattl
