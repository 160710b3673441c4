#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace hyharm::cli {

using json = nlohmann::json;

// Envelope shared by every subcommand.  Serialized as
//   { "schema": 1, "version": ..., "command": ..., "config": {...},
//     "cases": [...], "aggregate": {...} }
// with no timestamps or machine identifiers, so identical invocations produce
// byte-identical reports.
struct RunReport {
  std::string command;
  json config = json::object();
  std::vector<json> cases;
  json aggregate = json::object();
};

json to_json(const RunReport& report);

// Renders the listed columns of each case as CSV with full round-trip double
// precision.  Missing fields render as empty cells.
std::string to_csv(const std::vector<json>& cases, const std::vector<std::string>& columns);

std::string format_double(double value);  // %.17g

// Writes to the path, or to stdout when the path is empty.
void write_output(const std::string& text, const std::string& out_path);

}  // namespace hyharm::cli
