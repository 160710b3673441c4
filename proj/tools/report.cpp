#include "report.hpp"

#include <hyharm/version.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace hyharm::cli {

json to_json(const RunReport& report) {
  json root;
  root["schema"] = 1;
  root["version"] = std::string(kVersion);
  root["command"] = report.command;
  root["config"] = report.config;
  root["cases"] = report.cases;
  root["aggregate"] = report.aggregate;
  return root;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

std::string format_cell(const json& value) {
  if (value.is_number_float()) return format_double(value.get<double>());
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number_unsigned()) return std::to_string(value.get<unsigned long long>());
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_string()) return value.get<std::string>();
  if (value.is_null()) return "";
  return value.dump();
}

}  // namespace

std::string to_csv(const std::vector<json>& cases, const std::vector<std::string>& columns) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const json& row : cases) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i > 0) out += ',';
      if (auto it = row.find(columns[i]); it != row.end()) out += format_cell(*it);
    }
    out += '\n';
  }
  return out;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + out_path);
  file << text;
}

}  // namespace hyharm::cli
