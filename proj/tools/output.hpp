#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace talpha::cli {

// Deterministic %.17g formatting; infinities print as inf/-inf.
std::string format_number(double v);

// CSV writer: '.' decimal, comma separator, LF line endings, 17
// significant digits. Every file starts with the reproducibility header
// (library version plus the full run configuration).
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const nlohmann::json& config,
            const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);
  ~CsvWriter();

 private:
  struct Impl;
  Impl* impl_;
};

// JSON writer with the same reproducibility envelope.
void write_json(const std::string& path, const nlohmann::json& config,
                const nlohmann::json& payload);

}  // namespace talpha::cli
