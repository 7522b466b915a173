#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "talpha/version.hpp"

namespace talpha::cli {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CsvWriter::Impl {
  std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path, const nlohmann::json& config,
                     const std::vector<std::string>& columns)
    : impl_(new Impl) {
  impl_->out.open(path, std::ios::binary);  // LF line endings everywhere
  if (!impl_->out)
    throw std::runtime_error("cannot open output file " + path);
  impl_->out << "# talpha " << kVersion << "\n";
  impl_->out << "# config: " << config.dump() << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) impl_->out << ',';
    impl_->out << columns[i];
  }
  impl_->out << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) impl_->out << ',';
    impl_->out << format_number(values[i]);
  }
  impl_->out << '\n';
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) impl_->out << ',';
    impl_->out << cells[i];
  }
  impl_->out << '\n';
}

CsvWriter::~CsvWriter() {
  delete impl_;
}

void write_json(const std::string& path, const nlohmann::json& config,
                const nlohmann::json& payload) {
  nlohmann::json doc;
  doc["version"] = kVersion;
  doc["config"] = config;
  doc["result"] = payload;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << doc.dump(2) << '\n';
}

}  // namespace talpha::cli
