#include "csv.hpp"

#include <cstdio>

namespace nff::cli {

std::string format_number(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

CsvWriter::CsvWriter(const std::string& path)
    : out_(path, std::ios::binary), path_(path) {
  if (!out_) throw IoError("cannot open '" + path + "' for writing");
}

void CsvWriter::header(const std::vector<std::string>& names) {
  raw_row(names);
}

void CsvWriter::row(const std::vector<double>& values) {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) line += ',';
    line += format_number(values[i]);
  }
  write_line(line);
}

void CsvWriter::raw_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) line += ',';
    line += fields[i];
  }
  write_line(line);
}

void CsvWriter::write_line(const std::string& line) {
  out_ << line << '\n';
  if (!out_) throw IoError("write to '" + path_ + "' failed");
}

void CsvWriter::close() {
  if (closed_) return;
  closed_ = true;
  out_.flush();
  if (!out_) throw IoError("write to '" + path_ + "' failed");
  out_.close();
}

CsvWriter::~CsvWriter() {
  try {
    close();
  } catch (...) {
    // Destructor must not throw; explicit close() reports the failure.
  }
}

}  // namespace nff::cli
