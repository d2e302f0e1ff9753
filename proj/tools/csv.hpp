#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nff::cli {

// Filesystem problems (unreadable scenario, unwritable output) carry their own
// type so the entry point can map them to a distinct exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest round-trippable decimal form of v.
std::string format_number(double v);

// Comma-separated output with %.17g numbers and LF line endings; identical
// inputs produce byte-identical files on every platform.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  // Preformatted fields, for mixed text/number rows.
  void raw_row(const std::vector<std::string>& fields);
  // Flushes and checks the stream; called by the destructor as a fallback.
  void close();
  ~CsvWriter();

 private:
  void write_line(const std::string& line);

  std::ofstream out_;
  std::string path_;
  bool closed_ = false;
};

}  // namespace nff::cli
