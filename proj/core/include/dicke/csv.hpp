#pragma once

// Plain CSV output: `.` decimal separator, 17 significant digits, header row,
// and an optional leading `# generated ...` timestamp comment.

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace dicke::csv {

/// Round-trip representation of a double ("%.17g"); non-finite values as nan/inf.
std::string format_number(double v);

/// "# generated <UTC ISO-8601>".
std::string timestamp_line();

class Writer {
 public:
  Writer(std::ostream& out, std::vector<std::string> header, bool timestamp = false);

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

/// Opens `path` for writing (creating parent directories); throws dicke::Error on failure.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace dicke::csv
