#include "dicke/csv.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "dicke/errors.hpp"

namespace dicke::csv {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string timestamp_line() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[64];
  std::strftime(buf, sizeof buf, "# generated %Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

Writer::Writer(std::ostream& out, std::vector<std::string> header, bool timestamp)
    : out_(out), columns_(header.size()) {
  if (timestamp) out_ << timestamp_line() << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void Writer::row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

void Writer::row(const std::vector<double>& values) {
  if (values.size() != columns_)
    throw InvalidData("CSV row has " + std::to_string(values.size()) + " fields, header has " +
                      std::to_string(columns_));
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace dicke::csv
