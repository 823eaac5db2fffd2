#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

#include <dicke/csv.hpp>
#include <dicke/errors.hpp>

using namespace dicke;

TEST(CsvFormat, SeventeenSignificantDigits) {
  EXPECT_EQ(csv::format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(csv::format_number(1.0), "1");
  EXPECT_EQ(csv::format_number(-2.5e-300), "-2.5e-300");
  EXPECT_EQ(csv::format_number(1e23), "9.9999999999999992e+22");
  EXPECT_EQ(csv::format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(csv::format_number(-std::numeric_limits<double>::infinity()), "-inf");
  for (double v : {1.0 / 3.0, 2.0 / 7.0, 6.02214076e23, -1e-17})
    EXPECT_EQ(std::stod(csv::format_number(v)), v);
}

TEST(CsvWriter, HeaderRowsAndTimestamp) {
  std::ostringstream plain;
  {
    csv::Writer w(plain, {"a", "b"});
    w.row({1.0, 2.0});
    w.row(std::vector<double>{0.5, -0.25});
  }
  EXPECT_EQ(plain.str(), "a,b\n1,2\n0.5,-0.25\n");

  std::ostringstream stamped;
  csv::Writer w(stamped, {"x"}, true);
  const std::string s = stamped.str();
  EXPECT_TRUE(std::regex_search(s, std::regex("^# generated \\d{4}-\\d{2}-\\d{2}T\\d{2}:\\d{2}:\\d{2}Z\nx\n$")))
      << s;
  EXPECT_THROW(w.row({1.0, 2.0}), InvalidData);
}

TEST(CsvOutput, CreatesParentDirectories) {
  const auto dir = std::filesystem::temp_directory_path() / "dicke_csv_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  {
    auto f = csv::open_output(dir / "out.csv");
    f << "ok\n";
  }
  std::ifstream in(dir / "out.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "ok");
  std::filesystem::remove_all(dir.parent_path());
}
