#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace risopt {

/// 17-significant-digit scientific form ("%.16e"); round-trips the exact
/// double. NaN and infinities print as "nan", "inf", "-inf".
std::string format_double(double v);

/// Inverse of format_double (plain strtod; throws ConfigError on garbage).
double parse_double(const std::string& s);

/// Row-oriented CSV emitter. Every file starts with the schema comment
/// line "# schema=1" followed by the header row.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  ~CsvWriter();

  void row(const std::vector<std::string>& cells);
  void close();

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t width_ = 0;
};

/// Parsed CSV file: schema line stripped, header split out.
struct CsvTable {
  int schema = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws ConfigError when absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace risopt
