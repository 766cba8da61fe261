#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expgof {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(const std::string& text);

// Rows of string cells under a header. JSON output emits one object per row,
// with numeric cells as numbers and "NA" as null.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

void write_table(std::ostream& out, const CsvTable& table, OutputFormat format);
CsvTable read_csv(std::istream& in);

// Streams CSV rows as they are produced.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t width_;
};

// Shortest representation that round-trips to the same double.
std::string format_real(double x);
double parse_real(const std::string& text, const std::string& what);

}  // namespace expgof
