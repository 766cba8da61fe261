#include "expgof/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "expgof/errors.hpp"

namespace expgof {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ls(line);
  while (std::getline(ls, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw DomainError("--format must be csv or json, got '" + text + "'");
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

void write_table(std::ostream& out, const CsvTable& table, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    CsvWriter w(out, table.header);
    for (const auto& r : table.rows) w.row(r);
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      const std::string& cell = i < r.size() ? r[i] : std::string();
      double v;
      if (cell == "NA")
        obj[table.header[i]] = nullptr;
      else if (parse_number(cell, v))
        obj[table.header[i]] = v;
      else
        obj[table.header[i]] = cell;
    }
    arr.push_back(obj);
  }
  out << arr.dump(2) << '\n';
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
    } else {
      if (cells.size() != t.header.size()) throw DomainError("CSV row width does not match header: " + line);
      t.rows.push_back(std::move(cells));
    }
  }
  if (!have_header) throw DomainError("CSV input is empty");
  return t;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), width_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw DomainError("CSV row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

std::string format_real(double x) {
  if (std::isnan(x)) return "NA";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw DomainError("format_real: conversion failed");
  return std::string(buf, ptr);
}

double parse_real(const std::string& text, const std::string& what) {
  double v;
  if (!parse_number(text, v)) throw DomainError("cannot parse " + what + " value '" + text + "'");
  return v;
}

}  // namespace expgof
