#include "expgof/sample.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "expgof/errors.hpp"

namespace expgof {

std::vector<double> min_pair_weights(std::size_t n) {
  std::vector<double> w(n);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(2 * (n - i) - 1) / n2;
  return w;
}

ScaledSample scale_sample(std::span<const double> raw) {
  if (raw.empty()) throw DomainError("scale_sample: empty sample");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] > 0.0) || !std::isfinite(raw[i]))
      throw DomainError("scale_sample: entry " + std::to_string(i) + " is not a positive finite real");
  }
  const double mean = std::accumulate(raw.begin(), raw.end(), 0.0) / static_cast<double>(raw.size());
  ScaledSample s;
  s.values.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) s.values[i] = raw[i] / mean;
  s.sorted = s.values;
  std::stable_sort(s.sorted.begin(), s.sorted.end());
  s.min_weights = min_pair_weights(raw.size());
  return s;
}

std::vector<double> read_sample(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line.substr(first));
    double x;
    std::string rest;
    if (!(ls >> x) || (ls >> rest))
      throw DomainError("read_sample: line " + std::to_string(lineno) + " is not a single real");
    out.push_back(x);
  }
  return out;
}

std::vector<double> read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open input file '" + path + "'");
  return read_sample(in);
}

}  // namespace expgof
