#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

namespace expgof {

// Observations divided by their mean. `sorted` holds the values in ascending
// order and `min_weights[i]` is the probability that the minimum of two
// independent draws from the empirical distribution equals sorted[i].
struct ScaledSample {
  std::vector<double> values;
  std::vector<double> sorted;
  std::vector<double> min_weights;

  std::size_t size() const { return values.size(); }
};

ScaledSample scale_sample(std::span<const double> raw);

// w_i = (2(n-i)+1)/n^2 for 1-based ascending rank i.
std::vector<double> min_pair_weights(std::size_t n);

// Newline separated reals; blank lines and lines starting with '#' are skipped.
std::vector<double> read_sample(std::istream& in);
std::vector<double> read_sample_file(const std::string& path);

}  // namespace expgof
