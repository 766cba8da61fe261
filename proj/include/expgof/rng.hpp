#pragma once

#include <cstdint>
#include <random>

namespace expgof {

// Reproducible random stream identified by (seed, stream). Distinct stream
// indices seed independent generators through std::seed_seq.
class RngStream {
 public:
  using engine_type = std::mt19937_64;

  RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Independent child stream; children of different parents do not collide.
  RngStream child(std::uint64_t index) const;

  double uniform();      // open interval (0, 1)
  double exponential();  // Exp(1)
  double normal();       // N(0, 1)
  engine_type& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  engine_type engine_;
};

}  // namespace expgof
