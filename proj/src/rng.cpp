#include "expgof/rng.hpp"

#include <cmath>

namespace expgof {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

RngStream RngStream::child(std::uint64_t index) const {
  return RngStream(splitmix64(seed_ ^ splitmix64(stream_ + 0x632be59bd9b4e019ULL)), index);
}

double RngStream::uniform() {
  // 53 random bits mapped to the midpoints of a uniform lattice: never 0 or 1.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::exponential() { return -std::log1p(-uniform()); }

double RngStream::normal() {
  std::normal_distribution<double> dist;
  return dist(engine_);
}

}  // namespace expgof
