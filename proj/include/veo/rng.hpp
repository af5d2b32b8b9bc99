#pragma once

#include <cstdint>
#include <random>

namespace veo {

// splitmix64 step; used to derive well-separated engine seeds from
// (seed, stream) pairs.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic Gaussian source. The normal variates are generated by the
// Marsaglia polar method on top of mt19937_64 rather than through
// std::normal_distribution, whose output is implementation-defined; identical
// (seed, stream) pairs therefore produce bit-identical sequences on every
// platform.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform();   // [0, 1)
  double gaussian();  // standard normal

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace veo
