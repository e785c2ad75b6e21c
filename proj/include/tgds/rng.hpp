#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tgds {

// Identical (master, stream) pairs give bit-identical draws, independently of
// which other streams were consumed before.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  // Child stream for a sub-task (weights of replica k, clocks, ...).
  Seed derive(std::uint64_t sub) const;

  bool operator==(const Seed&) const = default;
};

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(Seed seed);

  std::uint64_t next() { return engine_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1].
  double uniform_open_left() { return 1.0 - uniform(); }

  double exponential(double rate = 1.0) { return -std::log(uniform_open_left()) / rate; }

  double normal() { return normal_(engine_); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace tgds
