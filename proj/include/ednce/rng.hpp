#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "ednce/errors.hpp"

namespace ednce {

// Deterministic random source. mt19937_64 has a fully specified algorithm, so
// streams are reproducible across platforms and standard libraries. The
// bounded draw below avoids std::uniform_int_distribution, whose output is
// implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform draw from [0, n). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw InternalError("Rng::below called with n = 0");
    const std::uint64_t bucket = std::numeric_limits<std::uint64_t>::max() / n;
    const std::uint64_t cap = bucket * n;
    std::uint64_t x = engine_();
    while (x >= cap) x = engine_();
    return x / bucket;
  }

  // Independent child stream. Children are a pure function of (seed, stream),
  // so subsystems can be reseeded in a fixed order regardless of how much
  // randomness the parent consumed.
  Rng fork(std::uint64_t stream) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed_),
                      static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    std::uint32_t words[2] = {0, 0};
    seq.generate(words, words + 2);
    const std::uint64_t child =
        (static_cast<std::uint64_t>(words[1]) << 32) | words[0];
    return Rng(child);
  }

  template <typename T>
  void shuffle(std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace ednce
