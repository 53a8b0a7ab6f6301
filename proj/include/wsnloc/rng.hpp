#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace wsnloc {

using Seed = std::uint64_t;

/// SplitMix64 finalizer. Used to derive independent child seeds.
std::uint64_t mix64(std::uint64_t x);

/// Folds `parts` into `base` one word at a time. Order matters.
Seed derive_seed(Seed base, std::initializer_list<std::uint64_t> parts);

/// Bit pattern of a double, for keying seeds on real-valued parameters.
std::uint64_t seed_word(double value);

/// Random stream with implementation-independent real conversions.
///
/// std::mt19937_64 output is fixed by the standard, but the standard
/// distributions are not, so the conversions to uniform and normal reals
/// are done here to keep results identical across standard libraries.
class Rng {
public:
  explicit Rng(Seed seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Unbiased integer on [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via Box-Muller (one value per call).
  double normal();

private:
  std::mt19937_64 engine_;
};

} // namespace wsnloc
