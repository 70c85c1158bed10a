#pragma once

#include <complex>
#include <cstdint>

namespace polyent {

/// Counter-based 64-bit generator.
///
/// Draw k of stream s under seed S is splitmix64(key(S, s) + k * gamma), with
/// key(S, s) = splitmix64(S ^ splitmix64(s)). Every draw is a pure function
/// of (seed, stream, counter), so disjoint streams can be consumed in any
/// order or in parallel and still reproduce bit-for-bit.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller; both variates of a pair are used.
  double normal();
  /// Complex Gaussian with E|z|^2 = 1.
  std::complex<double> complex_normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t counter() const { return counter_; }

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Documented stream families. A concrete stream id is
/// `stream_id(family, index)`; indices within a family never collide with
/// another family. Seed 0 is reserved for built-in test fixtures.
enum class StreamFamily : std::uint64_t {
  pure_state = 1,
  mixed_state = 2,
  unitary = 3,
  povm = 4,
  product_state = 5,
  separable_state = 6,
  optimizer = 16,
  suite = 32,
};

constexpr std::uint64_t stream_id(StreamFamily family, std::uint64_t index) {
  return (static_cast<std::uint64_t>(family) << 48) ^ index;
}

}  // namespace polyent
