#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace banditlab {

/// Splittable pseudo-random stream keyed on (master_seed, stream_id, substream).
///
/// The generator is xoshiro256** seeded through SplitMix64 from a mix of the
/// three keys, so every stream is a pure function of its key and no state is
/// shared between replications. All variate generators below are implemented
/// here rather than through <random> distributions, whose output differs
/// between standard library implementations.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t substream = 0);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t substream() const { return substream_; }

  /// Derives an independent stream sharing this stream's seed and id.
  RngStream split(std::uint64_t substream) const { return {master_seed_, stream_id_, substream}; }

  std::uint64_t next_u64();
  std::uint64_t operator()() { return next_u64(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return std::numeric_limits<std::uint64_t>::max(); }

  // One word each.
  double uniform();       // [0, 1)
  double uniform_open();  // (0, 1)
  bool bernoulli(double p) { return uniform() < p; }
  std::size_t uniform_index(std::size_t k);

  // Box-Muller without caching: exactly two words per call.
  double normal();
  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  // Rejection samplers; word count varies but stays a function of the stream.
  double gamma(double shape);
  double beta(double a, double b);

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t substream_;
  std::uint64_t s_[4];
};

}  // namespace banditlab
