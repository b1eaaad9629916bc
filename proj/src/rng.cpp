#include "banditlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace banditlab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += kGolden);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t x) { return splitmix64(x); }

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t substream)
    : master_seed_(master_seed), stream_id_(stream_id), substream_(substream) {
  std::uint64_t key = mix(master_seed);
  key = mix(key ^ mix(stream_id + 0x632BE59BD9B4E019ULL));
  key = mix(key ^ mix(substream + 0x8CB92BA72F3D8DD7ULL));
  for (auto& word : s_) word = splitmix64(key);
  // xoshiro's all-zero state is absorbing.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = kGolden;
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform_open() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::size_t RngStream::uniform_index(std::size_t k) {
  // Lemire's multiply-shift; bias is k / 2^64.
  const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * k;
  return static_cast<std::size_t>(wide >> 64);
}

double RngStream::normal() {
  const double u1 = uniform_open();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::gamma(double shape) {
  if (shape < 1.0) {
    // Boost a < 1 through Gamma(a + 1) * U^(1/a).
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform_open(), 1.0 / shape);
  }
  // Marsaglia-Tsang.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::beta(double a, double b) {
  // Inversion where the CDF is a power function; Thompson Sampling on 0/1
  // rewards lives almost entirely on these two edges.
  if (a == 1.0) return 1.0 - std::pow(uniform_open(), 1.0 / b);
  if (b == 1.0) return std::pow(uniform_open(), 1.0 / a);
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

}  // namespace banditlab
