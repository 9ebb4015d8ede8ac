#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace fragtree {

/// 64-bit Mersenne twister; every replicate owns one.
using Rng = std::mt19937_64;

/// Stream tags keep pipelines that share a (seed, replicate) pair independent.
enum class StreamTag : std::uint64_t {
  kGeneric = 0,
  kBernoulliFragment = 1,
  kPoissonCut = 2,
  kLatticeExcursion = 3,
  kBrownianExcursion = 4,
  kTreeSample = 5,
};

/// Deterministic stream for replicate `stream` of an experiment seeded with
/// `seed`. Distinct (seed, stream, tag) triples give decorrelated generators.
Rng make_stream(std::uint64_t seed, std::uint64_t stream,
                StreamTag tag = StreamTag::kGeneric);

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform on the open interval (0, 1).
inline double uniform_open01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

std::int64_t binomial(Rng& rng, std::int64_t trials, double p);

/// Fills `out` with i.i.d. N(0, stddev^2) variates.
void fill_normal(Rng& rng, std::span<double> out, double stddev = 1.0);

/// Exponential with rate 1.
double standard_exponential(Rng& rng);

template <typename T>
void shuffle(Rng& rng, std::span<T> values) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace fragtree
