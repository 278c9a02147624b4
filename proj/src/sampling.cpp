#include "wedgelab/sampling.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wl {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kWeylIndex = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeylLane = 0xD1B54A32D192ED03ULL;

}  // namespace

std::uint64_t splitmix64_step(std::uint64_t& state) {
  state += kWeylIndex;
  return mix(state);
}

double IndexSampler::uniform(std::uint64_t index, int lane) const {
  std::uint64_t z = seed + index * kWeylIndex +
                    static_cast<std::uint64_t>(lane + 1) * kWeylLane;
  return static_cast<double>(mix(z) >> 11) * 0x1.0p-53;
}

double IndexSampler::normal(std::uint64_t index, int lane) const {
  const double u1 = uniform(index, 2 * lane);
  const double u2 = uniform(index, 2 * lane + 1);
  const double r = std::sqrt(-2.0 * std::log(u1 + 0x1.0p-60));
  return r * std::cos(2.0 * M_PI * u2);
}

void for_indices(std::size_t n, bool parallel,
                 const std::function<void(std::size_t)>& fn) {
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(static_cast<std::size_t>(i));
    return;
#endif
  }
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace wl
