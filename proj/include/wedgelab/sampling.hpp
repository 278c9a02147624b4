#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace wl {

// Stateless counter-based sampler: a Weyl-sequence walk over (index, lane)
// pushed through the splitmix64 finalizer. Every draw is addressed by its
// index, so parallel and serial fills of a buffer agree byte for byte.
struct IndexSampler {
  std::uint64_t seed = 0;

  // Uniform in [0, 1).
  double uniform(std::uint64_t index, int lane) const;
  // Standard normal via Box-Muller on two dedicated lanes.
  double normal(std::uint64_t index, int lane) const;
};

std::uint64_t splitmix64_step(std::uint64_t& state);

// Runs fn(i) for i in [0, n), serially or with an OpenMP parallel-for.
// Intended for index-addressed writes only; with that discipline the two
// execution modes produce identical buffers.
void for_indices(std::size_t n, bool parallel,
                 const std::function<void(std::size_t)>& fn);

}  // namespace wl
