#pragma once

#include "connections.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace superflat {

// deterministic generator for reproducible random points: a seeded
// mt19937_64 with hand-rolled bounded draws, so sequences are identical
// across platforms and standard-library versions
class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // uniform integer in [lo, hi], inclusive, via rejection sampling
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

    // numerator in [-100, 100], denominator in [1, 20], canonicalized
    Rat rational();

    // pairwise distinct rationals, per-coordinate rejection redraw
    std::vector<Rat> distinct_values(int count);

    // arbitrary rationals, no distinctness constraint
    std::vector<Rat> values(int count);

    // admissible point: distinct z's, distinct lambdas, given kappa
    EvaluationPoint admissible_point(const SuperDims& dims, const Rat& kappa);

  private:
    std::mt19937_64 engine_;
};

// stable sub-seed for a named task under a master seed
std::uint64_t task_seed(std::uint64_t master, std::string_view tag);

} // namespace superflat
