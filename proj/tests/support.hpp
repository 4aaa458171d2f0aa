#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <vector>

#include "margo/complex.hpp"
#include "margo/space.hpp"

namespace margo::testing {

// Property suites draw from this seed; MARGO_TEST_SEED overrides the default 0.
inline std::uint64_t seed() {
  const char* s = std::getenv("MARGO_TEST_SEED");
  return s ? std::strtoull(s, nullptr, 10) : 0;
}

class Gen {
 public:
  explicit Gen(std::uint64_t salt) : rng_(seed() * 0x9e3779b97f4a7c15ull + salt) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  // Complex generated by 1..4 random subsets of {1..n}; may be void when every
  // draw is empty, never full unless a draw is N.
  SimplicialComplex complex(int n) {
    std::vector<Subset> gens;
    const int count = static_cast<int>(uniform(1, 4));
    for (int k = 0; k < count; ++k) gens.emplace_back(static_cast<std::uint32_t>(uniform(0, (1 << n) - 1)));
    return SimplicialComplex::from_facets(n, gens);
  }

  Counts table(std::size_t cells, std::int64_t max_entry) {
    Counts u(cells);
    for (auto& v : u) v = uniform(0, max_entry);
    return u;
  }

  std::vector<int> cardinalities(int n, int qmax) {
    std::vector<int> q(n);
    for (auto& v : q) v = static_cast<int>(uniform(2, qmax));
    return q;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace margo::testing
