#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "margo/characters.hpp"
#include "margo/complex.hpp"
#include "margo/space.hpp"

namespace margo {

inline constexpr std::uint64_t kDefaultCeiling = 10'000'000;

/// Thrown when a brute-force search would enumerate more objects than the
/// configured ceiling.
class ResourceCeilingExceeded : public std::runtime_error {
 public:
  ResourceCeilingExceeded(const std::string& what, std::uint64_t ceiling)
      : std::runtime_error(what), ceiling_(ceiling) {}
  std::uint64_t ceiling() const { return ceiling_; }

 private:
  std::uint64_t ceiling_;
};

struct SearchLimits {
  std::uint64_t ceiling = kDefaultCeiling;
  unsigned workers = 1;
};

/// All nonnegative tables with a given marginal, sorted in tableau order
/// (count vectors compared lexicographically, larger first).
struct Fiber {
  SimplicialComplex complex;
  ConfigSpace space;
  MarginalVector marginal;
  std::vector<Counts> tables;
};

struct ConnectivityReport {
  std::size_t fiber_size = 0;
  std::size_t components = 0;
  /// Two tables in different components; present iff components > 1.
  std::optional<std::pair<Counts, Counts>> witness;

  bool connected() const { return components <= 1; }
};

enum class Verdict { Pass, Fail };

enum class VerifyStrategy {
  /// Checks only fibers that contain two tables with disjoint supports,
  /// taken from kernel vectors of bounded degree. Degree-by-degree this
  /// covers every fiber that could be the first disconnected one.
  DisjointPairs,
  /// Enumerates every table of degree <= T and buckets by marginal.
  Exhaustive,
};

struct MarkovReport {
  Verdict verdict = Verdict::Pass;
  /// Connectivity was established for all fibers of degree <= this.
  int degree_limit = 0;
  std::size_t fibers_checked = 0;
  std::optional<Fiber> counterexample;
  std::optional<ConnectivityReport> connectivity;
};

struct BinomialWitness {
  int degree = 0;
  Move move;
  bool square_free = false;
};

/// Throws std::invalid_argument if the facet blocks of `b` have different
/// totals, ResourceCeilingExceeded if the search visits more than `ceiling`
/// nodes.
Fiber enumerate_fiber(const SimplicialComplex& complex, const ConfigSpace& space,
                      const MarginalVector& b, std::uint64_t ceiling = kDefaultCeiling);

/// Components of the graph u -> u + m, m in +-M, restricted to the fiber.
/// Every move must lie in the kernel of the marginal map.
ConnectivityReport fiber_connected(const Fiber& fiber, std::span<const Move> moves);

/// Checks that `moves` connect every fiber of degree <= degree_limit. The
/// counterexample, if any, is the disconnected fiber of least (degree,
/// marginal).
MarkovReport verify_markov_basis(const SimplicialComplex& complex, const ConfigSpace& space,
                                 std::span<const Move> moves, int degree_limit,
                                 const SearchLimits& limits = {},
                                 VerifyStrategy strategy = VerifyStrategy::DisjointPairs);

/// Smallest k <= k_max with two distinct degree-k tables of equal marginal
/// (necessarily disjoint supports at the minimum), with the least such pair
/// in tableau order. Square-free pairs are searched first at every degree.
std::optional<BinomialWitness> min_binomial_degree(const SimplicialComplex& complex,
                                                   const ConfigSpace& space, int k_max,
                                                   const SearchLimits& limits = {});

/// One configuration per line, repeated by multiplicity.
std::string tableau(const ConfigSpace& space, std::span<const std::int64_t> counts);
inline std::string tableau(const ContingencyTable& u) { return tableau(u.space, u.counts); }

}  // namespace margo
