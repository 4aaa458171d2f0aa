#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "margo/complex.hpp"
#include "margo/subset.hpp"

namespace margo {

/// One joint outcome x = (x_1,...,x_n) with 0 <= x_i < q_i.
using Config = std::vector<int>;
/// Values of a configuration restricted to a subset B, in increasing index
/// order of B.
using LocalConfig = std::vector<int>;
/// Dense integer vector indexed by configurations in lexicographic order.
using Counts = std::vector<std::int64_t>;

/// Product of finite alphabets X_1 x ... x X_n. Configurations are indexed
/// lexicographically with coordinate 1 most significant.
class ConfigSpace {
 public:
  static constexpr std::size_t kMaxSize = std::size_t{1} << 24;

  explicit ConfigSpace(std::vector<int> cardinalities);
  static ConfigSpace binary(int n) { return ConfigSpace(std::vector<int>(n, 2)); }

  int n() const { return static_cast<int>(cards_.size()); }
  int cardinality(int i) const { return cards_[i]; }
  const std::vector<int>& cardinalities() const { return cards_; }
  std::size_t size() const { return size_; }
  bool is_binary() const;

  Config config(std::size_t index) const;
  std::size_t index(const Config& x) const;
  /// Coordinate `var` (0-based) of the configuration at `index`.
  int value(std::size_t index, int var) const {
    return static_cast<int>((index / strides_[var]) % cards_[var]);
  }

  /// |X_B|.
  std::size_t local_size(Subset b) const;
  /// Position of x_B inside X_B (lexicographic, smallest index of B most
  /// significant).
  std::size_t local_index(std::size_t index, Subset b) const;
  std::size_t local_index(const LocalConfig& y, Subset b) const;
  LocalConfig local_config(std::size_t local, Subset b) const;
  /// Throws std::invalid_argument unless y is a valid configuration on B.
  void check_local(const LocalConfig& y, Subset b) const;

  /// "0120"-style digits when every q_i <= 10, comma separated otherwise.
  std::string format(std::size_t index) const;

  friend bool operator==(const ConfigSpace& a, const ConfigSpace& b) { return a.cards_ == b.cards_; }

 private:
  std::vector<int> cards_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

/// u : X -> N_0.
struct ContingencyTable {
  ConfigSpace space;
  Counts counts;

  ContingencyTable(ConfigSpace s, Counts c);
  static ContingencyTable zeros(const ConfigSpace& s) { return {s, Counts(s.size(), 0)}; }
  static ContingencyTable indicator(const ConfigSpace& s, std::size_t x);

  std::int64_t degree() const;
};

/// Concatenated facet marginals, facets in complex order and local
/// configurations lexicographic within each facet block.
struct MarginalVector {
  Counts entries;
  friend bool operator==(const MarginalVector&, const MarginalVector&) = default;
  friend auto operator<=>(const MarginalVector&, const MarginalVector&) = default;
};

/// Row bookkeeping shared by everything that evaluates the marginal map:
/// for each configuration and facet, the row of A that holds its 1.
class MarginalLayout {
 public:
  MarginalLayout(const SimplicialComplex& complex, const ConfigSpace& space);

  std::size_t rows() const { return rows_; }
  std::size_t facets() const { return facets_.size(); }
  std::size_t cells() const { return cells_; }
  /// Row index of (facet f, x_F) for configuration x.
  std::uint32_t row(std::size_t x, std::size_t f) const { return cell_rows_[x * facets_.size() + f]; }
  std::size_t block_offset(std::size_t f) const { return offsets_[f]; }
  std::size_t block_size(std::size_t f) const { return offsets_[f + 1] - offsets_[f]; }
  Subset facet(std::size_t f) const { return facets_[f]; }

  MarginalVector apply(std::span<const std::int64_t> counts) const;

 private:
  std::vector<Subset> facets_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> cell_rows_;
  std::size_t rows_ = 0;
  std::size_t cells_ = 0;
};

/// Dense row-major 0/1 matrix A_Delta with labelled rows.
struct MarginalMatrix {
  struct RowLabel {
    Subset facet;
    LocalConfig local;
  };

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;
  std::vector<RowLabel> row_labels;

  std::span<const std::int64_t> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  std::int64_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  Counts column(std::size_t c) const;
  Counts multiply(std::span<const std::int64_t> v) const;
};

/// u_B over X_B. B = {} gives the single total count.
Counts marginal(const ContingencyTable& u, Subset b);

MarginalVector marginal_map(const SimplicialComplex& complex, const ContingencyTable& u);

MarginalMatrix marginal_matrix(const SimplicialComplex& complex, const ConfigSpace& space);

/// Indices of {X_B = y_B}, ascending.
std::vector<std::size_t> cylinder(const ConfigSpace& space, Subset b, const LocalConfig& y);

/// A * m == 0.
bool kernel_check(const MarginalMatrix& a, std::span<const std::int64_t> m);

/// Dense integer matrix as exchanged in the matrix text format.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  std::span<const std::int64_t> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

/// "<rows> <cols>" header then row-major entries, one row per line.
void write_matrix(std::ostream& out, std::size_t rows, std::size_t cols,
                  std::span<const std::int64_t> data);
void write_matrix(std::ostream& out, const MarginalMatrix& a);
IntMatrix read_matrix(std::istream& in);

/// Line 1: n; line 2: cardinalities; line 3: entries in lexicographic order.
void write_table(std::ostream& out, const ContingencyTable& u);
ContingencyTable read_table(std::istream& in);

/// Parses "2,2,3"; every entry must be >= 2.
ConfigSpace parse_space(const std::string& text);

}  // namespace margo
