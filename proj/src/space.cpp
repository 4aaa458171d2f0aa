#include "margo/space.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "margo/kernels.hpp"

namespace margo {
namespace {

// Entries are bounded so that every sum over a space of kMaxSize cells stays
// inside int64.
constexpr std::int64_t kMaxEntry = std::int64_t{1} << 32;

}  // namespace

ConfigSpace::ConfigSpace(std::vector<int> cardinalities) : cards_(std::move(cardinalities)) {
  if (cards_.empty() || cards_.size() > 30)
    throw std::invalid_argument("space: need 1..30 variables");
  strides_.assign(cards_.size(), 1);
  for (std::size_t i = cards_.size(); i-- > 0;) {
    if (cards_[i] < 2)
      throw std::invalid_argument("space: cardinality of variable " + std::to_string(i + 1) +
                                  " must be >= 2");
    strides_[i] = size_;
    size_ *= static_cast<std::size_t>(cards_[i]);
    if (size_ > kMaxSize) throw std::invalid_argument("space: too many configurations");
  }
}

bool ConfigSpace::is_binary() const {
  return std::all_of(cards_.begin(), cards_.end(), [](int q) { return q == 2; });
}

Config ConfigSpace::config(std::size_t index) const {
  Config x(cards_.size());
  for (int i = 0; i < n(); ++i) x[i] = value(index, i);
  return x;
}

std::size_t ConfigSpace::index(const Config& x) const {
  if (x.size() != cards_.size()) throw std::invalid_argument("config: wrong length");
  std::size_t idx = 0;
  for (int i = 0; i < n(); ++i) {
    if (x[i] < 0 || x[i] >= cards_[i])
      throw std::invalid_argument("config: value out of range at variable " + std::to_string(i + 1));
    idx += static_cast<std::size_t>(x[i]) * strides_[i];
  }
  return idx;
}

std::size_t ConfigSpace::local_size(Subset b) const {
  std::size_t s = 1;
  for (int i : b.elements()) s *= static_cast<std::size_t>(cards_[i]);
  return s;
}

std::size_t ConfigSpace::local_index(std::size_t index, Subset b) const {
  std::size_t idx = 0;
  for (int i : b.elements()) idx = idx * cards_[i] + value(index, i);
  return idx;
}

std::size_t ConfigSpace::local_index(const LocalConfig& y, Subset b) const {
  check_local(y, b);
  std::size_t idx = 0;
  auto elems = b.elements();
  for (std::size_t k = 0; k < elems.size(); ++k) idx = idx * cards_[elems[k]] + y[k];
  return idx;
}

LocalConfig ConfigSpace::local_config(std::size_t local, Subset b) const {
  auto elems = b.elements();
  LocalConfig y(elems.size());
  for (std::size_t k = elems.size(); k-- > 0;) {
    y[k] = static_cast<int>(local % cards_[elems[k]]);
    local /= cards_[elems[k]];
  }
  return y;
}

void ConfigSpace::check_local(const LocalConfig& y, Subset b) const {
  if (!b.is_subset_of(Subset::full(n())))
    throw std::invalid_argument("local config: subset outside 1.." + std::to_string(n()));
  auto elems = b.elements();
  if (y.size() != elems.size())
    throw std::invalid_argument("local config: expected " + std::to_string(elems.size()) +
                                " values for " + b.to_string());
  for (std::size_t k = 0; k < elems.size(); ++k)
    if (y[k] < 0 || y[k] >= cards_[elems[k]])
      throw std::invalid_argument("local config: value out of range at variable " +
                                  std::to_string(elems[k] + 1));
}

std::string ConfigSpace::format(std::size_t index) const {
  const bool digits = std::all_of(cards_.begin(), cards_.end(), [](int q) { return q <= 10; });
  std::string s;
  for (int i = 0; i < n(); ++i) {
    if (!digits && i > 0) s += ',';
    s += std::to_string(value(index, i));
  }
  return s;
}

ContingencyTable::ContingencyTable(ConfigSpace s, Counts c) : space(std::move(s)), counts(std::move(c)) {
  if (counts.size() != space.size())
    throw std::invalid_argument("table: expected " + std::to_string(space.size()) + " entries, got " +
                                std::to_string(counts.size()));
  for (std::int64_t v : counts)
    if (v < 0 || v > kMaxEntry) throw std::invalid_argument("table: entries must be in 0..2^32");
}

ContingencyTable ContingencyTable::indicator(const ConfigSpace& s, std::size_t x) {
  auto u = zeros(s);
  u.counts.at(x) = 1;
  return u;
}

std::int64_t ContingencyTable::degree() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

MarginalLayout::MarginalLayout(const SimplicialComplex& complex, const ConfigSpace& space)
    : facets_(complex.facets()), cells_(space.size()) {
  if (complex.n() != space.n())
    throw std::invalid_argument("marginal: complex on " + std::to_string(complex.n()) +
                                " variables, space on " + std::to_string(space.n()));
  offsets_.push_back(0);
  for (Subset f : facets_) offsets_.push_back(offsets_.back() + space.local_size(f));
  rows_ = offsets_.back();
  cell_rows_.resize(cells_ * facets_.size());
  for (std::size_t x = 0; x < cells_; ++x)
    for (std::size_t f = 0; f < facets_.size(); ++f)
      cell_rows_[x * facets_.size() + f] =
          static_cast<std::uint32_t>(offsets_[f] + space.local_index(x, facets_[f]));
}

MarginalVector MarginalLayout::apply(std::span<const std::int64_t> counts) const {
  if (counts.size() != cells_) throw std::invalid_argument("marginal: length mismatch");
  MarginalVector out{Counts(rows_, 0)};
  for (std::size_t x = 0; x < cells_; ++x) {
    if (counts[x] == 0) continue;
    for (std::size_t f = 0; f < facets_.size(); ++f) out.entries[row(x, f)] += counts[x];
  }
  return out;
}

Counts MarginalMatrix::column(std::size_t c) const {
  Counts out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = at(r, c);
  return out;
}

Counts MarginalMatrix::multiply(std::span<const std::int64_t> v) const {
  if (v.size() != cols) throw std::invalid_argument("matrix: length mismatch");
  Counts out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = kernels::dot(row(r), v);
  return out;
}

Counts marginal(const ContingencyTable& u, Subset b) {
  const auto& space = u.space;
  if (!b.is_subset_of(Subset::full(space.n())))
    throw std::invalid_argument("marginal: subset outside 1.." + std::to_string(space.n()));
  Counts out(space.local_size(b), 0);
  for (std::size_t x = 0; x < space.size(); ++x) out[space.local_index(x, b)] += u.counts[x];
  return out;
}

MarginalVector marginal_map(const SimplicialComplex& complex, const ContingencyTable& u) {
  if (complex.n() != u.space.n()) throw std::invalid_argument("marginal_map: dimension mismatch");
  MarginalVector out;
  for (Subset f : complex.facets()) {
    auto block = marginal(u, f);
    out.entries.insert(out.entries.end(), block.begin(), block.end());
  }
  return out;
}

MarginalMatrix marginal_matrix(const SimplicialComplex& complex, const ConfigSpace& space) {
  MarginalLayout layout(complex, space);
  MarginalMatrix a;
  a.rows = layout.rows();
  a.cols = space.size();
  a.data.assign(a.rows * a.cols, 0);
  for (std::size_t f = 0; f < layout.facets(); ++f)
    for (std::size_t k = 0; k < layout.block_size(f); ++k)
      a.row_labels.push_back({layout.facet(f), space.local_config(k, layout.facet(f))});
  for (std::size_t x = 0; x < a.cols; ++x)
    for (std::size_t f = 0; f < layout.facets(); ++f) a.data[layout.row(x, f) * a.cols + x] = 1;
  return a;
}

std::vector<std::size_t> cylinder(const ConfigSpace& space, Subset b, const LocalConfig& y) {
  const std::size_t target = space.local_index(y, b);
  std::vector<std::size_t> out;
  out.reserve(space.size() / space.local_size(b));
  for (std::size_t x = 0; x < space.size(); ++x)
    if (space.local_index(x, b) == target) out.push_back(x);
  return out;
}

bool kernel_check(const MarginalMatrix& a, std::span<const std::int64_t> m) {
  if (m.size() != a.cols)
    throw std::invalid_argument("kernel_check: vector has " + std::to_string(m.size()) +
                                " entries, matrix has " + std::to_string(a.cols) + " columns");
  for (std::size_t r = 0; r < a.rows; ++r)
    if (kernels::dot(a.row(r), m) != 0) return false;
  return true;
}

void write_matrix(std::ostream& out, std::size_t rows, std::size_t cols,
                  std::span<const std::int64_t> data) {
  if (data.size() != rows * cols) throw std::invalid_argument("write_matrix: size mismatch");
  out << rows << ' ' << cols << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) out << ' ';
      out << data[r * cols + c];
    }
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const MarginalMatrix& a) {
  write_matrix(out, a.rows, a.cols, a.data);
}

IntMatrix read_matrix(std::istream& in) {
  IntMatrix m;
  long long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0)
    throw std::invalid_argument("matrix file: bad '<rows> <cols>' header");
  m.rows = static_cast<std::size_t>(rows);
  m.cols = static_cast<std::size_t>(cols);
  m.data.resize(m.rows * m.cols);
  for (auto& v : m.data)
    if (!(in >> v)) throw std::invalid_argument("matrix file: expected " + std::to_string(m.rows * m.cols) + " entries");
  std::string rest;
  if (in >> rest) throw std::invalid_argument("matrix file: trailing data '" + rest + "'");
  return m;
}

void write_table(std::ostream& out, const ContingencyTable& u) {
  out << u.space.n() << '\n';
  for (int i = 0; i < u.space.n(); ++i) out << (i ? " " : "") << u.space.cardinality(i);
  out << '\n';
  for (std::size_t x = 0; x < u.counts.size(); ++x) out << (x ? " " : "") << u.counts[x];
  out << '\n';
}

ContingencyTable read_table(std::istream& in) {
  int n = 0;
  if (!(in >> n) || n < 1) throw std::invalid_argument("table file: bad variable count");
  std::vector<int> cards(n);
  for (int& q : cards)
    if (!(in >> q)) throw std::invalid_argument("table file: missing cardinalities");
  ConfigSpace space(std::move(cards));
  Counts counts(space.size());
  for (auto& v : counts)
    if (!(in >> v)) throw std::invalid_argument("table file: expected " + std::to_string(space.size()) + " entries");
  std::string rest;
  if (in >> rest) throw std::invalid_argument("table file: trailing data '" + rest + "'");
  return ContingencyTable(std::move(space), std::move(counts));
}

ConfigSpace parse_space(const std::string& text) {
  std::vector<int> cards;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int q = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      cards.push_back(q);
    } catch (const std::exception&) {
      throw std::invalid_argument("space: cannot parse '" + item + "'");
    }
  }
  return ConfigSpace(std::move(cards));
}

}  // namespace margo
