#include "margo/complex.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace margo {

Subset Subset::from_one_based(std::span<const int> indices, int n) {
  std::uint32_t bits = 0;
  for (int i : indices) {
    if (i < 1 || i > n)
      throw std::invalid_argument("index " + std::to_string(i) + " out of range 1.." +
                                  std::to_string(n));
    bits |= 1u << (i - 1);
  }
  return Subset(bits);
}

std::vector<int> Subset::elements() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

std::vector<int> Subset::one_based() const {
  auto out = elements();
  for (int& i : out) ++i;
  return out;
}

std::string Subset::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int i : one_based()) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

bool cardinality_lex_less(Subset a, Subset b) {
  if (a.size() != b.size()) return a.size() < b.size();
  // Equal cardinality: the first differing element decides, and the set
  // holding the smaller element comes first.
  std::uint32_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  return a.contains(std::countr_zero(diff));
}

std::vector<Subset> subsets_of_size(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  for_each_combination(static_cast<std::size_t>(n), static_cast<std::size_t>(k),
                       [&](std::span<const std::size_t> idx) {
                         std::uint32_t bits = 0;
                         for (auto i : idx) bits |= 1u << i;
                         out.emplace_back(bits);
                         return true;
                       });
  return out;
}

std::vector<Subset> all_subsets(int n) {
  if (n > 24) throw std::invalid_argument("all_subsets: n too large");
  std::vector<Subset> out;
  out.reserve(std::size_t{1} << n);
  for (int k = 0; k <= n; ++k) {
    auto level = subsets_of_size(n, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

SimplicialComplex SimplicialComplex::from_facets(int n, std::vector<Subset> generators) {
  if (n < 1 || n > 30) throw std::invalid_argument("complex: n must be in 1..30");
  const Subset ground = Subset::full(n);
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (!generators[k].is_subset_of(ground)) {
      int bad = std::countr_zero(generators[k].bits() & ~ground.bits()) + 1;
      throw std::invalid_argument("generator " + std::to_string(k + 1) + ": index " +
                                  std::to_string(bad) + " out of range 1.." + std::to_string(n));
    }
  }
  std::sort(generators.begin(), generators.end(), cardinality_lex_less);
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  std::vector<Subset> facets;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = i + 1; j < generators.size() && maximal; ++j)
      if (generators[i].is_subset_of(generators[j])) maximal = false;
    if (maximal) facets.push_back(generators[i]);
  }
  return SimplicialComplex(n, std::move(facets));
}

SimplicialComplex SimplicialComplex::from_generators(int n,
                                                     const std::vector<std::vector<int>>& generators) {
  std::vector<Subset> sets;
  sets.reserve(generators.size());
  for (std::size_t k = 0; k < generators.size(); ++k) {
    try {
      sets.push_back(Subset::from_one_based(generators[k], n));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("generator " + std::to_string(k + 1) + ": " + e.what());
    }
  }
  return from_facets(n, std::move(sets));
}

bool SimplicialComplex::is_face(Subset b) const {
  return std::any_of(facets_.begin(), facets_.end(),
                     [b](Subset f) { return b.is_subset_of(f); });
}

bool SimplicialComplex::is_full() const {
  return facets_.size() == 1 && facets_.front() == Subset::full(n_);
}

int min_nonface_cardinality(const SimplicialComplex& complex) {
  if (complex.is_full()) throw std::domain_error("no non-face exists");
  for (int k = 0; k <= complex.n(); ++k) {
    bool found = false;
    for_each_combination(static_cast<std::size_t>(complex.n()), static_cast<std::size_t>(k),
                         [&](std::span<const std::size_t> idx) {
                           std::uint32_t bits = 0;
                           for (auto i : idx) bits |= 1u << i;
                           found = !complex.is_face(Subset(bits));
                           return !found;
                         });
    if (found) return k;
  }
  throw std::logic_error("min_nonface_cardinality: unreachable");
}

std::vector<Subset> nonfaces(const SimplicialComplex& complex) {
  std::vector<Subset> out;
  for (Subset b : all_subsets(complex.n()))
    if (!complex.is_face(b)) out.push_back(b);
  return out;
}

std::vector<Subset> minimal_nonfaces(const SimplicialComplex& complex) {
  if (complex.is_full()) throw std::domain_error("no non-face exists");
  std::vector<Subset> out;
  for (Subset b : nonfaces(complex)) {
    bool minimal = true;
    for (int i : b.elements())
      if (!complex.is_face(b.without(i))) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(b);
  }
  return out;
}

SimplicialComplex interval_complement(int n, Subset g) {
  if (g.empty()) throw std::invalid_argument("interval_complement: G must be nonempty");
  if (!g.is_subset_of(Subset::full(n)))
    throw std::invalid_argument("interval_complement: G not contained in 1.." + std::to_string(n));
  std::vector<Subset> facets;
  for (int i : g.elements()) facets.push_back(Subset::full(n).without(i));
  return SimplicialComplex::from_facets(n, std::move(facets));
}

SimplicialComplex uniform_complex(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("uniform_complex: k out of range 0..n");
  return SimplicialComplex::from_facets(n, subsets_of_size(n, k));
}

SimplicialComplex read_complex(std::istream& in) {
  std::string line;
  int n = 0;
  bool have_n = false;
  std::vector<std::vector<int>> gens;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<int> values;
    int v;
    while (ls >> v) values.push_back(v);
    if (!ls.eof()) throw std::invalid_argument("complex file: malformed line '" + line + "'");
    if (values.empty()) continue;
    if (!have_n) {
      if (values.size() != 1) throw std::invalid_argument("complex file: first line must be n");
      n = values[0];
      have_n = true;
    } else {
      gens.push_back(std::move(values));
    }
  }
  if (!have_n) throw std::invalid_argument("complex file: missing n");
  return SimplicialComplex::from_generators(n, gens);
}

void write_complex(std::ostream& out, const SimplicialComplex& complex) {
  out << complex.n() << '\n';
  for (Subset f : complex.facets()) {
    bool first = true;
    for (int i : f.one_based()) {
      if (!first) out << ' ';
      out << i;
      first = false;
    }
    out << '\n';
  }
}

}  // namespace margo
