#include "margo/collapse.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace margo {
namespace {

std::vector<int> cards_of(const std::vector<std::vector<int>>& maps) {
  std::vector<int> cards;
  for (const auto& m : maps) cards.push_back(static_cast<int>(m.size()));
  return cards;
}

void validate(const std::vector<std::vector<int>>& maps) {
  if (maps.empty()) throw std::invalid_argument("collapsing: no variables");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    bool zero = false, one = false;
    for (int a : maps[i]) {
      if (a != 0 && a != 1)
        throw std::invalid_argument("collapsing: variable " + std::to_string(i + 1) + " maps outside {0,1}");
      (a ? one : zero) = true;
    }
    if (!zero || !one)
      throw std::invalid_argument("collapsing: map of variable " + std::to_string(i + 1) + " is not surjective");
  }
}

const std::vector<std::vector<int>>& validated(const std::vector<std::vector<int>>& maps) {
  validate(maps);
  return maps;
}

void require_source(const Collapsing& c, const ConfigSpace& space) {
  if (!(space == c.source())) throw std::invalid_argument("collapsing: space mismatch");
}

}  // namespace

Collapsing::Collapsing(std::vector<std::vector<int>> maps)
    : maps_(std::move(maps)),
      source_(cards_of(validated(maps_))),
      target_(ConfigSpace::binary(static_cast<int>(maps_.size()))) {
  image_.resize(source_.size());
  for (std::size_t x = 0; x < source_.size(); ++x) {
    std::size_t z = 0;
    for (int i = 0; i < n(); ++i) z = 2 * z + static_cast<std::size_t>(apply(i, source_.value(x, i)));
    image_[x] = z;
  }
}

Config collapse_config(const Collapsing& c, const Config& x) {
  c.source().index(x);  // range check
  Config z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = c.apply(static_cast<int>(i), x[i]);
  return z;
}

ContingencyTable collapse_table(const Collapsing& c, const ContingencyTable& u) {
  require_source(c, u.space);
  auto out = ContingencyTable::zeros(c.target());
  for (std::size_t x = 0; x < u.counts.size(); ++x) out.counts[c.image(x)] += u.counts[x];
  return out;
}

bool verify_phi_identity(const Collapsing& c, const ContingencyTable& u, Subset b, const LocalConfig& z) {
  require_source(c, u.space);
  const auto& src = c.source();
  const auto& bin = c.target();
  bin.check_local(z, b);
  const auto elems = b.elements();

  // Left: every source local config x_B with phi_B(x_B) = z_B, then its
  // cylinder in the source space.
  std::int64_t left = 0;
  for (std::size_t k = 0; k < src.local_size(b); ++k) {
    auto xb = src.local_config(k, b);
    bool hit = true;
    for (std::size_t j = 0; j < elems.size() && hit; ++j) hit = c.apply(elems[j], xb[j]) == z[j];
    if (!hit) continue;
    for (std::size_t w : cylinder(src, b, xb)) left += u.counts[w];
  }

  // Right: every binary y in {X_B = z_B}, then its full preimage phi^{-1}(y).
  std::int64_t right = 0;
  for (std::size_t y : cylinder(bin, b, z)) {
    const Config target = bin.config(y);
    Config w(src.n(), 0);
    // Odometer over the product of per-variable preimages.
    std::vector<std::vector<int>> pre(src.n());
    for (int i = 0; i < src.n(); ++i)
      for (int a = 0; a < src.cardinality(i); ++a)
        if (c.apply(i, a) == target[i]) pre[i].push_back(a);
    std::vector<std::size_t> pos(src.n(), 0);
    while (true) {
      for (int i = 0; i < src.n(); ++i) w[i] = pre[i][pos[i]];
      right += u.counts[src.index(w)];
      int i = src.n() - 1;
      while (i >= 0 && ++pos[i] == pre[i].size()) pos[i--] = 0;
      if (i < 0) break;
    }
  }
  return left == right;
}

bool collapse_commutes(const SimplicialComplex& complex, const Collapsing& c,
                       const ContingencyTable& u, const ContingencyTable& v) {
  require_source(c, u.space);
  require_source(c, v.space);
  if (!(marginal_map(complex, u) == marginal_map(complex, v)))
    throw std::invalid_argument("inputs not in same fiber");
  return marginal_map(complex, collapse_table(c, u)) == marginal_map(complex, collapse_table(c, v));
}

Move collapse_move(const Collapsing& c, const Move& m) {
  if (m.size() != c.source().size()) throw std::invalid_argument("collapse_move: length mismatch");
  Counts out(c.target().size(), 0);
  const auto& e = m.entries();
  // Phi is linear, so Phi(m+) - Phi(m-) is the pushforward of m itself.
  for (std::size_t x = 0; x < e.size(); ++x) out[c.image(x)] += e[x];
  return Move(std::move(out));
}

std::vector<Collapsing> all_collapsings(const ConfigSpace& space) {
  // Per variable: all surjective maps, as bit patterns 1..2^q-2 in
  // lexicographic order of the lookup table.
  std::vector<std::vector<std::vector<int>>> options(space.n());
  for (int i = 0; i < space.n(); ++i) {
    const int q = space.cardinality(i);
    if (q > 16) throw std::invalid_argument("all_collapsings: alphabet too large");
    for (unsigned pattern = 1; pattern + 1 < (1u << q); ++pattern) {
      std::vector<int> table(q);
      for (int a = 0; a < q; ++a) table[a] = (pattern >> (q - 1 - a)) & 1u;
      options[i].push_back(std::move(table));
    }
  }
  std::vector<Collapsing> out;
  std::vector<std::size_t> pos(space.n(), 0);
  while (true) {
    std::vector<std::vector<int>> maps(space.n());
    for (int i = 0; i < space.n(); ++i) maps[i] = options[i][pos[i]];
    out.emplace_back(std::move(maps));
    int i = space.n() - 1;
    while (i >= 0 && ++pos[i] == options[i].size()) pos[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

Collapsing read_collapsing(std::istream& in) {
  std::vector<std::vector<int>> maps;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("collapsing file: missing ':' in '" + line + "'");
    int var = 0;
    try {
      var = std::stoi(line.substr(0, colon));
    } catch (const std::exception&) {
      throw std::invalid_argument("collapsing file: bad variable index in '" + line + "'");
    }
    if (var != static_cast<int>(maps.size()) + 1)
      throw std::invalid_argument("collapsing file: expected variable " + std::to_string(maps.size() + 1));
    std::istringstream ls(line.substr(colon + 1));
    std::vector<int> table;
    int a;
    while (ls >> a) table.push_back(a);
    if (!ls.eof()) throw std::invalid_argument("collapsing file: malformed line '" + line + "'");
    maps.push_back(std::move(table));
  }
  return Collapsing(std::move(maps));
}

void write_collapsing(std::ostream& out, const Collapsing& c) {
  for (int i = 0; i < c.n(); ++i) {
    out << (i + 1) << ':';
    for (int a : c.maps()[i]) out << ' ' << a;
    out << '\n';
  }
}

}  // namespace margo
