#include <doctest.h>

#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "margo/space.hpp"
#include "support.hpp"

using namespace margo;

namespace {

Subset S(std::initializer_list<int> idx, int n) { return Subset::from_one_based(idx, n); }

// Marginal by definition: sum u(x) over x with x_B = y_B, computed from
// explicit configurations.
Counts naive_marginal(const ConfigSpace& space, const Counts& u, Subset b) {
  const auto elems = b.elements();
  Counts out(space.local_size(b), 0);
  for (std::size_t y = 0; y < out.size(); ++y) {
    const auto yl = space.local_config(y, b);
    for (std::size_t x = 0; x < space.size(); ++x) {
      const auto cfg = space.config(x);
      bool match = true;
      for (std::size_t k = 0; k < elems.size(); ++k) match = match && cfg[elems[k]] == yl[k];
      if (match) out[y] += u[x];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("configuration space indexing is lexicographic, first coordinate most significant") {
  ConfigSpace s({2, 3});
  CHECK(s.size() == 6);
  CHECK(s.config(0) == Config{0, 0});
  CHECK(s.config(1) == Config{0, 1});
  CHECK(s.config(3) == Config{1, 0});
  CHECK(s.index({1, 2}) == 5);
  CHECK(s.format(5) == "12");
  CHECK(ConfigSpace({11, 2}).format(21) == "10,1");
  for (std::size_t x = 0; x < s.size(); ++x) CHECK(s.index(s.config(x)) == x);
  CHECK_FALSE(s.is_binary());
  CHECK(ConfigSpace::binary(3).is_binary());
}

TEST_CASE("configuration space validation") {
  CHECK_THROWS_AS(ConfigSpace({}), std::invalid_argument);
  CHECK_THROWS_AS(ConfigSpace({2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(ConfigSpace(std::vector<int>(25, 2)), std::invalid_argument);
  ConfigSpace s({2, 2});
  CHECK_THROWS_AS(s.index({0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(s.index({0}), std::invalid_argument);
  CHECK_THROWS_AS(s.check_local({0, 0}, S({1}, 2)), std::invalid_argument);
  CHECK_THROWS_AS(parse_space("2,x"), std::invalid_argument);
  CHECK(parse_space("2,3,2").cardinalities() == std::vector<int>{2, 3, 2});
}

TEST_CASE("contingency table validation") {
  auto s = ConfigSpace::binary(2);
  CHECK_THROWS_AS(ContingencyTable(s, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(ContingencyTable(s, {1, -1, 0, 0}), std::invalid_argument);
  CHECK(ContingencyTable(s, {1, 2, 0, 4}).degree() == 7);
  CHECK(ContingencyTable::indicator(s, 2).counts == Counts{0, 0, 1, 0});
}

TEST_CASE("marginal") {
  auto s = ConfigSpace::binary(2);
  CHECK(marginal(ContingencyTable::indicator(s, s.index({0, 1})), S({1}, 2)) == Counts{1, 0});
  CHECK(marginal(ContingencyTable(s, {1, 1, 1, 1}), S({2}, 2)) == Counts{2, 2});
  CHECK(marginal(ContingencyTable(s, {1, 0, 0, 1}), S({1}, 2)) == Counts{1, 1});
  CHECK(marginal(ContingencyTable(s, {0, 1, 1, 0}), S({1}, 2)) == Counts{1, 1});
  CHECK(marginal(ContingencyTable(s, {1, 2, 3, 4}), Subset()) == Counts{10});
}

TEST_CASE("marginal_map") {
  auto s = ConfigSpace::binary(2);
  auto ind = SimplicialComplex::from_generators(2, {{1}, {2}});
  CHECK(marginal_map(ind, ContingencyTable::indicator(s, 0)).entries == Counts{1, 0, 1, 0});
  ContingencyTable u(s, {3, 1, 4, 1});
  CHECK(marginal_map(uniform_complex(2, 2), u).entries == u.counts);
  CHECK(marginal_map(ind, ContingencyTable::zeros(s)).entries == Counts{0, 0, 0, 0});
}

TEST_CASE("marginal_matrix") {
  auto a = marginal_matrix(SimplicialComplex::from_generators(2, {{1}, {2}}), ConfigSpace::binary(2));
  CHECK(a.rows == 4);
  CHECK(a.cols == 4);
  CHECK(a.data == Counts{1, 1, 0, 0, 0, 0, 1, 1, 1, 0, 1, 0, 0, 1, 0, 1});
  CHECK(a.row_labels[1].facet == S({1}, 2));
  CHECK(a.row_labels[1].local == LocalConfig{1});
  CHECK(a.row_labels[2].facet == S({2}, 2));

  auto id = marginal_matrix(uniform_complex(1, 1), ConfigSpace::binary(1));
  CHECK(id.data == Counts{1, 0, 0, 1});

  auto d2 = marginal_matrix(uniform_complex(3, 2), ConfigSpace::binary(3));
  CHECK(d2.rows == 12);
  CHECK(d2.cols == 8);
  for (std::size_t x = 0; x < 8; ++x) {
    auto col = d2.column(x);
    CHECK(std::accumulate(col.begin(), col.end(), std::int64_t{0}) == 3);
  }

  std::ostringstream out;
  write_matrix(out, a);
  CHECK(out.str() == "4 4\n1 1 0 0\n0 0 1 1\n1 0 1 0\n0 1 0 1\n");
  std::istringstream in(out.str());
  auto back = read_matrix(in);
  CHECK(back.rows == 4);
  CHECK(back.data == a.data);
}

TEST_CASE("cylinder") {
  auto s = ConfigSpace::binary(3);
  CHECK(cylinder(s, S({1, 2}, 3), {0, 0}) == std::vector<std::size_t>{0, 1});
  CHECK(cylinder(s, Subset(), {}).size() == 8);
  CHECK(cylinder(s, S({3}, 3), {1}) == std::vector<std::size_t>{1, 3, 5, 7});
}

TEST_CASE("kernel_check") {
  auto a = marginal_matrix(SimplicialComplex::from_generators(2, {{1}, {2}}), ConfigSpace::binary(2));
  CHECK(kernel_check(a, Counts{1, -1, -1, 1}));
  for (std::size_t x = 0; x < 4; ++x) {
    Counts e(4, 0);
    e[x] = 1;
    CHECK_FALSE(kernel_check(a, e));
  }
  CHECK(kernel_check(a, Counts(4, 0)));
  CHECK_THROWS_AS(kernel_check(a, Counts(3, 0)), std::invalid_argument);
}

TEST_CASE("table and matrix file formats") {
  ContingencyTable u(ConfigSpace({2, 3}), {0, 1, 2, 3, 4, 5});
  std::ostringstream out;
  write_table(out, u);
  std::istringstream in(out.str());
  auto back = read_table(in);
  CHECK(back.space == u.space);
  CHECK(back.counts == u.counts);
  std::istringstream short_table("2\n2 2\n1 2 3\n");
  CHECK_THROWS_AS(read_table(short_table), std::invalid_argument);
  std::istringstream trailing("1 2\n1 2 3\n");
  CHECK_THROWS_AS(read_matrix(trailing), std::invalid_argument);
}

TEST_CASE("property: marginal map agrees with the matrix and with the definition") {
  testing::Gen gen(21);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = static_cast<int>(gen.uniform(1, 4));
    ConfigSpace space(gen.cardinalities(n, 3));
    auto complex = gen.complex(n);
    ContingencyTable u(space, gen.table(space.size(), 5));
    auto a = marginal_matrix(complex, space);
    auto mv = marginal_map(complex, u);
    CHECK(a.multiply(u.counts) == mv.entries);
    CHECK(MarginalLayout(complex, space).apply(u.counts) == mv);

    std::size_t offset = 0;
    for (Subset f : complex.facets()) {
      auto block = naive_marginal(space, u.counts, f);
      CHECK(Counts(mv.entries.begin() + offset, mv.entries.begin() + offset + block.size()) == block);
      CHECK(std::accumulate(block.begin(), block.end(), std::int64_t{0}) == u.degree());
      offset += block.size();
    }
    for (std::size_t x = 0; x < space.size(); ++x) {
      auto col = a.column(x);
      CHECK(std::accumulate(col.begin(), col.end(), std::int64_t{0}) ==
            static_cast<std::int64_t>(complex.facets().size()));
    }
  }
}

TEST_CASE("property: cylinders for a fixed subset partition the space") {
  testing::Gen gen(22);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = static_cast<int>(gen.uniform(1, 4));
    ConfigSpace space(gen.cardinalities(n, 3));
    Subset b(static_cast<std::uint32_t>(gen.uniform(0, (1 << n) - 1)));
    std::multiset<std::size_t> seen;
    for (std::size_t y = 0; y < space.local_size(b); ++y) {
      auto cyl = cylinder(space, b, space.local_config(y, b));
      CHECK(cyl.size() == space.size() / space.local_size(b));
      seen.insert(cyl.begin(), cyl.end());
    }
    CHECK(seen.size() == space.size());
    CHECK(std::set<std::size_t>(seen.begin(), seen.end()).size() == space.size());
  }
}
