#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "margo/characters.hpp"
#include "margo/collapse.hpp"
#include "margo/fiber.hpp"
#include "support.hpp"

using namespace margo;

namespace {

const Collapsing kTernary2({{0, 1, 1}, {0, 1, 1}});

// The ternary no-three-way degree-4 move on {0,1}^3 inside {0,1,2}^3.
Move ternary_parity_move() {
  ConfigSpace space({3, 3, 3});
  Counts m(space.size(), 0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) m[space.index({a, b, c})] = (a + b + c) % 2 ? -1 : 1;
  return Move(std::move(m));
}

}  // namespace

TEST_CASE("collapse_config") {
  Collapsing id({{0, 1}, {0, 1}});
  CHECK(collapse_config(id, {1, 0}) == Config{1, 0});
  CHECK(collapse_config(kTernary2, {2, 0}) == Config{1, 0});
  CHECK(collapse_config(kTernary2, {0, 0}) == Config{0, 0});
}

TEST_CASE("collapse_table") {
  ConfigSpace t2({3, 3});
  auto u = ContingencyTable::indicator(t2, t2.index({2, 0}));
  CHECK(collapse_table(kTernary2, u).counts == ContingencyTable::indicator(ConfigSpace::binary(2), 2).counts);
  CHECK(collapse_table(kTernary2, ContingencyTable::zeros(t2)).counts == Counts(4, 0));
  Collapsing one({{0, 1, 1}});
  CHECK(collapse_table(one, ContingencyTable(ConfigSpace({3}), {1, 1, 1})).counts == Counts{1, 2});
  CHECK_THROWS_AS(collapse_table(one, ContingencyTable::zeros(ConfigSpace({4}))), std::invalid_argument);
}

TEST_CASE("collapsing validation and file format") {
  CHECK_THROWS_AS(Collapsing({{0, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Collapsing({{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Collapsing({}), std::invalid_argument);
  std::istringstream in("# phi\n1: 0 1 1\n2: 1 0\n");
  auto c = read_collapsing(in);
  CHECK(c.source().cardinalities() == std::vector<int>{3, 2});
  std::ostringstream out;
  write_collapsing(out, c);
  CHECK(out.str() == "1: 0 1 1\n2: 1 0\n");
  std::istringstream skipped("2: 0 1\n");
  CHECK_THROWS_AS(read_collapsing(skipped), std::invalid_argument);
}

TEST_CASE("all_collapsings counts surjections") {
  CHECK(all_collapsings(ConfigSpace({2, 2})).size() == 4);
  CHECK(all_collapsings(ConfigSpace({3, 2})).size() == 12);
  CHECK(all_collapsings(ConfigSpace({3, 3, 3})).size() == 216);
}

TEST_CASE("verify_phi_identity edge cases") {
  ConfigSpace t2({3, 3});
  ContingencyTable u(t2, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(verify_phi_identity(kTernary2, u, Subset(), {}));
  auto image = collapse_table(kTernary2, u);
  for (std::size_t y = 0; y < 4; ++y) CHECK(verify_phi_identity(kTernary2, u, Subset::full(2), image.space.config(y)));
  CHECK(marginal(image, Subset()) == Counts{45});
}

TEST_CASE("collapse_commutes") {
  ConfigSpace t3({3, 3, 3});
  auto d2 = uniform_complex(3, 2);
  auto m = ternary_parity_move();
  ContingencyTable u(t3, m.positive()), v(t3, m.negative());
  CHECK(collapse_commutes(d2, Collapsing({{0, 1, 1}, {1, 0, 0}, {0, 0, 1}}), u, u));
  for (const auto& c : all_collapsings(t3)) CHECK(collapse_commutes(d2, c, u, v));
  ContingencyTable w(t3, Counts(27, 0));
  CHECK_THROWS_WITH_AS(collapse_commutes(d2, all_collapsings(t3)[0], u, w), "inputs not in same fiber",
                       std::invalid_argument);

  auto ind = SimplicialComplex::from_generators(2, {{1}, {2}});
  auto b2 = ConfigSpace::binary(2);
  Collapsing flip({{1, 0}, {0, 1}});
  CHECK(collapse_commutes(ind, flip, ContingencyTable(b2, {1, 0, 0, 1}), ContingencyTable(b2, {0, 1, 1, 0})));
}

TEST_CASE("collapse_move") {
  Move indep({1, -1, -1, 1});
  CHECK(collapse_move(Collapsing({{0, 1}, {0, 1}}), indep) == indep);

  auto m = ternary_parity_move();
  CHECK(collapse_move(Collapsing({{0, 1, 1}, {0, 1, 1}, {0, 0, 1}}), m).is_zero());
  auto kept = collapse_move(Collapsing({{0, 1, 1}, {0, 1, 1}, {0, 1, 1}}), m);
  CHECK(kept == interval_move(3, Subset::full(3), {}));
  CHECK(kept.degree() == m.degree());
}

TEST_CASE("property: collapsing is linear, preserves degree and satisfies the phi identity") {
  testing::Gen gen(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(gen.uniform(1, 3));
    ConfigSpace space(gen.cardinalities(n, 3));
    auto collapsings = all_collapsings(space);
    const auto& c = collapsings[static_cast<std::size_t>(gen.uniform(0, static_cast<std::int64_t>(collapsings.size()) - 1))];
    ContingencyTable u(space, gen.table(space.size(), 4)), v(space, gen.table(space.size(), 4));
    Counts sum(space.size());
    for (std::size_t x = 0; x < sum.size(); ++x) sum[x] = u.counts[x] + v.counts[x];
    auto pu = collapse_table(c, u), pv = collapse_table(c, v);
    auto ps = collapse_table(c, ContingencyTable(space, sum));
    for (std::size_t y = 0; y < ps.counts.size(); ++y) CHECK(ps.counts[y] == pu.counts[y] + pv.counts[y]);
    CHECK(pu.degree() == u.degree());
    for (Subset b : all_subsets(n))
      for (std::size_t z = 0; z < c.target().local_size(b); ++z)
        CHECK(verify_phi_identity(c, u, b, c.target().local_config(z, b)));
  }
}

TEST_CASE("property: collapsed kernel moves stay in the binary kernel with no larger support") {
  ConfigSpace t3({3, 3, 3});
  auto d2 = uniform_complex(3, 2);
  auto bin = marginal_matrix(d2, ConfigSpace::binary(3));
  auto witness = min_binomial_degree(d2, t3, 4);
  REQUIRE(witness);
  const auto ms = move_supports(witness->move);
  for (const auto& c : all_collapsings(t3)) {
    auto image = collapse_move(c, witness->move);
    CHECK(kernel_check(bin, image.entries()));
    const auto is = move_supports(image);
    CHECK(is.positive.size() <= ms.positive.size());
    if (!image.is_zero()) CHECK(is.positive.size() >= 4);
  }
}
