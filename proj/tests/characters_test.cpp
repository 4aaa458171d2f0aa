#include <doctest.h>

#include <stdexcept>
#include "margo/characters.hpp"
#include "margo/kernels.hpp"
#include "support.hpp"

using namespace margo;

namespace {

Subset S(std::initializer_list<int> idx, int n) { return Subset::from_one_based(idx, n); }

// (-1)^(number of ones of x inside B), evaluated from the configuration.
std::int64_t parity_sign(const ConfigSpace& space, std::size_t x, Subset b) {
  int ones = 0;
  for (int i : b.elements()) ones += space.value(x, i);
  return ones % 2 ? -1 : 1;
}

std::int64_t inner(const Counts& a, const Counts& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("character vectors") {
  CHECK(character(Subset(), 2).values == Counts{1, 1, 1, 1});
  CHECK(character(S({1, 2}, 2), 2).values == Counts{1, -1, -1, 1});
  CHECK(character(S({1}, 2), 2).values == Counts{1, 1, -1, -1});
  CHECK_THROWS_AS(character(Subset(), ConfigSpace({2, 3})), std::domain_error);
  CHECK_THROWS_AS(character(S({3}, 3), 2), std::invalid_argument);
}

TEST_CASE("kernel basis") {
  auto ind = kernel_basis(SimplicialComplex::from_generators(2, {{1}, {2}}));
  REQUIRE(ind.size() == 1);
  CHECK(ind[0].set == S({1, 2}, 2));
  CHECK(kernel_basis(uniform_complex(3, 3)).empty());
  auto d2 = kernel_basis(uniform_complex(3, 2));
  REQUIRE(d2.size() == 1);
  CHECK(d2[0].set == Subset::full(3));
}

TEST_CASE("interval moves") {
  CHECK(interval_move(2, S({1, 2}, 2), {}).entries() == Counts{1, -1, -1, 1});
  auto parity = interval_move(3, Subset::full(3), {});
  CHECK(parity.entries() == Counts{1, -1, -1, 1, -1, 1, 1, -1});
  CHECK(parity.degree() == 4);
  CHECK(interval_move(2, S({1}, 2), {0}).entries() == Counts{1, 0, -1, 0});
  CHECK(interval_moves(3, S({2, 3}, 3)).size() == 2);
  CHECK_THROWS_AS(interval_move(2, Subset(), {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(interval_move(2, S({1}, 2), {}), std::invalid_argument);
}

TEST_CASE("interval move sums") {
  CHECK(interval_move_sum(2, S({1}, 2), {0}) == Counts{2, 0, -2, 0});
  CHECK(interval_move_sum(3, Subset::full(3), {}) == interval_move(3, Subset::full(3), {}).entries());
  CHECK(interval_move_sum(3, S({3}, 3), {0, 0}) == Counts{4, -4, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("character cylinder sums") {
  CHECK(character_cylinder_sum(3, S({2}, 3), Subset::full(3), {0, 1, 1}) == -1);
  CHECK(character_cylinder_sum(3, S({1}, 3), S({2}, 3), {0}) == 0);
  CHECK(character_cylinder_sum(3, S({1}, 3), S({2}, 3), {1}) == 0);
  CHECK(character_cylinder_sum(3, S({1}, 3), S({1, 2}, 3), {1, 0}) == -2);
}

TEST_CASE("move supports") {
  auto s = move_supports(Move({1, -1, -1, 1}));
  CHECK(s.positive == std::vector<std::size_t>{0, 3});
  CHECK(s.negative == std::vector<std::size_t>{1, 2});
  CHECK(s.degree == 2);
  auto z = move_supports(Move(Counts(4, 0)));
  CHECK(z.positive.empty());
  CHECK(z.negative.empty());
  CHECK(z.degree == 0);
  auto p = move_supports(interval_move(3, Subset::full(3), {}));
  CHECK(p.positive == std::vector<std::size_t>{0, 3, 5, 6});
  CHECK(p.negative == std::vector<std::size_t>{1, 2, 4, 7});
  Move m({2, -1, 0, -1});
  CHECK(m.positive() == Counts{2, 0, 0, 0});
  CHECK(m.negative() == Counts{0, 1, 0, 1});
  CHECK(m.degree() == 2);
}

TEST_CASE("property: characters agree with the parity definition and are orthogonal") {
  for (int n = 1; n <= 5; ++n) {
    auto space = ConfigSpace::binary(n);
    auto subsets = all_subsets(n);
    std::vector<Counts> e;
    for (Subset b : subsets) {
      e.push_back(character(b, n).values);
      for (std::size_t x = 0; x < space.size(); ++x) CHECK(e.back()[x] == parity_sign(space, x, b));
    }
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = 0; j < e.size(); ++j)
        CHECK(inner(e[i], e[j]) == (i == j ? (std::int64_t{1} << n) : 0));
  }
}

TEST_CASE("property: e_B is in the kernel exactly when B is a non-face") {
  testing::Gen gen(31);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = static_cast<int>(gen.uniform(1, 4));
    auto complex = gen.complex(n);
    auto a = marginal_matrix(complex, ConfigSpace::binary(n));
    for (Subset b : all_subsets(n)) CHECK(kernel_check(a, character(b, n).values) == !complex.is_face(b));
    CHECK(kernel_basis(complex).size() == nonfaces(complex).size());
  }
}

TEST_CASE("property: interval moves are the normalized lemma sums and lie in the kernel") {
  for (int n = 1; n <= 4; ++n) {
    auto space = ConfigSpace::binary(n);
    for (Subset g : all_subsets(n)) {
      if (g.empty()) continue;
      auto a = marginal_matrix(interval_complement(n, g), space);
      const Subset rest = complement(g, n);
      for (std::size_t y = 0; y < space.local_size(rest); ++y) {
        const auto yl = space.local_config(y, rest);
        auto m = interval_move(n, g, yl);
        auto sum = interval_move_sum(n, g, yl);
        CHECK(kernel_check(a, m.entries()));
        for (std::size_t x = 0; x < space.size(); ++x) {
          const bool on_cylinder = space.local_index(x, rest) == y;
          const std::int64_t expected = on_cylinder ? parity_sign(space, x, g) : 0;
          CHECK(m.entries()[x] == expected);
          CHECK(sum[x] == (std::int64_t{1} << (n - g.size())) * expected);
        }
      }
    }
  }
}

TEST_CASE("property: support bound for random kernel combinations") {
  testing::Gen gen(32);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(gen.uniform(2, 4));
    auto complex = gen.complex(n);
    if (complex.is_full()) continue;
    const int g = min_nonface_cardinality(complex);
    const std::size_t bound = g >= 1 ? std::size_t{1} << (g - 1) : 1;
    auto basis = kernel_basis(complex);
    for (int s = 0; s < 200; ++s) {
      Counts m(std::size_t{1} << n, 0);
      for (const auto& e : basis) kernels::axpy(gen.uniform(-3, 3), e.values, m);
      if (kernels::all_zero(m)) continue;
      auto sc = kernels::sign_counts(m);
      CHECK(sc.positive >= bound);
      CHECK(sc.negative >= bound);
    }
  }
}
