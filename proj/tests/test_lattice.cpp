#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

namespace daxkit {
namespace {

using testing::Rng;

const GroupSpec free_ab = GroupSpec::free({"a", "b"});

ReducedElement red(std::string_view text) { return reduce_to_nonidentity(parse_ring_expr(free_ab, text)); }

RingElement combination(const std::vector<ReducedElement>& gens, const std::vector<BigInt>& c) {
  RingElement out;
  for (std::size_t k = 0; k < gens.size(); ++k) out += gens[k].ring().scaled(c[k]);
  return out;
}

TEST(LatticeContains, Examples) {
  std::vector<ReducedElement> gens{red("a + a^-1")};
  auto w = lattice_contains(red("a + a^-1"), gens);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, std::vector<BigInt>{1});

  EXPECT_FALSE(lattice_contains(red("a"), std::vector<ReducedElement>{red("2*a")}));
  EXPECT_FALSE(testing::brute_force_contains(red("a"), {red("2*a")}));

  EXPECT_TRUE(lattice_contains(ReducedElement{}, std::vector<ReducedElement>{}));
  EXPECT_FALSE(lattice_contains(red("a"), std::vector<ReducedElement>{}));
}

TEST(LatticeContains, NeedsIntegerNotRationalSolution) {
  // 2a + 2b is in the span of {a + b} over Z; a + b is not in the span of {2a + 2b}.
  EXPECT_TRUE(lattice_contains(red("2*a + 2*b"), std::vector<ReducedElement>{red("a + b")}));
  EXPECT_FALSE(lattice_contains(red("a + b"), std::vector<ReducedElement>{red("2*a + 2*b")}));
  // gcd(6, 10, 15) = 1.
  std::vector<ReducedElement> gens{red("6*a"), red("10*a"), red("15*a")};
  auto w = lattice_contains(red("a"), gens);
  ASSERT_TRUE(w);
  EXPECT_EQ(combination(gens, *w), red("a").ring());
}

TEST(LatticeContains, DependentGenerators) {
  std::vector<ReducedElement> gens{red("a + b"), red("2*a + 2*b"), red("a - b")};
  EXPECT_TRUE(lattice_contains(red("2*a"), gens));
  EXPECT_FALSE(lattice_contains(red("a"), gens));
  EXPECT_FALSE(lattice_contains(red("a*b"), gens));
}

TEST(LatticeContains, LargeCoefficientsStayExact) {
  std::vector<ReducedElement> gens{red("1000000000000000000000*a + b"), red("999999999999999999999*a + b")};
  auto w = lattice_contains(red("a"), gens);
  ASSERT_TRUE(w);
  EXPECT_EQ(combination(gens, *w), red("a").ring());
}

TEST(LatticeContains, WitnessReproducesTargetOnRandomInstances) {
  Rng rng(31);
  for (int k = 0; k < 2000; ++k) {
    std::vector<GroupElement> alphabet;
    for (int s = 0; s < 4; ++s) alphabet.push_back(testing::random_element(free_ab, rng, 2));
    auto random_reduced = [&] {
      RingElement x;
      for (const auto& g : alphabet) x.add(g, testing::uniform(rng, -5, 5));
      return reduce_to_nonidentity(x);
    };
    std::vector<ReducedElement> gens;
    int count = testing::uniform(rng, 0, 3);
    for (int s = 0; s < count; ++s) gens.push_back(random_reduced());
    ReducedElement target = random_reduced();
    auto w = lattice_contains(target, gens);
    bool brute = testing::brute_force_contains(target, gens, 6);
    if (w) {
      EXPECT_EQ(combination(gens, *w), target.ring());
    }
    if (brute) {
      EXPECT_TRUE(w.has_value());
    }
  }
}

TEST(QuotientEqual, Examples) {
  std::vector<ReducedElement> gens{red("a + a^-1")};
  EXPECT_TRUE(quotient_equal(red("b"), red("b"), gens));
  EXPECT_TRUE(quotient_equal(red("a + a^-1"), ReducedElement{}, gens));
  EXPECT_FALSE(quotient_equal(red("a"), red("a^-1"), std::vector<ReducedElement>{}));
}

TEST(QuotientEqual, IsAnEquivalenceRelation) {
  Rng rng(32);
  std::vector<ReducedElement> gens{red("a + a^-1"), red("2*b - a")};
  // Small coset representatives so that related triples actually occur.
  auto sample = [&] {
    RingElement x = gens[0].ring().scaled(testing::uniform(rng, -1, 1)) + gens[1].ring().scaled(testing::uniform(rng, -1, 1));
    if (testing::coin(rng)) x.add(free_ab.parse_word("b"), 1);
    return reduce_to_nonidentity(x);
  };
  int related = 0;
  for (int k = 0; k < 500; ++k) {
    ReducedElement x = sample(), y = sample(), z = sample();
    EXPECT_TRUE(quotient_equal(x, x, gens));
    EXPECT_EQ(quotient_equal(x, y, gens), quotient_equal(y, x, gens));
    if (quotient_equal(x, y, gens) && quotient_equal(y, z, gens)) {
      EXPECT_TRUE(quotient_equal(x, z, gens));
      ++related;
    }
  }
  EXPECT_GT(related, 50);
}

}  // namespace
}  // namespace daxkit
