#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

namespace daxkit {
namespace {

using testing::Rng;

const GroupSpec free_ab = GroupSpec::free({"a", "b"});
const NormalizeFlags certified{true, true};

GroupElement w(std::string_view text) { return free_ab.parse_word(text); }

WhitneyPairing identity_pairing(std::size_t n, ArcParity parity) {
  WhitneyPairing m;
  for (std::size_t i = 0; i < n; ++i) {
    m.partner.push_back(i);
    m.parity.push_back(parity);
  }
  return m;
}

MiddleLevel level(std::vector<std::string_view> pos, std::vector<std::string_view> neg) {
  MiddleLevel mid;
  for (auto p : pos) mid.positive.push_back(w(p));
  for (auto q : neg) mid.negative.push_back(w(q));
  return mid;
}

TEST(Compatible, Examples) {
  SheetAssignment s = SheetAssignment::standard(3);
  WhitneyPairing aligned = identity_pairing(3, ArcParity::aligned);
  EXPECT_TRUE(compatible(s, aligned));
  s.flip(pos_id(0));
  EXPECT_FALSE(compatible(s, aligned));
  s.flip(neg_id(0));
  EXPECT_TRUE(compatible(s, aligned));
  EXPECT_THROW(compatible(SheetAssignment::standard(2), aligned), Error);
}

TEST(Compatible, PreservedByFlippingAMatchedPair) {
  Rng rng(61);
  for (int k = 0; k < 500; ++k) {
    std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 6));
    testing::Scenario sc = testing::solvable_scenario(free_ab, rng, n);
    ASSERT_TRUE(compatible(sc.start, sc.ascending));
    std::size_t i = static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(n) - 1));
    SheetAssignment s = sc.start;
    s.flip(pos_id(i));
    EXPECT_FALSE(compatible(s, sc.ascending));
    s.flip(neg_id(sc.ascending.partner[i]));
    EXPECT_TRUE(compatible(s, sc.ascending));
  }
}

TEST(SwapDifference, Examples) {
  MiddleLevel mid = level({"a"}, {"b"});
  SheetAssignment s = SheetAssignment::standard(1);
  EXPECT_TRUE(swap_difference(s, s, mid).empty());
  SheetAssignment t = s;
  t.flip(pos_id(0));
  auto d = swap_difference(s, t, mid);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0], (Swap{pos_id(0), 1, w("a")}));
  t.flip(neg_id(0));
  d = swap_difference(s, t, mid);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[1], (Swap{neg_id(0), -1, w("b")}));
}

TEST(MatchCancellingPairs, Examples) {
  auto one = match_cancelling_pairs(free_ab, {{pos_id(0), 1, w("a")}, {neg_id(0), -1, w("a")}});
  ASSERT_TRUE(one);
  EXPECT_EQ(one->size(), 1u);
  EXPECT_FALSE(match_cancelling_pairs(free_ab, {{pos_id(0), 1, w("a")}}));
  // Trivial swaps are left alone.
  auto trivial = match_cancelling_pairs(free_ab, {{pos_id(0), 1, w("1")}});
  ASSERT_TRUE(trivial);
  EXPECT_TRUE(trivial->empty());
}

TEST(MatchCancellingPairs, RelaxedRuleAcceptsInversePairs) {
  std::vector<Swap> swaps{{pos_id(0), 1, w("a")}, {pos_id(1), 1, w("a^-1")}};
  EXPECT_FALSE(match_cancelling_pairs(free_ab, swaps));
  EXPECT_TRUE(match_cancelling_pairs(free_ab, swaps, MatchRule::relaxed));
}

TEST(MatchCancellingPairs, MatchedSumIsZero) {
  Rng rng(62);
  std::vector<GroupElement> alphabet{w("1"), w("a"), w("b"), w("a^-1")};
  for (int k = 0; k < 2000; ++k) {
    std::vector<Swap> swaps;
    int size = testing::uniform(rng, 0, 8);
    for (int s = 0; s < size; ++s)
      swaps.push_back({pos_id(0), testing::coin(rng) ? 1 : -1, alphabet[testing::uniform(rng, 0, 3)]});
    auto pairs = match_cancelling_pairs(free_ab, swaps);
    EXPECT_EQ(pairs.has_value(), testing::exhaustive_pairing_exists(free_ab, swaps, MatchRule::strict));
    auto relaxed = match_cancelling_pairs(free_ab, swaps, MatchRule::relaxed);
    EXPECT_EQ(relaxed.has_value(), testing::exhaustive_pairing_exists(free_ab, swaps, MatchRule::relaxed));
    if (!pairs) continue;
    RingElement sum;
    for (auto [x, y] : *pairs) {
      sum.add(swaps[x].element, swaps[x].sign);
      sum.add(swaps[y].element, swaps[y].sign);
    }
    EXPECT_TRUE(sum.is_zero());
    RingElement all;
    for (const auto& s : swaps) all.add(s.element, s.sign);
    EXPECT_TRUE(fq_project(free_ab, reduce_to_nonidentity(all)).empty());
  }
}

TEST(SumWhitney, Examples) {
  MiddleLevel mid = level({"a", "b"}, {"b", "a"});
  WhitneyPairing m = identity_pairing(2, ArcParity::aligned);
  WhitneyPairing s = sum_whitney(m, 0, 1, mid);
  EXPECT_EQ(s.partner, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(s.parity, (std::vector<ArcParity>{ArcParity::crossed, ArcParity::crossed}));
  EXPECT_EQ(sum_whitney(s, 0, 1, mid, /*unsafe=*/true), m);
  EXPECT_THROW(sum_whitney(m, 0, 0, mid), Error);
}

TEST(SumWhitney, ElementPrecondition) {
  MiddleLevel mid = level({"a", "b"}, {"a", "b"});
  WhitneyPairing m = identity_pairing(2, ArcParity::aligned);
  EXPECT_THROW(sum_whitney(m, 0, 1, mid), Error);
  EXPECT_NO_THROW(sum_whitney(m, 0, 1, mid, /*unsafe=*/true));
}

TEST(SumWhitney, ChangesExactlyTwoPairsAndIsAnInvolution) {
  Rng rng(63);
  for (int k = 0; k < 500; ++k) {
    std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 2, 6));
    testing::Scenario sc = testing::solvable_scenario(free_ab, rng, n);
    std::size_t i = static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(n) - 1));
    std::size_t j = (i + static_cast<std::size_t>(testing::uniform(rng, 1, static_cast<int>(n) - 1))) % n;
    WhitneyPairing s = sum_whitney(sc.ascending, i, j, sc.mid, true);
    EXPECT_TRUE(s.is_perfect());
    for (std::size_t r = 0; r < n; ++r) {
      bool changed = s.partner[r] != sc.ascending.partner[r] || s.parity[r] != sc.ascending.parity[r];
      EXPECT_EQ(changed, r == i || r == j);
    }
    EXPECT_EQ(sum_whitney(s, i, j, sc.mid, true), sc.ascending);
  }
}

TEST(Normalize, EqualPairingsNeedNoMoves) {
  Rng rng(64);
  for (int k = 0; k < 100; ++k) {
    std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 5));
    testing::Scenario sc = testing::solvable_scenario(free_ab, rng, n);
    auto r = normalize_sheets(free_ab, sc.ascending, sc.ascending, sc.start, sc.mid, certified);
    EXPECT_EQ(r.status, NormalizeStatus::normalized);
    EXPECT_TRUE(r.moves.empty());
    EXPECT_EQ(r.assignment, sc.start);
  }
}

TEST(Normalize, SingleFlip) {
  MiddleLevel mid = level({"a", "b"}, {"a", "b^-1"});
  WhitneyPairing asc = identity_pairing(2, ArcParity::aligned);
  WhitneyPairing desc{{1, 0}, {ArcParity::crossed, ArcParity::crossed}};
  SheetAssignment start = SheetAssignment::standard(2);
  auto r = normalize_sheets(free_ab, asc, desc, start, mid, certified);
  ASSERT_EQ(r.status, NormalizeStatus::normalized);
  ASSERT_EQ(r.moves.size(), 1u);
  EXPECT_EQ(format_move(r.moves[0]), "flip 1");
  EXPECT_TRUE(compatible(r.assignment, desc));
  EXPECT_TRUE(compatible(r.assignment, r.ascending));
  EXPECT_EQ(testing::fewest_moves(mid, asc, desc, start, 2), 1u);
}

TEST(Normalize, SingleSum) {
  MiddleLevel mid = level({"a", "b"}, {"b^2", "a"});
  WhitneyPairing asc = identity_pairing(2, ArcParity::aligned);
  WhitneyPairing desc = identity_pairing(2, ArcParity::crossed);
  SheetAssignment start = SheetAssignment::standard(2);
  start.flip(pos_id(1));
  start.flip(neg_id(1));
  auto r = normalize_sheets(free_ab, asc, desc, start, mid, certified);
  ASSERT_EQ(r.status, NormalizeStatus::normalized);
  ASSERT_EQ(r.moves.size(), 1u);
  EXPECT_EQ(format_move(r.moves[0]), "sum 1 2");
  EXPECT_EQ(r.ascending, sum_whitney(asc, 0, 1, mid));
  EXPECT_TRUE(compatible(r.assignment, desc));
  EXPECT_TRUE(compatible(r.assignment, r.ascending));
  EXPECT_EQ(testing::fewest_moves(mid, asc, desc, start, 2), 1u);
}

TEST(Normalize, MissingFlagsAreInconclusive) {
  MiddleLevel mid = level({"a"}, {"a"});
  WhitneyPairing m = identity_pairing(1, ArcParity::aligned);
  SheetAssignment s = SheetAssignment::standard(1);
  auto r = normalize_sheets(free_ab, m, m, s, mid, {false, true});
  EXPECT_EQ(r.status, NormalizeStatus::inconclusive);
  EXPECT_EQ(r.explanation, "fq-zero");
  r = normalize_sheets(free_ab, m, m, s, mid, {false, false});
  EXPECT_EQ(r.explanation, "fq-zero,pi1-iso");
  r = normalize_sheets(free_ab, m, m, s, mid, {true, false});
  EXPECT_EQ(r.explanation, "pi1-iso");
}

TEST(Normalize, RejectsInvalidInput) {
  MiddleLevel mid = level({"a"}, {"a"});
  WhitneyPairing m = identity_pairing(1, ArcParity::aligned);
  SheetAssignment s = SheetAssignment::standard(1);
  s.flip(pos_id(0));
  EXPECT_THROW(normalize_sheets(free_ab, m, m, s, mid, certified), Error);
  WhitneyPairing broken{{0, 0}, {ArcParity::aligned, ArcParity::aligned}};
  EXPECT_THROW(normalize_sheets(free_ab, broken, broken, SheetAssignment::standard(2), level({"a", "a"}, {"a", "a"}),
                                certified),
               Error);
}

TEST(Normalize, ConstructedScenariosSucceedWithinNMoves) {
  Rng rng(65);
  for (int k = 0; k < 300; ++k) {
    const auto classes = testing::group_classes();
    const GroupSpec& spec = classes[static_cast<std::size_t>(k) % classes.size()].spec;
    std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 6));
    testing::Scenario sc = testing::solvable_scenario(spec, rng, n);
    auto r = normalize_sheets(spec, sc.ascending, sc.descending, sc.start, sc.mid, certified);
    ASSERT_EQ(r.status, NormalizeStatus::normalized) << k;
    EXPECT_LE(r.moves.size(), n);
    EXPECT_TRUE(compatible(r.assignment, sc.descending));
    EXPECT_TRUE(compatible(r.assignment, r.ascending));
    EXPECT_TRUE(r.ascending.is_perfect());
  }
}

TEST(Normalize, UnbalancedScenariosAreObstructed) {
  Rng rng(66);
  for (int k = 0; k < 200; ++k) {
    std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 6));
    testing::Scenario sc = testing::unbalanced_scenario(free_ab, rng, n);
    auto r = normalize_sheets(free_ab, sc.ascending, sc.descending, sc.start, sc.mid, certified);
    EXPECT_EQ(r.status, NormalizeStatus::obstructed);
    EXPECT_FALSE(testing::fewest_moves(sc.mid, sc.ascending, sc.descending, sc.start, n));
  }
}

struct RandomScenario {
  MiddleLevel mid;
  WhitneyPairing ascending;
  WhitneyPairing descending;
  SheetAssignment start;
};

// Arbitrary small scenario over a handful of elements, not built to be solvable.
RandomScenario random_scenario(Rng& rng, const std::vector<GroupElement>& pool, std::size_t n) {
  RandomScenario sc;
  auto pick = [&] { return pool[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(pool.size()) - 1))]; };
  for (std::size_t i = 0; i < n; ++i) {
    sc.mid.positive.push_back(pick());
    sc.mid.negative.push_back(pick());
  }
  sc.start = SheetAssignment::standard(n);
  SheetAssignment other = SheetAssignment::standard(n);
  for (std::size_t i = 0; i < n; ++i) {
    sc.start.positive_swapped[i] = testing::coin(rng);
    sc.start.negative_swapped[i] = testing::coin(rng);
    other.positive_swapped[i] = testing::coin(rng);
    other.negative_swapped[i] = testing::coin(rng);
  }
  sc.ascending = testing::pairing_for(sc.start, testing::random_permutation(rng, n));
  sc.descending = testing::pairing_for(other, testing::random_permutation(rng, n));
  return sc;
}

TEST(Normalize, AgreesWithDirectedSearch) {
  Rng rng(67);
  const GroupSpec spec = GroupSpec::free({"a"});
  std::vector<GroupElement> pool{spec.parse_word("a"), spec.parse_word("a^-1"), spec.parse_word("a^2"), spec.identity()};
  int solved = 0;
  for (int k = 0; k < 1500; ++k) {
    std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
    RandomScenario sc = random_scenario(rng, pool, n);
    auto r = normalize_sheets(spec, sc.ascending, sc.descending, sc.start, sc.mid, certified);
    auto directed = testing::fewest_directed_moves(sc.mid, sc.ascending, sc.descending, sc.start);
    auto any = testing::fewest_moves(sc.mid, sc.ascending, sc.descending, sc.start, r.moves.size());
    ASSERT_EQ(r.status == NormalizeStatus::normalized, directed.has_value()) << k;
    if (!directed) continue;
    ++solved;
    EXPECT_LE(*directed, r.moves.size());
    EXPECT_LE(r.moves.size(), n);
    ASSERT_TRUE(any.has_value());
    EXPECT_LE(*any, r.moves.size());
  }
  EXPECT_GT(solved, 100);
}

// Scenarios in which every descending choice differs from the ascending one
// by cancelling pairs always normalize, and no shorter move sequence exists
// outside the induction either.
TEST(Normalize, BalancedScenariosAlwaysNormalize) {
  Rng rng(68);
  const GroupSpec spec = GroupSpec::free({"a"});
  std::vector<GroupElement> pool{spec.parse_word("a"), spec.parse_word("a^-1"), spec.parse_word("a^2")};
  int balanced = 0;
  for (int k = 0; k < 6000; ++k) {
    std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
    RandomScenario sc = random_scenario(rng, pool, n);
    if (!testing::swaps_balanced_for_all_targets(spec, sc.mid, sc.descending, sc.start)) continue;
    ++balanced;
    auto r = normalize_sheets(spec, sc.ascending, sc.descending, sc.start, sc.mid, certified);
    ASSERT_EQ(r.status, NormalizeStatus::normalized) << k;
    EXPECT_LE(r.moves.size(), n);
    auto any = testing::fewest_moves(sc.mid, sc.ascending, sc.descending, sc.start, 2 * n);
    ASSERT_TRUE(any.has_value());
    EXPECT_LE(*any, r.moves.size());
  }
  EXPECT_GT(balanced, 100);
}

}  // namespace
}  // namespace daxkit
