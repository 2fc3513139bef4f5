#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "rcrt/grouping.hpp"
#include "rcrt/robust_single.hpp"

using namespace rcrt;

namespace {

Rational quarters(long n) { return Rational(Integer(n), Integer(4)); }

const ModuliSet kEight{210, 143, 77, 128, 81, 125, 169};

std::vector<long> values(const CandidateSet& c, const ModuliSet& ms) {
  std::vector<long> out;
  for (auto i : c.members) out.push_back(ms[i].get_si());
  return out;
}

std::vector<std::size_t> anchors(const std::vector<CandidateSet>& cover) {
  std::vector<std::size_t> out;
  for (const auto& c : cover) out.push_back(c.anchor);
  return out;
}

}  // namespace

TEST(Candidates, SevenModuli) {
  const auto cands = candidate_sets(kEight);
  ASSERT_EQ(cands.size(), 7U);
  EXPECT_EQ(values(cands[0], kEight), (std::vector<long>{210, 77, 128, 81, 125}));
  EXPECT_EQ(values(cands[1], kEight), (std::vector<long>{143, 77, 169}));
  EXPECT_EQ(values(cands[2], kEight), (std::vector<long>{77, 210, 143}));
  EXPECT_EQ(values(cands[3], kEight), (std::vector<long>{128, 210}));
  EXPECT_EQ(values(cands[4], kEight), (std::vector<long>{81, 210}));
  EXPECT_EQ(values(cands[5], kEight), (std::vector<long>{125, 210}));
  EXPECT_EQ(values(cands[6], kEight), (std::vector<long>{169, 143}));
  for (std::size_t i = 0; i < cands.size(); ++i) EXPECT_EQ(cands[i].anchor, i);
}

TEST(Candidates, CoprimeCofactorsGiveSingletons) {
  for (const auto& c : candidate_sets(ModuliSet{25, 35, 80, 95})) {
    EXPECT_EQ(c.members.size(), 1U);
  }
}

TEST(Candidates, GroupBoundBeatsTheta) {
  std::mt19937_64 gen(61);
  for (int t = 0; t < 300; ++t) {
    std::vector<long> s;
    while (s.size() < 5) {
      const long m = 2 + static_cast<long>(gen() % 300);
      if (std::find(s.begin(), s.end(), m) == s.end()) s.push_back(m);
    }
    const ModuliSet ms = prune_redundant(oracle::moduli(s));
    if (ms.size() < 3) continue;
    const Rational theta = theta_bound(ms);
    for (const auto& c : candidate_sets(ms)) {
      ASSERT_EQ(c.members.front(), c.anchor);
      ASSERT_TRUE(std::is_sorted(c.members.begin() + 1, c.members.end()));
      for (std::size_t a = 1; a < c.members.size(); ++a) {
        ASSERT_GT(Rational(gcd(ms[c.anchor], ms[c.members[a]]), 4), theta);
      }
    }
  }
}

TEST(PruneSubsets, Basics) {
  const CandidateSet ab{0, {0, 1}};
  const CandidateSet abc{2, {2, 0, 1}};
  EXPECT_EQ(prune_subset_sets({ab, abc}), (std::vector<CandidateSet>{abc}));
  const CandidateSet cd{2, {2, 3}};
  EXPECT_EQ(prune_subset_sets({ab, cd}), (std::vector<CandidateSet>{ab, cd}));
  const CandidateSet ba{1, {1, 0}};
  EXPECT_EQ(prune_subset_sets({ab, ba}), (std::vector<CandidateSet>{ab}));
  EXPECT_TRUE(prune_subset_sets({}).empty());
}

TEST(PruneSubsets, SevenModuliKeepsThreeMaximalSets) {
  // The sets anchored at 128, 81, 125 sit inside the one anchored at 210 and
  // the one anchored at 169 inside the one anchored at 143.
  const auto kept = prune_subset_sets(candidate_sets(kEight));
  ASSERT_EQ(kept.size(), 3U);
  EXPECT_EQ(kept[0].anchor, 0U);
  EXPECT_EQ(kept[1].anchor, 1U);
  EXPECT_EQ(kept[2].anchor, 2U);
}

TEST(Covers, SevenModuliHasFourIrreducibleCovers) {
  const auto covers = minimal_covers(candidate_sets(kEight), kEight);
  ASSERT_EQ(covers.size(), 4U);
  EXPECT_EQ(anchors(covers[0]), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(anchors(covers[1]), (std::vector<std::size_t>{0, 6}));
  EXPECT_EQ(anchors(covers[2]), (std::vector<std::size_t>{1, 3, 4, 5}));
  EXPECT_EQ(anchors(covers[3]), (std::vector<std::size_t>{2, 3, 4, 5, 6}));
}

TEST(Covers, Trivial) {
  const ModuliSet ms{6, 10, 15};
  const CandidateSet all{0, {0, 1, 2}};
  EXPECT_EQ(minimal_covers({all}, ms).size(), 1U);
  const CandidateSet part{0, {0, 1}};
  EXPECT_TRUE(minimal_covers({part}, ms).empty());
}

TEST(Covers, IrreducibleAndCompleteAgainstBruteForce) {
  std::mt19937_64 gen(67);
  for (int t = 0; t < 200; ++t) {
    const std::size_t count = 3 + gen() % 4;
    std::vector<Integer> vals;
    for (std::size_t i = 0; i < count; ++i) vals.emplace_back(static_cast<long>(i + 2));
    const ModuliSet ms(vals);
    std::vector<CandidateSet> cands;
    for (std::size_t c = 0; c < count; ++c) {
      CandidateSet cs{c, {c}};
      for (std::size_t j = 0; j < count; ++j) {
        if (j != c && gen() % 3 == 0) cs.members.push_back(j);
      }
      cands.push_back(cs);
    }
    const auto covers = minimal_covers(cands, ms);
    // Brute force: count irreducible covers by a different route.
    std::size_t expected = 0;
    for (unsigned sel = 1; sel < (1U << count); ++sel) {
      auto covered = [&](unsigned s) {
        std::vector<bool> hit(count, false);
        for (std::size_t c = 0; c < count; ++c) {
          if (s >> c & 1U) {
            for (auto i : cands[c].members) hit[i] = true;
          }
        }
        return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
      };
      if (!covered(sel)) continue;
      bool minimal = true;
      for (std::size_t c = 0; c < count; ++c) {
        if ((sel >> c & 1U) && covered(sel & ~(1U << c))) minimal = false;
      }
      if (minimal) ++expected;
    }
    ASSERT_EQ(covers.size(), expected);
    for (std::size_t a = 1; a < covers.size(); ++a) {
      ASSERT_LE(covers[a - 1].size(), covers[a].size());
    }
  }
}

TEST(Covers, CapEnforced) {
  std::vector<Integer> vals;
  std::vector<CandidateSet> cands;
  for (std::size_t i = 0; i < 17; ++i) {
    vals.emplace_back(static_cast<long>(i + 2));
    cands.push_back({i, {i}});
  }
  EXPECT_THROW(minimal_covers(cands, ModuliSet(vals)), CapExceeded);
  EXPECT_NO_THROW(minimal_covers(cands, ModuliSet(vals), 17));
}

TEST(Propose, SevenModuliSucceeds) {
  const GroupingProposal p = propose_grouping(kEight);
  ASSERT_EQ(p.verdict, Verdict::success);
  EXPECT_EQ(p.theta, quarters(1));
  EXPECT_EQ(p.groups,
            (std::vector<std::vector<std::size_t>>{{0, 2, 3, 4, 5}, {1, 2, 6}}));
  EXPECT_EQ(p.bounds.per_group, (std::vector<Rational>{quarters(2), quarters(11)}));
  // Direct evaluation over the two group lcms: their gcd is 77.
  EXPECT_EQ(p.bounds.cross, quarters(77));
  EXPECT_NE(p.bounds.cross, quarters(7));
  for (const auto& e : p.bounds.per_leaf_effective) EXPECT_GT(e, p.theta);
}

TEST(Propose, CoprimeCofactorFamilyFails) {
  const GroupingProposal p = propose_grouping(ModuliSet{25, 35, 80, 95});
  EXPECT_EQ(p.verdict, Verdict::failure);
  EXPECT_TRUE(p.groups.empty());
  EXPECT_THROW(p.tree(), std::logic_error);

  GroupingOptions opts;
  opts.share_reference = true;
  EXPECT_EQ(propose_grouping(ModuliSet{25, 35, 80, 95}, opts).verdict, Verdict::failure);
}

TEST(Propose, CoprimeCofactorFamiliesAlwaysFail) {
  std::mt19937_64 gen(71);
  const std::vector<long> primes{2, 3, 5, 7, 11, 13, 17, 19, 23};
  for (int t = 0; t < 100; ++t) {
    const long m = 1 + static_cast<long>(gen() % 30);
    std::vector<long> pool = primes;
    std::shuffle(pool.begin(), pool.end(), gen);
    std::vector<long> s;
    for (int i = 0; i < 4; ++i) s.push_back(m * pool[static_cast<std::size_t>(i)]);
    EXPECT_EQ(propose_grouping(oracle::moduli(s)).verdict, Verdict::failure);
  }
}

TEST(Propose, ThreeModuli) {
  const GroupingProposal p = propose_grouping(ModuliSet{560, 480, 210});
  ASSERT_EQ(p.verdict, Verdict::success);
  EXPECT_EQ(p.groups, (std::vector<std::vector<std::size_t>>{{0, 1}, {2}}));
  EXPECT_EQ(p.bounds.per_leaf_effective, (std::vector<Rational>{quarters(80), quarters(210)}));
  EXPECT_EQ(p.theta, quarters(70));
  EXPECT_EQ(p.tree().to_json(), "[[0,1],[2]]");
}

TEST(Propose, SuccessInvariantsOnRandomSets) {
  std::mt19937_64 gen(73);
  int successes = 0;
  for (int t = 0; t < 400; ++t) {
    std::vector<long> s;
    const std::size_t count = 3 + gen() % 4;
    while (s.size() < count) {
      const long m = 6 + static_cast<long>(gen() % 600);
      if (std::find(s.begin(), s.end(), m) == s.end()) s.push_back(m);
    }
    const ModuliSet ms = oracle::moduli(s);
    const GroupingProposal p = propose_grouping(ms);
    if (p.verdict != Verdict::success) continue;
    ++successes;
    // Coverage of the kept moduli.
    std::vector<bool> hit(ms.size(), false);
    for (const auto& g : p.groups) {
      for (auto i : g) hit[i] = true;
    }
    for (auto i : p.kept) ASSERT_TRUE(hit[i]);
    // Irreducible: dropping any group loses a modulus.
    for (std::size_t drop = 0; drop < p.groups.size(); ++drop) {
      std::vector<bool> rest(ms.size(), false);
      for (std::size_t g = 0; g < p.groups.size(); ++g) {
        if (g == drop) continue;
        for (auto i : p.groups[g]) rest[i] = true;
      }
      bool lost = false;
      for (auto i : p.kept) lost = lost || !rest[i];
      ASSERT_TRUE(lost);
    }
    for (const auto& g : p.bounds.per_group) ASSERT_GT(g, p.theta);
    ASSERT_GT(*p.bounds.cross, p.theta);
    // The plan is valid for the pruned set and reproduces the bounds.
    const ModuliSet pruned = prune_redundant(ms);
    ASSERT_EQ(stage_bounds(p.tree(), pruned).per_leaf_effective, p.bounds.per_leaf_effective);
  }
  EXPECT_GT(successes, 10);
}

TEST(Propose, Deterministic) {
  const GroupingProposal a = propose_grouping(kEight);
  const GroupingProposal b = propose_grouping(kEight);
  EXPECT_EQ(a.groups, b.groups);
  EXPECT_EQ(a.bounds.per_leaf_effective, b.bounds.per_leaf_effective);
}

TEST(Propose, RedundantModuliDropped) {
  const GroupingProposal p = propose_grouping(ModuliSet{560, 480, 210, 70});
  EXPECT_EQ(p.removed, (std::vector<std::size_t>{3}));
  EXPECT_EQ(p.kept, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(p.verdict, Verdict::success);
  EXPECT_THROW(propose_grouping(ModuliSet{3, 5}), std::invalid_argument);
}
