#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ecic/ecic.hpp"
#include "oracles.hpp"

using namespace ecic;

TEST(SphereVolume, Examples) {
  EXPECT_EQ(sphere_volume(2, 7, 0), 1);
  EXPECT_EQ(sphere_volume(2, 4, 1), 5);
  EXPECT_EQ(sphere_volume(2, 9, 4), 256);
  EXPECT_EQ(sphere_volume(3, 2, 5), 9);
}

TEST(SphereVolume, CountsBallByEnumeration) {
  for (unsigned q : {2u, 3u})
    for (std::size_t N = 0; N <= 5; ++N)
      for (std::size_t r = 0; r <= N; ++r) {
        std::size_t count = 0;
        for (const auto& v : oracle::all_vectors(q, N)) count += oracle::weight(v) <= r;
        EXPECT_EQ(sphere_volume(q, N, r), count);
      }
}

TEST(ShortestCode, ClosedFormsAndTable) {
  const Field F2 = make_field(2);
  EXPECT_EQ(shortest_code_length(F2, 2, 5).length, 8u);
  EXPECT_EQ(shortest_code_length(F2, 3, 5).length, 10u);
  for (std::size_t k = 1; k < 6; ++k) EXPECT_EQ(shortest_code_length(F2, k, 1).length, k);
  EXPECT_EQ(shortest_code_length(F2, 1, 7).length, 7u);
  EXPECT_EQ(shortest_code_length(make_field(7), 3, 5).length, 7u);
}

TEST(ShortestCode, SmallValuesMatchGeneratorScan) {
  const Field F2 = make_field(2);
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t d = 1; d <= 4; ++d) {
      const std::size_t N = shortest_code_length(F2, k, d).length;
      if (k * N > 16) continue;
      EXPECT_TRUE(oracle::code_exists(F2, k, d, N)) << k << "," << d;
      if (N > k) { EXPECT_FALSE(oracle::code_exists(F2, k, d, N - 1)) << k << "," << d; }
    }
}

// Each table entry is re-derived: infeasible one below, feasible at the entry.
TEST(ShortestCode, TableEntriesReverifiedBySearch) {
  for (const auto& e : kCodeTable) {
    const Field F = make_field(e.q);
    const auto below = code_exists(F, e.k, e.d, e.length - 1);
    EXPECT_EQ(below.status, SearchStatus::Infeasible) << e.q << " " << e.k << " " << e.d;
    const auto at = code_exists(F, e.k, e.d, e.length);
    ASSERT_EQ(at.status, SearchStatus::Feasible) << e.q << " " << e.k << " " << e.d;
    EXPECT_EQ(rank(F, at.columns), e.k);
    EXPECT_GE(code_min_distance(F, at.columns), e.d);
  }
}

TEST(ShortestCode, SearchFallbackBeyondTable) {
  // [N, 2, 7]_2 is not tabulated: Griesmer gives 7 + 4 = 11, met by a known code.
  const auto r = shortest_code_length(make_field(2), 2, 7);
  EXPECT_EQ(r.length, 11u);
  EXPECT_EQ(r.source, LengthSource::Search);
  try {
    shortest_code_length(make_field(2), 6, 7, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unknown);
  }
}

TEST(InstanceBounds, Examples) {
  const Field F2 = make_field(2);
  const auto pent = pentagon_instance();
  EXPECT_EQ(alpha_bound(pent, F2, 2), 8u);
  EXPECT_EQ(kappa_bound(pent, F2, 2), 10u);
  EXPECT_EQ(singleton_bound(pent, F2, 2), 7u);
  EXPECT_EQ(alpha_bound(pent, F2, 0), 2u);
  EXPECT_EQ(kappa_bound(pent, F2, 0), 3u);
  EXPECT_EQ(singleton_bound(pent, F2, 0), 3u);

  const auto ex1 = example1_instance();
  EXPECT_EQ(alpha_bound(ex1, F2, 1), 3u);
  EXPECT_EQ(kappa_bound(ex1, F2, 1), 3u);
  EXPECT_EQ(singleton_bound(ex1, F2, 1), 3u);
}

TEST(RandomCoding, Examples) {
  EXPECT_EQ(random_coding_length(odd_cycle_complement_instance(2), make_field(7), 0), 3u);
  EXPECT_EQ(random_coding_length(pentagon_instance(), make_field(2), 2), 16u);
  EXPECT_EQ(random_coding_length(no_side_info_instance(1), make_field(2), 0), 1u);
}

TEST(RandomCoding, IsSmallestLengthSatisfyingInequality) {
  // Floating-point re-evaluation as an independent check.
  std::mt19937_64 rng(17);
  for (unsigned q : {2u, 3u, 5u}) {
    const Field F = make_field(q);
    for (int t = 0; t < 20; ++t) {
      const auto inst = oracle::random_instance(rng, 1 + rng() % 6, 1 + rng() % 6);
      const std::size_t delta = rng() % 3;
      double lhs = 0;
      for (std::size_t i = 0; i < inst.receivers(); ++i)
        lhs += std::pow(q, inst.messages() - inst.side_info(i).size() - 1.0);
      auto holds = [&](std::size_t N) {
        return lhs * sphere_volume(q, N, 2 * delta).convert_to<double>() < std::pow(q, double(N));
      };
      const std::size_t N = random_coding_length(inst, F, delta);
      EXPECT_TRUE(holds(N));
      if (N > 0) { EXPECT_FALSE(holds(N - 1)); }
    }
  }
}

TEST(MdsOptimal, Examples) {
  const auto pent = pentagon_instance();
  const Field F5 = make_field(5);
  const std::size_t k5 = min_rank(pent, F5).kappa;
  EXPECT_EQ(k5, 3u);
  EXPECT_EQ(mds_optimal_length(pent, F5, 1), k5 + 2);
  EXPECT_FALSE(mds_optimal_length(pent, make_field(2), 2));
  EXPECT_EQ(mds_optimal_length(pent, make_field(2), 0), 3u);
}

TEST(BoundsReport, Examples) {
  const auto r = bounds_report(pentagon_instance(), make_field(2), 2);
  EXPECT_EQ(r.lower, 8u);
  EXPECT_EQ(r.upper, 10u);
  EXPECT_GE(*r.alpha_bound, *r.singleton);
  EXPECT_EQ(r.mds_equality, false);

  const auto nsi = bounds_report(no_side_info_instance(3), make_field(2), 1);
  EXPECT_EQ(nsi.lower, 6u);
  EXPECT_EQ(nsi.upper, 6u);
}

TEST(BoundsReport, PartialWhenBudgetRunsOut) {
  Limits lim;
  lim.min_rank_exponent = 2;
  const auto r = bounds_report(pentagon_instance(), make_field(2), 2, lim);
  EXPECT_FALSE(r.kappa);
  EXPECT_FALSE(r.upper);
  EXPECT_EQ(r.alpha_bound, 8u);
  EXPECT_EQ(r.lower, 8u);
}

TEST(BoundsReport, MonotoneInDeltaAndOrdered) {
  std::mt19937_64 rng(23);
  for (unsigned q : {2u, 3u}) {
    const Field F = make_field(q);
    for (int t = 0; t < 20; ++t) {
      const auto inst = oracle::random_instance(rng, 1 + rng() % 4, 1 + rng() % 4);
      std::size_t prev_lo = 0, prev_hi = 0, prev_rc = 0;
      for (std::size_t delta = 0; delta <= 2; ++delta) {
        const auto r = bounds_report(inst, F, delta);
        ASSERT_TRUE(r.lower && r.upper);
        EXPECT_LE(*r.alpha_bound, *r.kappa_bound);
        EXPECT_LE(*r.singleton, *r.kappa_bound);
        EXPECT_LE(*r.lower, *r.upper);
        EXPECT_GE(*r.lower, prev_lo);
        EXPECT_GE(*r.upper, prev_hi);
        EXPECT_GE(r.random_coding, prev_rc);
        prev_lo = *r.lower;
        prev_hi = *r.upper;
        prev_rc = r.random_coding;
      }
    }
  }
}
