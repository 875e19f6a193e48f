#include <gtest/gtest.h>

#include <random>

#include "ecic/ecic.hpp"
#include "oracles.hpp"

using namespace ecic;

namespace {

const Field& binary_field() {
  static const Field F = make_field(2);
  return F;
}

Matrix all_ones_column(std::size_t n) {
  Matrix M(n, 1);
  for (std::size_t r = 0; r < n; ++r) M(r, 0) = 1;
  return M;
}

}  // namespace

TEST(Encode, Examples) {
  const LinearIndexCode code(example1_instance(), binary_field(), example1_matrix());
  EXPECT_EQ(encode(code, Vector{1, 0, 1}), (Vector{0, 1, 0, 1}));
  EXPECT_EQ(encode(code, Vector{0, 0, 0}), (Vector{0, 0, 0, 0}));
  const LinearIndexCode id(pentagon_instance(), binary_field(), Matrix::identity(5));
  EXPECT_EQ(encode(id, Vector{1, 0, 1, 1, 0}), (Vector{1, 0, 1, 1, 0}));
  EXPECT_THROW(LinearIndexCode(pentagon_instance(), binary_field(), Matrix::identity(4)), Error);
}

TEST(Margins, Examples) {
  const LinearIndexCode ex1(example1_instance(), binary_field(), example1_matrix());
  EXPECT_EQ(receiver_margin(ex1, 0), 3u);
  const LinearIndexCode pent(pentagon_instance(), binary_field(), pentagon_matrix());
  EXPECT_GE(receiver_margin(pent, 0), 5u);
  const LinearIndexCode id(no_side_info_instance(4), binary_field(), Matrix::identity(4));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(receiver_margin(id, i), 1u);
}

TEST(Margins, MatchBruteForceDistanceToSpan) {
  std::mt19937_64 rng(4);
  for (unsigned q : {2u, 3u}) {
    const Field F = make_field(q);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 2 + rng() % 4;
      const auto inst = oracle::random_instance(rng, n, n);
      const Matrix L = oracle::random_matrix(rng, q, n, 1 + rng() % 7);
      const LinearIndexCode code(inst, F, L);
      for (std::size_t i = 0; i < n; ++i) {
        const auto ys = inst.complement(i).items();
        const Matrix LY = L.select_rows(ys);
        std::size_t best = SIZE_MAX;
        for (const auto& w : oracle::row_space(F, LY))
          for (Elem a = 1; a < q; ++a) {
            Vector v(L.cols());
            for (std::size_t c = 0; c < v.size(); ++c) v[c] = F.add(F.mul(a, L(inst.demand(i), c)), w[c]);
            best = std::min(best, oracle::weight(v));
          }
        const auto mw = receiver_margin_witness(code, i);
        ASSERT_EQ(mw.margin, best);
        EXPECT_TRUE(confuses_receiver(inst, i, mw.z));
        EXPECT_EQ(hamming_weight(vec_mat(F, mw.z, L)), mw.margin);
      }
    }
  }
}

TEST(VerifyEcic, Examples) {
  const LinearIndexCode ex1(example1_instance(), binary_field(), example1_matrix());
  EXPECT_TRUE(verify_ecic(ex1, 1).valid);
  const auto fail = verify_ecic(ex1, 2);
  EXPECT_FALSE(fail.valid);
  EXPECT_EQ(fail.required, 5u);
  EXPECT_EQ(*fail.certificate, (Vector{1, 0, 0}));
  EXPECT_EQ(hamming_weight(vec_mat(binary_field(), *fail.certificate, example1_matrix())), 3u);

  const LinearIndexCode pent(pentagon_instance(), binary_field(), pentagon_matrix());
  EXPECT_TRUE(verify_ecic(pent, 2).valid);
  EXPECT_FALSE(verify_ecic(pent, 3).valid);
}

TEST(CorrectionRadius, Examples) {
  EXPECT_EQ(correction_radius(LinearIndexCode(example1_instance(), binary_field(), example1_matrix())), 1);
  EXPECT_EQ(correction_radius(LinearIndexCode(pentagon_instance(), binary_field(), pentagon_matrix())), 2);
  EXPECT_FALSE(correction_radius(LinearIndexCode(pentagon_instance(), binary_field(), Matrix(5, 3))).has_value());
}

TEST(VerifyIc, Examples) {
  EXPECT_TRUE(verify_ic(LinearIndexCode(pentagon_instance(), binary_field(), Matrix::identity(5))));
  EXPECT_FALSE(verify_ic(LinearIndexCode(pentagon_instance(), binary_field(), all_ones_column(5))));
  EXPECT_TRUE(verify_ic(LinearIndexCode(example1_instance(), binary_field(), all_ones_column(3))));
}

TEST(VerifyEcic, PropertiesOnRandomCodes) {
  std::mt19937_64 rng(9);
  for (unsigned q : {2u, 3u}) {
    const Field F = make_field(q);
    for (int t = 0; t < 150; ++t) {
      const std::size_t n = 1 + rng() % 5;
      const auto inst = oracle::random_instance(rng, n, 1 + rng() % 6);
      const Matrix L = oracle::random_matrix(rng, q, n, 1 + rng() % 8);
      const LinearIndexCode code(inst, F, L);
      const auto radius = correction_radius(code);
      for (std::size_t delta : {0u, 1u, 2u}) {
        const bool valid = verify_ecic(code, delta).valid;
        ASSERT_EQ(valid, verify_ecic_by_enumeration(code, delta).valid);
        ASSERT_EQ(valid, oracle::is_ecic(inst, F, L, delta));
        ASSERT_EQ(valid, radius && *radius >= static_cast<int>(delta));
      }
      ASSERT_EQ(verify_ic(code), verify_ecic(code, 0).valid);
    }
  }
}

TEST(Alpha, Examples) {
  const auto a = generalized_independence_number(pentagon_instance());
  EXPECT_EQ(a.alpha, 2u);
  EXPECT_EQ(a.witness, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(generalized_independence_number(no_side_info_instance(6)).alpha, 6u);
  EXPECT_EQ(generalized_independence_number(example1_instance()).alpha, 1u);
}

TEST(MinRank, Examples) {
  EXPECT_EQ(min_rank(pentagon_instance(), binary_field()).kappa, 3u);
  EXPECT_EQ(min_rank(no_side_info_instance(4), binary_field()).kappa, 4u);
  EXPECT_EQ(min_rank(example1_instance(), binary_field()).kappa, 1u);
  EXPECT_EQ(min_rank(odd_cycle_complement_instance(2), make_field(7)).kappa, 3u);
}

TEST(MinRank, BudgetIsEnforced) {
  EXPECT_THROW(min_rank(odd_cycle_complement_instance(4), make_field(3), 10), Error);
}

TEST(Params, AgreeWithOraclesAndEachOther) {
  std::mt19937_64 rng(13);
  for (unsigned q : {2u, 3u}) {
    const Field F = make_field(q);
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 1 + rng() % 5;
      const auto inst = oracle::random_instance(rng, n, 1 + rng() % 5, q == 2 ? 0.5 : 0.3);
      const auto a = generalized_independence_number(inst);
      ASSERT_EQ(a.alpha, oracle::alpha(inst));
      for (std::size_t s = 1; s < (std::size_t{1} << a.witness.size()); ++s) {
        IndexSet K;
        for (std::size_t k = 0; k < a.witness.size(); ++k)
          if ((s >> k) & 1) K.insert(a.witness[k]);
        EXPECT_TRUE(in_support_family(inst, K));
      }
      const auto mr = min_rank(inst, F);
      ASSERT_EQ(mr.kappa, oracle::min_rank(inst, F));
      EXPECT_LE(a.alpha, mr.kappa);

      // Witness fits the instance and has rank kappa; its transpose basis is an index code.
      EXPECT_EQ(rank(F, mr.witness), mr.kappa);
      for (std::size_t i = 0; i < inst.receivers(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (j == inst.demand(i)) { EXPECT_EQ(mr.witness(i, j), 1); }
          else if (!inst.side_info(i).contains(j)) { EXPECT_EQ(mr.witness(i, j), 0); }
        }
      if (mr.kappa > 0) {
        const LinearIndexCode ic(inst, F, optimal_ic_matrix(F, mr));
        EXPECT_EQ(ic.length(), mr.kappa);
        EXPECT_TRUE(verify_ic(ic));
      }
    }
  }
}
