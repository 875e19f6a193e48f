#include <gtest/gtest.h>

#include <random>

#include "ecic/ecic.hpp"
#include "oracles.hpp"

using namespace ecic;

TEST(Instance, DocumentsParse) {
  const auto pent = parse_instance(R"({"m":5,"n":5,"f":[1,2,3,4,5],"X":[[2,5],[1,3],[2,4],[3,5],[1,4]]})");
  EXPECT_EQ(instance_to_json(pent), instance_to_json(pentagon_instance()));
  const auto ex1 = parse_instance(R"({"m":3,"n":3,"f":[1,2,3],"X":[[2,3],[1,3],[1,2]]})");
  EXPECT_EQ(instance_to_json(ex1), instance_to_json(example1_instance()));
  EXPECT_EQ(instance_to_json(parse_instance(instance_to_json(pent).dump())), instance_to_json(pent));
}

TEST(Instance, InvalidDocumentsAreTyped) {
  auto kind_of = [](const std::string& text) {
    try {
      parse_instance(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InternalContradiction;
  };
  EXPECT_EQ(kind_of(R"({"m":1,"n":2,"f":[1],"X":[[1,2]]})"), ErrorKind::DemandInSideInfo);
  EXPECT_EQ(kind_of(R"({"m":1,"n":2,"f":[3],"X":[[]]})"), ErrorKind::IndexOutOfRange);
  EXPECT_EQ(kind_of(R"({"m":1,"n":2,"f":[1],"X":[[0]]})"), ErrorKind::IndexOutOfRange);
  EXPECT_EQ(kind_of(R"({"m":2,"n":2,"f":[1],"X":[[]]})"), ErrorKind::MalformedDocument);
  EXPECT_EQ(kind_of(R"({"m":1,"n":2,"f":[1]})"), ErrorKind::MalformedDocument);
  EXPECT_EQ(kind_of("not json"), ErrorKind::MalformedDocument);
  EXPECT_EQ(kind_of(R"({"m":1,"n":2,"f":["a"],"X":[[]]})"), ErrorKind::MalformedDocument);
  EXPECT_EQ(kind_of(R"({"m":1,"n":2,"f":[1],"X":[[2,2]]})"), ErrorKind::MalformedDocument);
}

TEST(Instance, BuiltinNames) {
  EXPECT_TRUE(builtin_instance("pentagon"));
  EXPECT_TRUE(builtin_instance("example1"));
  EXPECT_EQ(builtin_instance("odd-cycle-complement:2")->messages(), 5u);
  EXPECT_EQ(builtin_instance("no-side-info:4")->receivers(), 4u);
  EXPECT_FALSE(builtin_instance("hexagon"));
  EXPECT_THROW(builtin_instance("no-side-info:x"), Error);
}

TEST(ReceiverFrame, Examples) {
  const auto f = receiver_frame(pentagon_instance(), 0);
  EXPECT_EQ(f.demand, 0u);
  EXPECT_EQ(f.side_info.items(), (std::vector<std::size_t>{1, 4}));
  EXPECT_EQ(f.complement.items(), (std::vector<std::size_t>{2, 3}));
  EXPECT_TRUE(receiver_frame(example1_instance(), 0).complement.empty());
  EXPECT_EQ(receiver_frame(no_side_info_instance(4), 1).complement.items(), (std::vector<std::size_t>{0, 2, 3}));
}

TEST(ReceiverFrame, PartitionsMessages) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto inst = oracle::random_instance(rng, 1 + rng() % 8, 1 + rng() % 8);
    for (std::size_t i = 0; i < inst.receivers(); ++i) {
      const auto fr = receiver_frame(inst, i);
      const IndexSet f = IndexSet::of({fr.demand});
      EXPECT_FALSE(fr.side_info.intersects(fr.complement));
      EXPECT_FALSE(fr.side_info.intersects(f));
      EXPECT_FALSE(fr.complement.intersects(f));
      EXPECT_EQ((fr.side_info | fr.complement | f).bits(), IndexSet::full(inst.messages()).bits());
    }
  }
}

TEST(SupportFamily, Examples) {
  const auto pent = pentagon_instance();
  EXPECT_TRUE(in_support_family(pent, IndexSet::of({0, 2})));
  EXPECT_FALSE(in_support_family(pent, IndexSet::of({0, 1})));
  EXPECT_TRUE(in_support_family(example1_instance(), IndexSet::of({0})));
  try {
    in_support_family(pent, IndexSet{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySet);
  }
}

TEST(ErrorVectors, Examples) {
  const Field F2 = make_field(2);
  auto ex1 = error_vectors(example1_instance(), F2);
  std::sort(ex1.begin(), ex1.end());
  EXPECT_EQ(ex1, (std::vector<Vector>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));

  const Field F3 = make_field(3);
  EXPECT_EQ(error_vectors(no_side_info_instance(3), F3).size(), 26u);
  // 5 receivers x 4 candidates, but supports such as {1,3} confuse two
  // receivers; the brute-force count of distinct vectors is 15.
  EXPECT_EQ(error_vectors(pentagon_instance(), F2).size(), 15u);
  EXPECT_EQ(oracle::error_vectors(pentagon_instance(), F2).size(), 15u);
}

TEST(ErrorVectors, MatchDefinitionAndSupportFamily) {
  std::mt19937_64 rng(2);
  for (unsigned q : {2u, 3u}) {
    const Field F = make_field(q);
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 1 + rng() % (q == 2 ? 8 : 5);
      const auto inst = oracle::random_instance(rng, n, 1 + rng() % n);
      auto got = error_vectors(inst, F);
      std::sort(got.begin(), got.end());
      ASSERT_TRUE(std::adjacent_find(got.begin(), got.end()) == got.end()) << "duplicate";
      auto want = oracle::error_vectors(inst, F);
      std::sort(want.begin(), want.end());
      ASSERT_EQ(got, want);

      std::set<std::uint64_t> supports;
      for (const auto& z : got) {
        const IndexSet K = IndexSet::of(support(z));
        EXPECT_TRUE(in_support_family(inst, K));
        supports.insert(K.bits());
      }
      for (std::uint64_t K = 1; K < (std::uint64_t{1} << n); ++K)
        EXPECT_EQ(in_support_family(inst, IndexSet(K)), supports.count(K) > 0);
    }
  }
}

TEST(ErrorVectors, BudgetIsEnforced) {
  try {
    error_vectors(no_side_info_instance(20), make_field(2), 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}
