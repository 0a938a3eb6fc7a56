#include <gtest/gtest.h>

#include "weldkit/classify.hpp"
#include "weldkit/search.hpp"

using namespace weldkit;

namespace {

GaussDiagram gd(const char* text) { return parse_gauss(text); }

SearchBudget budget(int depth, std::vector<MoveKind> moves = {}, std::size_t arrows = 6,
                    std::size_t nodes = 200000) {
  SearchBudget b;
  b.max_depth = depth;
  b.moveset = std::move(moves);
  b.max_arrows = arrows;
  b.max_nodes = nodes;
  return b;
}

}  // namespace

TEST(Connect, R2PairToEmpty) {
  const auto d = read_diagram("strands 2\nword s1+ s1-\n");
  const auto c = connect(d, GaussDiagram(2), budget(1));
  ASSERT_TRUE(c);
  ASSERT_EQ(c->trace.size(), 1u);
  EXPECT_EQ(c->trace[0].kind, MoveKind::R2);
  EXPECT_EQ(c->trace[0].direction, Direction::Forward);
}

TEST(Connect, CurlToEmpty) {
  const auto d = gd("strands 1\narrow 1 + 1.0 1.1\n");
  const auto c = connect(d, GaussDiagram(1), budget(1));
  ASSERT_TRUE(c);
  ASSERT_EQ(c->trace.size(), 1u);
  EXPECT_EQ(c->trace[0].kind, MoveKind::R1);
}

TEST(Connect, IdenticalInputs) {
  const auto d = random_gauss_diagram(3, 4, 9);
  const auto c = connect(d, d, budget(3));
  ASSERT_TRUE(c);
  EXPECT_TRUE(c->trace.empty());
}

TEST(Connect, ReversesAnArrowWithBv) {
  const auto a = gd("strands 2\narrow 1 + 1.0 2.0\n");
  const auto b = gd("strands 2\narrow 1 + 2.0 1.0\n");
  const auto c = connect(a, b, budget(10, {MoveKind::BV}, 5, 2000000));
  ASSERT_TRUE(c);
  EXPECT_LE(c->depth, 10);
  bool r1 = false, r2 = false, bv = false;
  for (const auto& m : c->trace) {
    r1 |= m.kind == MoveKind::R1;
    r2 |= m.kind == MoveKind::R2;
    bv |= m.kind == MoveKind::BV;
    EXPECT_TRUE(is_primitive(m.kind));
  }
  EXPECT_TRUE(r1 && r2 && bv);
  EXPECT_TRUE(verify_certificate(a, b, *c));
}

TEST(Connect, NotFoundWithoutTheRightMoves) {
  const auto a = gd("strands 2\narrow 1 + 1.0 2.0\n");
  const auto b = gd("strands 2\narrow 1 - 1.0 2.0\n");
  EXPECT_FALSE(connect(a, b, budget(3, {}, 4, 20000)));
}

TEST(Connect, RejectsMalformedBudgets) {
  const GaussDiagram e(2);
  EXPECT_THROW(connect(e, e, budget(0)), InputError);
  EXPECT_THROW(connect(e, e, budget(2, {}, 0)), InputError);
  EXPECT_THROW(connect(e, e, budget(2, {}, 2, 0)), InputError);
  EXPECT_THROW(connect(e, GaussDiagram(3), budget(2)), InputError);
  EXPECT_THROW(connect(random_gauss_diagram(2, 5, 1), e, budget(2, {}, 3)), InputError);
}

TEST(Connect, Deterministic) {
  const auto a = random_gauss_diagram(2, 2, 4);
  const auto b = random_gauss_diagram(2, 2, 8);
  const auto bud = budget(4, {MoveKind::VC}, 4, 50000);
  const auto c1 = connect(a, b, bud), c2 = connect(a, b, bud);
  ASSERT_EQ(c1.has_value(), c2.has_value());
  if (c1) {
    EXPECT_EQ(c1->trace, c2->trace);
    EXPECT_EQ(c1->nodes_visited, c2->nodes_visited);
  }
}

TEST(Connect, NeverContradictsClassification) {
  int found = 0;
  for (MoveKind m : {MoveKind::CC, MoveKind::SV, MoveKind::F, MoveKind::VC, MoveKind::WBP, MoveKind::BV,
                     MoveKind::V}) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const int n = 1 + static_cast<int>(seed % 2);
      const auto a = random_gauss_diagram(n, static_cast<int>(seed % 3), seed);
      const auto b = random_gauss_diagram(n, static_cast<int>((seed + 1) % 3), seed + 77);
      const auto c = connect(a, b, budget(3, {m}, 3, 3000));
      if (!c) continue;
      ++found;
      EXPECT_TRUE(verify_certificate(a, b, *c));
      EXPECT_TRUE(decide_equiv(a, b, m).equivalent) << to_string(m) << " seed " << seed;
    }
  }
  EXPECT_GT(found, 0);
}

TEST(Verify, RejectsBrokenCertificates) {
  const auto a = gd("strands 2\narrow 1 + 1.0 2.0\n");
  const auto b = gd("strands 2\narrow 1 + 2.0 1.0\n");
  const auto c = connect(a, b, budget(10, {MoveKind::VC}, 3));
  ASSERT_TRUE(c);
  EXPECT_TRUE(verify_certificate(a, b, *c));
  std::string why;
  EXPECT_FALSE(verify_certificate(b, b, *c, &why));
  EXPECT_FALSE(why.empty());
  Certificate cut = *c;
  cut.trace.clear();
  EXPECT_FALSE(verify_certificate(a, b, cut));
  Certificate wrong = *c;
  wrong.trace.push_back(MoveInstance{MoveKind::R1, Direction::Forward, {7}, {}, {}});
  EXPECT_FALSE(verify_certificate(a, b, wrong));
}
