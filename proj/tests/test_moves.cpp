#include <gtest/gtest.h>

#include <random>

#include "weldkit/moves.hpp"

using namespace weldkit;

namespace {

GaussDiagram gd(const char* text) { return parse_gauss(text); }

GaussDiagram from_word(int n, const std::string& w) {
  return from_crossing_word(parse_crossing_word("strands " + std::to_string(n) + "\nword " + w + "\n"));
}

MoveInstance fwd(MoveKind k, std::vector<int> ids) { return MoveInstance{k, Direction::Forward, std::move(ids), {}, {}}; }

std::vector<GaussDiagram> corpus(int count, std::uint64_t seed0, int max_arrows = 8) {
  std::vector<GaussDiagram> out;
  for (int k = 0; k < count; ++k) {
    const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(k);
    const int n = 1 + static_cast<int>(seed % 4);
    if (k % 2 == 0) out.push_back(random_gauss_diagram(n, static_cast<int>(seed % (max_arrows + 1)), seed));
    else out.push_back(random_diagram(n, static_cast<int>(seed % (max_arrows + 1)), seed, k % 4 == 1));
  }
  return out;
}

}  // namespace

TEST(Sites, R1Deletion) {
  auto d = gd("strands 1\narrow 1 + 1.0 1.1\n");
  auto sites = enumerate_sites(d, MoveKind::R1, {InsertionPolicy::None});
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(sites[0], fwd(MoveKind::R1, {1}));
  EXPECT_TRUE(apply_move(d, sites[0]).empty());
}

TEST(Sites, R1InsertionCount) {
  // One strand with two endpoints: 3 gaps, 2 orders, 2 signs.
  auto d = gd("strands 1\narrow 1 + 1.0 1.1\n");
  auto sites = enumerate_sites(d, MoveKind::R1);
  EXPECT_EQ(sites.size(), 1u + 12u);
}

TEST(Sites, R2OnWordPair) {
  auto d = from_word(2, "s1+ s1-");
  auto sites = enumerate_sites(d, MoveKind::R2, {InsertionPolicy::None});
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(sites[0], fwd(MoveKind::R2, {1, 2}));
  auto r = apply_move(d, sites[0]);
  EXPECT_TRUE(r.empty());
  EXPECT_TRUE(r.classical());
}

TEST(Sites, ThreeStrandSV) {
  auto d = gd("strands 3\narrow 1 + 1.0 1.3\narrow 2 + 1.1 2.1\narrow 3 + 2.0 3.1\narrow 4 - 2.2 3.2\narrow 5 + 3.0 1.2\n");
  auto sites = enumerate_sites(d, MoveKind::SV, {InsertionPolicy::None});
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(sites[0].arrows, std::vector<int>{1});
}

TEST(Apply, SingleArrowMoves) {
  auto d = gd("strands 2\narrow 1 + 1.0 2.0\n");
  auto vc = apply_move(d, fwd(MoveKind::VC, {1}));
  EXPECT_EQ(vc.arrow(1), (Arrow{1, 1, {2, 0}, {1, 0}}));
  auto cc = apply_move(d, fwd(MoveKind::CC, {1}));
  EXPECT_EQ(cc.arrow(1), (Arrow{1, -1, {2, 0}, {1, 0}}));
  auto sr = apply_move(d, fwd(MoveKind::SR, {1}));
  EXPECT_EQ(sr.arrow(1), (Arrow{1, -1, {1, 0}, {2, 0}}));
  EXPECT_THROW(apply_move(d, fwd(MoveKind::SC, {1})), MoveError);
  EXPECT_THROW(apply_move(d, fwd(MoveKind::CC, {2})), MoveError);
  EXPECT_THROW(apply_move(d, MoveInstance{MoveKind::CC, Direction::Backward, {1}, {}, {}}), MoveError);
}

TEST(Apply, ClassicalFlag) {
  auto d = from_word(2, "s1+ s1-");
  EXPECT_TRUE(apply_move(d, fwd(MoveKind::CC, {1})).classical());
  EXPECT_FALSE(apply_move(d, fwd(MoveKind::VC, {1})).classical());
  EXPECT_FALSE(apply_move(d, fwd(MoveKind::OC, {1, 2})).classical());
  EXPECT_TRUE(apply_move(d, fwd(MoveKind::R2, {1, 2})).classical());
  const auto ins = enumerate_sites(d, MoveKind::R1);
  ASSERT_FALSE(ins.empty());
  EXPECT_FALSE(apply_move(d, ins.back()).classical());
}

TEST(Apply, InsertionPlacement) {
  auto d = gd("strands 2\narrow 1 + 1.0 2.0\n");
  // R2 pair 2->1 above both ends.
  MoveInstance m{MoveKind::R2, Direction::Backward, {}, {{2, 1}, {1, 1}, {2, 2}, {1, 2}}, {1, -1}};
  auto r = apply_move_tracked(d, m);
  EXPECT_EQ(r.diagram.size(), 3u);
  EXPECT_EQ(r.inserted, (std::vector<int>{2, 3}));
  EXPECT_EQ(r.inverse, fwd(MoveKind::R2, {2, 3}));
  EXPECT_EQ(apply_move(r.diagram, r.inverse), d);
  // Wrong order of heads is not an R2 pattern.
  MoveInstance bad{MoveKind::R2, Direction::Backward, {}, {{2, 1}, {1, 2}, {2, 2}, {1, 1}}, {1, -1}};
  EXPECT_THROW(apply_move(d, bad), MoveError);
  MoveInstance clash{MoveKind::R1, Direction::Backward, {}, {{1, 0}, {1, 0}}, {1}};
  EXPECT_THROW(apply_move(d, clash), MoveError);
}

TEST(Apply, InverseRestoresDiagram) {
  SiteOptions opts;
  opts.max_arrows = 12;
  for (const auto& d : corpus(120, 1000)) {
    for (MoveKind k : kAllMoveKinds) {
      for (const auto& m : enumerate_sites(d, k, opts)) {
        auto r = apply_move_tracked(d, m);
        EXPECT_TRUE(matches(r.diagram, r.inverse)) << serialize_move(m);
        EXPECT_TRUE(same_diagram(apply_move(r.diagram, r.inverse), d)) << serialize_move(m);
      }
    }
  }
}

TEST(Apply, BVInsertionsOnTinyDiagram) {
  auto d = gd("strands 2\narrow 1 + 1.0 2.0\n");
  auto sites = enumerate_sites(d, MoveKind::BV, {InsertionPolicy::All});
  std::size_t insertions = 0;
  for (const auto& m : sites) {
    if (m.direction != Direction::Backward) continue;
    ++insertions;
    auto r = apply_move_tracked(d, m);
    EXPECT_EQ(r.diagram.size(), 5u);
    EXPECT_EQ(apply_move(r.diagram, r.inverse), d);
  }
  EXPECT_GT(insertions, 100u);
}

TEST(Apply, OrderIsDeterministic) {
  auto d = random_gauss_diagram(3, 6, 5);
  for (MoveKind k : kAllMoveKinds) {
    auto a = enumerate_sites(d, k);
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
    EXPECT_EQ(a, enumerate_sites(d, k));
  }
}

TEST(Trace, ReplayAndErrors) {
  auto d = gd("strands 2\narrow 1 + 1.0 2.0\n");
  EXPECT_EQ(replay_trace(d, {}), d);
  MoveTrace t{MoveInstance{MoveKind::R2, Direction::Backward, {}, {{1, 1}, {2, 1}, {1, 2}, {2, 2}}, {-1, 1}},
              fwd(MoveKind::R2, {2, 3})};
  EXPECT_EQ(replay_trace(d, t), d);
  t.push_back(fwd(MoveKind::R1, {1}));
  try {
    replay_trace(d, t);
    FAIL();
  } catch (const TraceError& e) {
    EXPECT_EQ(e.step(), 2u);
  }
}

TEST(Trace, TextRoundTrip) {
  MoveTrace t{fwd(MoveKind::BV, {4, 1, 2, 3}),
              MoveInstance{MoveKind::R1, Direction::Backward, {}, {{1, 0}, {1, 1}}, {-1}},
              fwd(MoveKind::DELTA, {1, 2, 3})};
  const std::string text = serialize_trace(t);
  EXPECT_EQ(text.substr(0, text.find('\n')), "move BV forward arrows=4,1,2,3 at=");
  EXPECT_EQ(parse_trace(text), t);
  EXPECT_EQ(parse_trace("# c\n\nmove wbp backward arrows=1,2,3,4 at=\n")[0].kind, MoveKind::WBP);
  EXPECT_THROW(parse_trace("move XX forward arrows=1 at=\n"), ParseError);
  EXPECT_THROW(parse_trace("move R1 sideways arrows=1 at=\n"), ParseError);
  EXPECT_THROW(parse_trace("move R1 forward arrows=a at=\n"), ParseError);
  EXPECT_THROW(parse_trace("move R1 forward arrows=1 at=1.x\n"), ParseError);
}

TEST(Macro, VCOnLoneArrow) {
  auto d = gd("strands 2\narrow 1 + 1.0 2.0\n");
  auto t = macro_trace(MoveKind::VC, fwd(MoveKind::VC, {1}), d);
  ASSERT_EQ(t.size(), 8u);
  EXPECT_EQ(t[0].kind, MoveKind::R2);
  EXPECT_EQ(t[0].direction, Direction::Backward);
  EXPECT_EQ(t[1].kind, MoveKind::R1);
  EXPECT_EQ(t[3].kind, MoveKind::BV);
  for (const auto& m : t) EXPECT_TRUE(is_primitive(m.kind));
  EXPECT_EQ(replay_trace(d, t), gd("strands 2\narrow 1 + 2.0 1.0\n"));
}

TEST(Macro, ReplayEqualsDirectMove) {
  for (const auto& d : corpus(150, 5000, 7)) {
    for (MoveKind k : {MoveKind::CC, MoveKind::SC, MoveKind::SR, MoveKind::VC, MoveKind::F, MoveKind::UC, MoveKind::SV}) {
      for (const auto& m : enumerate_sites(d, k, {InsertionPolicy::None})) {
        auto t = macro_trace(k, m, d);
        for (const auto& p : t) ASSERT_TRUE(is_primitive(p.kind));
        EXPECT_TRUE(same_diagram(replay_trace(d, t), apply_move(d, m))) << serialize_move(m);
      }
    }
  }
}

TEST(Macro, SVInsertion) {
  auto d = gd("strands 2\narrow 1 + 1.0 2.0\narrow 2 - 2.1 1.1\n");
  MoveInstance m{MoveKind::SV, Direction::Backward, {}, {{1, 3}, {1, 0}}, {-1}};
  auto t = macro_trace(d, m);
  EXPECT_TRUE(same_diagram(replay_trace(d, t), apply_move(d, m)));
}
