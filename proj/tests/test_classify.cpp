#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <stop_token>

#include "weldkit/classify.hpp"

using namespace weldkit;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(WELDKIT_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GaussDiagram gd(const char* text) { return parse_gauss(text); }

std::vector<std::int64_t> vec(const ClassValue& v) { return std::get<std::vector<std::int64_t>>(v); }

// Parity of the number of endpoints of non-self arrows on each strand but the
// last; every arrow contributes an odd amount to a row or column sum.
std::vector<std::int64_t> endpoint_parity(const GaussDiagram& d) {
  std::vector<std::int64_t> z(static_cast<std::size_t>(d.strands() - 1), 0);
  for (const Arrow& a : d.arrows()) {
    if (a.self()) continue;
    for (int s : {a.tail.strand, a.head.strand})
      if (s < d.strands()) z[static_cast<std::size_t>(s - 1)] ^= 1;
  }
  return z;
}

std::vector<std::int64_t> random_vector(MoveKind m, int n, std::mt19937_64& rng) {
  std::vector<std::int64_t> v(class_vector_length(m, n));
  const bool bits = m == MoveKind::BV || m == MoveKind::WBP;
  for (auto& x : v) x = bits ? static_cast<std::int64_t>(rng() % 2) : static_cast<std::int64_t>(rng() % 7) - 3;
  return v;
}

}  // namespace

TEST(Decide, Examples) {
  const auto pos = gd("strands 2\narrow 1 + 1.0 2.0\n");
  const auto neg = gd("strands 2\narrow 1 - 1.0 2.0\n");
  EXPECT_FALSE(decide_equiv(pos, neg, MoveKind::VC).equivalent);
  EXPECT_TRUE(decide_equiv(pos, neg, MoveKind::BV).equivalent);
  EXPECT_TRUE(decide_equiv(parse_gauss(slurp("three_strand.gd")), parse_gauss(slurp("gz01.gd")), MoveKind::BV).equivalent);
  EXPECT_TRUE(decide_equiv(pos, GaussDiagram(2), MoveKind::V).equivalent);
}

TEST(Decide, RejectsBadInput) {
  const auto pos = gd("strands 2\narrow 1 + 1.0 2.0\n");
  EXPECT_THROW(decide_equiv(pos, GaussDiagram(3), MoveKind::BV), InputError);
  EXPECT_THROW(decide_equiv(pos, pos, MoveKind::R3), InputError);
  EXPECT_THROW(decide_equiv(pos, pos, MoveKind::DELTA), InputError);  // not classical
  const auto c = random_diagram(2, 4, 7, true);
  EXPECT_NO_THROW(decide_equiv(c, c, MoveKind::DELTA));
}

TEST(Decide, CoarserMovesetsMergeMore) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    const int n = 2 + static_cast<int>(rng() % 3);
    // Pairs sharing a vlk matrix: a diagram and its own F-equivalent rewrites.
    auto d1 = random_gauss_diagram(n, static_cast<int>(rng() % 8), rng());
    auto d2 = d1;
    for (int step = 0; step < 3; ++step) {
      auto sites = enumerate_sites(d2, MoveKind::F);
      if (sites.empty()) break;
      d2 = apply_move(d2, sites[rng() % sites.size()]);
    }
    ASSERT_TRUE(decide_equiv(d1, d2, MoveKind::F).equivalent);
    EXPECT_TRUE(decide_equiv(d1, d2, MoveKind::VC).equivalent);
    EXPECT_TRUE(decide_equiv(d1, d2, MoveKind::CC).equivalent);
    EXPECT_TRUE(decide_equiv(d1, d2, MoveKind::BV).equivalent);
    EXPECT_TRUE(decide_equiv(d1, d2, MoveKind::WBP).equivalent);
  }
}

TEST(Decide, BvIgnoresClassicalInputs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const auto a = random_diagram(n, static_cast<int>(seed % 9), seed, true);
    const auto b = random_diagram(n, static_cast<int>(seed % 7), seed + 1000, true);
    EXPECT_TRUE(decide_equiv(a, b, MoveKind::BV).equivalent) << seed;
  }
}

TEST(CanonicalRep, G1011Layout) {
  const auto g = canonical_rep({1, 0, 1, 1}, MoveKind::BV, 5);
  EXPECT_TRUE(same_diagram(g, parse_gauss(slurp("g1011.gd"))));
  ASSERT_EQ(g.size(), 3u);
  for (const Arrow& a : g.arrows()) {
    EXPECT_EQ(a.head.strand, 5);
    EXPECT_EQ(a.tail.position, 0);
    EXPECT_EQ(a.sign, 1);
  }
}

TEST(CanonicalRep, FLayout) {
  // Row-major over i != j: (1,2) (1,3) (2,1) (2,3) (3,1) (3,2).
  const auto d = canonical_rep({2, 0, 0, -1, 0, 0}, MoveKind::F, 3);
  ASSERT_EQ(d.size(), 3u);
  int negative = 0;
  for (const Arrow& a : d.arrows()) {
    if (a.sign > 0) {
      EXPECT_EQ(a.tail.strand, 1);
      EXPECT_EQ(a.head.strand, 2);
    } else {
      ++negative;
      EXPECT_EQ(a.tail.strand, 2);
      EXPECT_EQ(a.head.strand, 3);
      EXPECT_EQ(a.tail.position, 2);  // stacked above the (1,2) block
    }
  }
  EXPECT_EQ(negative, 1);
}

TEST(CanonicalRep, RealizesEveryVector) {
  std::mt19937_64 rng(5);
  for (MoveKind m : {MoveKind::CC, MoveKind::F, MoveKind::VC, MoveKind::WBP, MoveKind::BV}) {
    for (int k = 0; k < 100; ++k) {
      const int n = 1 + static_cast<int>(rng() % 5);
      const auto v = random_vector(m, n, rng);
      const auto d = canonical_rep(v, m, n);
      EXPECT_EQ(vec(class_vector(d, m)), v) << to_string(m) << " n=" << n;
    }
  }
}

TEST(CanonicalRep, RejectsBadVectors) {
  EXPECT_THROW(canonical_rep({1, 0}, MoveKind::BV, 2), InputError);
  EXPECT_THROW(canonical_rep({2}, MoveKind::BV, 2), InputError);
  EXPECT_THROW(canonical_rep({1}, MoveKind::SV, 2), InputError);
  EXPECT_THROW(canonical_rep({}, MoveKind::F, 0), InputError);
}

TEST(NormalizeBv, ThreeStrand) {
  const auto d = parse_gauss(slurp("three_strand.gd"));
  const auto [g, trace] = normalize_bv(d);
  EXPECT_TRUE(same_diagram(g, parse_gauss(slurp("gz01.gd"))));
  EXPECT_TRUE(same_diagram(replay_trace(d, trace), g));
}

TEST(NormalizeBv, RandomDiagrams) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const auto d = random_gauss_diagram(n, static_cast<int>(seed % 9), seed);
    const auto [g, trace] = normalize_bv(d);
    EXPECT_TRUE(same_diagram(g, g_z(endpoint_parity(d), n))) << seed;
    EXPECT_TRUE(same_diagram(replay_trace(d, trace), g)) << seed;
    for (const auto& m : trace) EXPECT_TRUE(is_primitive(m.kind)) << serialize_move(m);
  }
}

TEST(NormalizeBv, Cancellation) {
  std::stop_source src;
  src.request_stop();
  const auto d = random_gauss_diagram(3, 6, 3);
  EXPECT_THROW(normalize_bv(d, src.get_token()), Cancelled);
}
