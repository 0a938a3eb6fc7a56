#pragma once

// Move-equivalence decisions via classifying invariants, canonical
// representatives, and the constructive BV normal form.

#include <cstdint>
#include <stop_token>
#include <string>
#include <utility>
#include <vector>

#include "weldkit/error.hpp"
#include "weldkit/gauss.hpp"
#include "weldkit/invariants.hpp"
#include "weldkit/moves.hpp"

namespace weldkit {

struct Verdict {
  bool equivalent = false;
  MoveKind moveset = MoveKind::V;
  ClassValue first;
  ClassValue second;
};

/// Movesets decide_equiv accepts on welded inputs.
inline bool is_welded_moveset(MoveKind m) {
  switch (m) {
    case MoveKind::V: case MoveKind::CC: case MoveKind::SV: case MoveKind::F:
    case MoveKind::VC: case MoveKind::WBP: case MoveKind::BV: return true;
    default: return false;
  }
}

inline Verdict decide_equiv(const GaussDiagram& d1, const GaussDiagram& d2, MoveKind moveset) {
  if (d1.strands() != d2.strands()) throw InputError("diagrams have different strand counts");
  if (!is_welded_moveset(moveset) && !requires_classical(moveset))
    throw InputError("moveset " + std::string(to_string(moveset)) + " has no decision procedure");
  Verdict v;
  v.moveset = moveset;
  v.first = class_vector(d1, moveset);
  v.second = class_vector(d2, moveset);
  v.equivalent = same_class(v.first, v.second);
  return v;
}

/// Length of the class vector of moveset m on n strands.
inline std::size_t class_vector_length(MoveKind m, int n) {
  const auto un = static_cast<std::size_t>(n);
  const std::size_t pairs = un * (un - 1) / 2;
  switch (m) {
    case MoveKind::V: return 0;
    case MoveKind::CC: case MoveKind::VC: case MoveKind::DELTA: return pairs;
    case MoveKind::F: return un * (un - 1);
    case MoveKind::WBP: return pairs + un - 1;
    case MoveKind::BV: case MoveKind::BP: return un - 1;
    default: throw InputError("moveset " + std::string(to_string(m)) + " has no class vector");
  }
}

/// A diagram whose class vector under m is v.
///   BV:  G_z, a positive arrow i->n for every z_i = 1, tails at the bottom,
///        heads on strand n ordered by i.
///   F:   |v_ij| parallel arrows i->j of sign sgn(v_ij), blocks stacked in
///        lexicographic (i,j) order.
///   CC, VC: the value at (i,j), i<j, carried by i->j arrows alone.
///   WBP: one positive i->j arrow per odd pair; where the parity of
///        vlk_{i*} then differs from the requested one, arrows i->n and n->i.
inline GaussDiagram canonical_rep(const std::vector<std::int64_t>& v, MoveKind m, int n) {
  if (n < 1) throw InputError("canonical_rep: n must be positive");
  if (m != MoveKind::V && m != MoveKind::CC && m != MoveKind::F && m != MoveKind::VC && m != MoveKind::WBP &&
      m != MoveKind::BV)
    throw InputError("no canonical representative for moveset " + std::string(to_string(m)));
  if (v.size() != class_vector_length(m, n))
    throw InputError("vector for " + std::string(to_string(m)) + " on " + std::to_string(n) + " strands needs " +
                     std::to_string(class_vector_length(m, n)) + " entries");
  auto check_bit = [](std::int64_t x) {
    if (x != 0 && x != 1) throw InputError("mod-2 entries must be 0 or 1");
  };
  // Arrows appended in order, each above everything placed so far.
  std::vector<Arrow> arrows;
  std::vector<int> next(static_cast<std::size_t>(n) + 1, 0);
  auto add = [&](int i, int j, int sign, std::int64_t count) {
    for (std::int64_t c = 0; c < count; ++c) {
      Arrow a;
      a.id = static_cast<int>(arrows.size()) + 1;
      a.sign = sign;
      a.tail = {i, next[static_cast<std::size_t>(i)]++};
      a.head = {j, next[static_cast<std::size_t>(j)]++};
      arrows.push_back(a);
    }
  };
  auto add_value = [&](int i, int j, std::int64_t x) { add(i, j, x < 0 ? -1 : 1, x < 0 ? -x : x); };
  std::size_t k = 0;
  switch (m) {
    case MoveKind::BV:
      for (int i = 1; i < n; ++i) {
        check_bit(v[k]);
        add(i, n, 1, v[k++]);
      }
      break;
    case MoveKind::F:
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          if (i != j) add_value(i, j, v[k++]);
      break;
    case MoveKind::CC:
    case MoveKind::VC:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) add_value(i, j, v[k++]);
      break;
    case MoveKind::WBP: {
      std::vector<std::int64_t> row(static_cast<std::size_t>(n) + 1, 0);
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          check_bit(v[k]);
          add(i, j, 1, v[k]);
          row[static_cast<std::size_t>(i)] += v[k++];
        }
      for (int i = 1; i < n; ++i) {
        check_bit(v[k]);
        if (row[static_cast<std::size_t>(i)] % 2 != v[k++]) {
          add(i, n, 1, 1);
          add(n, i, 1, 1);
        }
      }
      break;
    }
    default: break;
  }
  return GaussDiagram::from_arrows(n, std::move(arrows), false);
}

inline GaussDiagram g_z(const std::vector<std::int64_t>& z, int n) { return canonical_rep(z, MoveKind::BV, n); }

// ---------------------------------------------------------------------------
// BV normal form

namespace detail {

inline void check_stop(const std::stop_token& st) {
  if (st.stop_requested()) throw Cancelled();
}

/// Lowest arrow (by the given key endpoint) satisfying pred, or 0.
template <class Pred, class Key>
int lowest_arrow(const GaussDiagram& d, Pred pred, Key key) {
  int best = 0;
  Endpoint best_key{};
  for (const Arrow& a : d.arrows()) {
    if (!pred(a)) continue;
    const Endpoint k = key(a);
    if (best == 0 || k < best_key) best = a.id, best_key = k;
  }
  return best;
}

/// Replaces s->k (s < k < n) by s->n and n->k: an R2 pair n->k below the
/// head, an R2 pair s->n above the tail, a curl on strand n, and a BV
/// deletion.
inline void reroute_through_last(TraceBuilder& tb, TraceBuilder::Handle a) {
  const GaussDiagram& d0 = tb.diagram();
  const int n = d0.strands();
  const Arrow A = tb.arrow(a);
  const int s = A.tail.strand, k = A.head.strand;
  const int top = d0.endpoint_count(n);
  auto r = tb.apply(macro::insertion(d0, MoveKind::R2,
                                     {{n, top, 0}, {k, A.head.position, 0}, {n, top, 1}, {k, A.head.position, 1}},
                                     {-1, 1}));
  const auto q = tb.track(r.inserted[1]);
  const int tail_gap = tb.arrow(a).tail.position + 1;
  const int top2 = tb.diagram().endpoint_count(n);
  r = tb.apply(macro::insertion(tb.diagram(), MoveKind::R2, {{s, tail_gap, 0}, {n, top2, 0}, {s, tail_gap, 1}, {n, top2, 1}},
                                {1, -1}));
  const auto p = tb.track(r.inserted[0]);
  const int gap = tb.arrow(p).head.position;
  r = tb.apply(macro::insertion(tb.diagram(), MoveKind::R1, {{n, gap, 0}, {n, gap, 1}}, {A.sign}));
  const auto self = tb.track(r.inserted[0]);
  tb.apply(MoveInstance{MoveKind::BV, Direction::Forward, {tb.id(p), tb.id(a), tb.id(self), tb.id(q)}, {}, {}});
}

/// Moves the head of b on strand n until it sits directly above the head of a.
inline void bring_head_above(TraceBuilder& tb, TraceBuilder::Handle a, TraceBuilder::Handle b,
                             const std::stop_token& st) {
  for (;;) {
    check_stop(st);
    const int pa = tb.arrow(a).head.position, pb = tb.arrow(b).head.position;
    const int strand = tb.arrow(a).head.strand;
    if (pb == pa + 1) return;
    if (pb > pa + 1) macro::swap_up(tb, strand, pb - 1);
    else macro::swap_up(tb, strand, pb);
  }
}

}  // namespace detail

/// Reduces d to G_z. On each strand s < n in turn, self-arrows go by SV,
/// arrows into s are reversed by VC, arrows to other strands below n are
/// rerouted through n, and the arrows s->n cancel in pairs (SR, head moves,
/// R2). Arrows are handled bottom-up. The returned trace uses only R1, R2,
/// R3, OC and BV and replays from d to G_z.
inline std::pair<GaussDiagram, MoveTrace> normalize_bv(const GaussDiagram& d, std::stop_token st = {}) {
  const int n = d.strands();
  TraceBuilder tb(d);
  auto self_on = [](int s) { return [s](const Arrow& a) { return a.self() && a.tail.strand == s; }; };
  auto lower_end = [](const Arrow& a) { return std::min(a.tail, a.head); };
  auto sv_all = [&](int s) {
    while (int id = detail::lowest_arrow(tb.diagram(), self_on(s), lower_end)) {
      detail::check_stop(st);
      macro::sv_delete(tb, tb.track(id));
    }
  };
  for (int s = 1; s < n; ++s) {
    sv_all(s);
    while (int id = detail::lowest_arrow(
               tb.diagram(), [s](const Arrow& a) { return a.head.strand == s && a.tail.strand != s; },
               [](const Arrow& a) { return a.head; })) {
      detail::check_stop(st);
      macro::vc(tb, tb.track(id));
    }
    while (int id = detail::lowest_arrow(
               tb.diagram(), [s, n](const Arrow& a) { return a.tail.strand == s && a.head.strand != s && a.head.strand != n; },
               [](const Arrow& a) { return a.tail; })) {
      detail::check_stop(st);
      detail::reroute_through_last(tb, tb.track(id));
    }
    // Only tails of s->n arrows remain on strand s.
    for (;;) {
      detail::check_stop(st);
      const auto& cur = tb.diagram();
      if (cur.endpoint_count(s) < 2) break;
      const auto a = tb.track(cur.strand(s)[0].arrow);
      const auto b = tb.track(cur.strand(s)[1].arrow);
      if (tb.arrow(a).sign == tb.arrow(b).sign) macro::sr(tb, b);
      detail::bring_head_above(tb, a, b, st);
      tb.apply(MoveInstance{MoveKind::R2, Direction::Forward, {tb.id(a), tb.id(b)}, {}, {}});
    }
    if (tb.diagram().endpoint_count(s) == 1) {
      const auto a = tb.track(tb.diagram().strand(s)[0].arrow);
      if (tb.arrow(a).sign < 0) macro::sr(tb, a);
    }
  }
  sv_all(n);
  // Sort the heads on strand n by the index of their tail strand.
  for (bool swapped = true; swapped;) {
    swapped = false;
    const int count = tb.diagram().endpoint_count(n);
    for (int p = 0; p + 1 < count; ++p) {
      detail::check_stop(st);
      const auto& cur = tb.diagram();
      const auto lo = *cur.at(n, p), hi = *cur.at(n, p + 1);
      if (cur.arrow(lo.arrow).tail.strand > cur.arrow(hi.arrow).tail.strand) {
        macro::uc(tb, tb.track(lo.arrow), tb.track(hi.arrow));
        swapped = true;
      }
    }
  }
  const auto z = std::get<0>(class_vector(d.with_classical(false), MoveKind::BV));
  GaussDiagram target = g_z(z, n);
  if (!same_diagram(tb.diagram(), target)) throw InternalError("BV normalization did not reach G_z");
  MoveTrace trace = tb.take();
  if (!same_diagram(replay_trace(d, trace), target)) throw InternalError("BV normalization trace does not replay");
  return {std::move(target), std::move(trace)};
}

}  // namespace weldkit
