#pragma once

// The local-move catalog as located rewrites on Gauss diagrams.
//
// A move instance binds the arrows of a pattern (in a fixed role order) or,
// for insertions, lists the endpoints the inserted arrows occupy in the
// resulting diagram. Every instance has an inverse; apply_move_tracked
// reports it together with the id relabelling caused by canonicalization.
//
// Role orders:
//   R2       [lower, upper]            tails adjacent, heads adjacent, same order
//   R3       [e1, e2, e3]              e1: p2->p3, e2: p1->p3, e3: p1->p2
//   OC, UC   [lower, upper]
//   F        [a, b]                    a owns the head, b the tail
//   DELTA    [A, B, C]                 A: P1->P2, B: P2->P3, C: P3->P1
//   BP, WBP, BV [a13, a12, a43, a42]   aij runs from portion i to portion j

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weldkit/error.hpp"
#include "weldkit/gauss.hpp"

namespace weldkit {

enum class MoveKind : std::uint8_t { R1, R2, R3, OC, UC, CC, SC, V, SV, VC, SR, F, DELTA, BP, WBP, BV };

inline constexpr std::array<MoveKind, 16> kAllMoveKinds{
    MoveKind::R1, MoveKind::R2, MoveKind::R3, MoveKind::OC, MoveKind::UC,    MoveKind::CC, MoveKind::SC, MoveKind::V,
    MoveKind::SV, MoveKind::VC, MoveKind::SR, MoveKind::F,  MoveKind::DELTA, MoveKind::BP, MoveKind::WBP, MoveKind::BV};

/// Welded Reidemeister moves: the moves every welded quotient includes.
inline constexpr std::array<MoveKind, 4> kWReid{MoveKind::R1, MoveKind::R2, MoveKind::R3, MoveKind::OC};

enum class Direction : std::uint8_t { Forward, Backward };

inline std::string_view to_string(MoveKind k) {
  static constexpr std::array<std::string_view, 16> names{"R1", "R2", "R3", "OC", "UC", "CC", "SC",    "V",
                                                          "SV", "VC", "SR", "F",  "DELTA", "BP", "WBP", "BV"};
  return names[static_cast<std::size_t>(k)];
}

inline std::string_view to_string(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

inline std::optional<MoveKind> parse_move_kind(std::string_view s) {
  std::string up(s);
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (MoveKind k : kAllMoveKinds)
    if (to_string(k) == up) return k;
  return std::nullopt;
}

inline std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "forward" || s == "f") return Direction::Forward;
  if (s == "backward" || s == "b") return Direction::Backward;
  return std::nullopt;
}

inline int arity(MoveKind k) {
  switch (k) {
    case MoveKind::R1: case MoveKind::CC: case MoveKind::SC: case MoveKind::V:
    case MoveKind::SV: case MoveKind::VC: case MoveKind::SR: return 1;
    case MoveKind::R2: case MoveKind::OC: case MoveKind::UC: case MoveKind::F: return 2;
    case MoveKind::R3: case MoveKind::DELTA: return 3;
    case MoveKind::BP: case MoveKind::WBP: case MoveKind::BV: return 4;
  }
  return 0;
}

/// Kinds whose backward direction differs from the forward one. The others
/// (OC, UC, CC, SC, VC, SR) are involutions written in the forward direction
/// only.
inline bool has_backward(MoveKind k) {
  switch (k) {
    case MoveKind::R1: case MoveKind::R2: case MoveKind::R3: case MoveKind::V: case MoveKind::SV:
    case MoveKind::F: case MoveKind::DELTA: case MoveKind::BP: case MoveKind::WBP: case MoveKind::BV: return true;
    default: return false;
  }
}

inline bool is_deletion_kind(MoveKind k) {
  return k == MoveKind::R1 || k == MoveKind::R2 || k == MoveKind::V || k == MoveKind::SV || k == MoveKind::BV;
}

inline bool is_insertion(MoveKind k, Direction d) { return d == Direction::Backward && is_deletion_kind(k); }

/// Whether a classical diagram stays classical: crossing changes, R3 and
/// R1/R2 deletions do. Insertions may join far-apart gaps and clear the flag,
/// as do all purely welded moves.
inline bool preserves_classical(MoveKind k, Direction d = Direction::Forward) {
  switch (k) {
    case MoveKind::CC: case MoveKind::SC: case MoveKind::BP: case MoveKind::R3: return true;
    case MoveKind::R1: case MoveKind::R2: return d == Direction::Forward;
    default: return false;
  }
}

struct MoveInstance {
  MoveKind kind = MoveKind::R1;
  Direction direction = Direction::Forward;
  std::vector<int> arrows;    // bound arrow ids in role order (rewrites, deletions)
  std::vector<Endpoint> at;   // insertions: tail, head of each inserted arrow in the result
  std::vector<int> signs;     // insertions: sign of each inserted arrow

  bool operator==(const MoveInstance&) const = default;
  auto operator<=>(const MoveInstance&) const = default;
};

using MoveTrace = std::vector<MoveInstance>;

struct MoveResult {
  GaussDiagram diagram;
  MoveInstance inverse;
  std::vector<int> id_map;    // id_map[old id] = new id, 0 when deleted; index 0 unused
  std::vector<int> inserted;  // new ids of inserted arrows in role order
};

// ---------------------------------------------------------------------------
// Pattern tables

namespace detail {

struct End {
  int role;
  bool tail;
};

/// `upper` sits directly above `lower` on one strand.
struct Adjacency {
  End lower;
  End upper;
};

struct Pattern {
  std::vector<Adjacency> adjacencies;
  // Sign conditions: products of role signs that must equal the given value.
  std::vector<std::pair<std::vector<int>, int>> sign_products;
  bool self_arrow = false;  // single-arrow patterns restricted to self-arrows
};

constexpr End T(int r) { return {r, true}; }
constexpr End H(int r) { return {r, false}; }

inline const Pattern& pattern(MoveKind k, Direction dir) {
  static const Pattern any{};
  static const Pattern self{{}, {}, true};
  static const Pattern r2{{{T(0), T(1)}, {H(0), H(1)}}, {{{0, 1}, -1}}};
  static const Pattern r3f{{{T(2), T(1)}, {H(2), T(0)}, {H(1), H(0)}}, {{{0, 1}, 1}, {{1, 2}, 1}}};
  static const Pattern r3b{{{T(1), T(2)}, {T(0), H(2)}, {H(0), H(1)}}, {{{0, 1}, 1}, {{1, 2}, 1}}};
  static const Pattern oc{{{T(0), T(1)}}, {}};
  static const Pattern uc{{{H(0), H(1)}}, {}};
  static const Pattern ff{{{H(0), T(1)}}, {}};
  static const Pattern fb{{{T(1), H(0)}}, {}};
  static const Pattern df{{{T(0), H(2)}, {T(1), H(0)}, {T(2), H(1)}}, {{{0, 1}, 1}, {{1, 2}, 1}}};
  static const Pattern db{{{H(2), T(0)}, {H(0), T(1)}, {H(1), T(2)}}, {{{0, 1}, 1}, {{1, 2}, 1}}};
  static const Pattern bpf{{{T(1), T(0)}, {H(3), H(1)}, {H(2), H(0)}, {T(3), T(2)}}, {{{1, 2}, 1}, {{0, 3}, 1}}};
  static const Pattern bpb{{{H(1), H(0)}, {T(3), T(1)}, {T(2), T(0)}, {H(3), H(2)}}, {{{1, 2}, 1}, {{0, 3}, 1}}};
  static const Pattern wbpb{{{H(1), H(0)}, {T(3), T(1)}, {T(2), T(0)}, {H(3), H(2)}}, {{{1, 2}, 1}, {{0, 3}, -1}}};
  const bool fwd = dir == Direction::Forward;
  switch (k) {
    case MoveKind::R2: return r2;
    case MoveKind::R3: return fwd ? r3f : r3b;
    case MoveKind::OC: return oc;
    case MoveKind::UC: return uc;
    case MoveKind::F: return fwd ? ff : fb;
    case MoveKind::DELTA: return fwd ? df : db;
    case MoveKind::BP: return fwd ? bpf : bpb;
    case MoveKind::WBP: return fwd ? bpf : wbpb;
    case MoveKind::BV: return bpf;
    case MoveKind::SC: case MoveKind::SV: return self;
    default: return any;  // R1 is special-cased; CC, V, VC, SR match any arrow
  }
}

inline const Endpoint& end_of(const Arrow& a, bool tail) { return tail ? a.tail : a.head; }

inline bool directly_below(const Endpoint& lo, const Endpoint& hi) {
  return lo.strand == hi.strand && lo.position + 1 == hi.position;
}

/// Why `ids` fails the (kind, dir) pattern on d, or nullopt if it matches.
inline std::optional<std::string> pattern_mismatch(const GaussDiagram& d, MoveKind kind, Direction dir,
                                                   std::span<const int> ids) {
  if (static_cast<int>(ids.size()) != arity(kind))
    return "expected " + std::to_string(arity(kind)) + " arrows for " + std::string(to_string(kind));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!d.has_arrow(ids[i])) return "no arrow with id " + std::to_string(ids[i]);
    for (std::size_t j = 0; j < i; ++j)
      if (ids[i] == ids[j]) return "arrow " + std::to_string(ids[i]) + " bound twice";
  }
  auto arrow = [&](int role) -> const Arrow& { return d.arrow(ids[static_cast<std::size_t>(role)]); };
  if (kind == MoveKind::R1) {
    const Arrow& a = arrow(0);
    if (!a.self()) return "R1 needs a self-arrow";
    if (std::abs(a.tail.position - a.head.position) != 1) return "R1 needs adjacent tail and head";
    return std::nullopt;
  }
  const Pattern& p = pattern(kind, dir);
  if (p.self_arrow && !arrow(0).self()) return std::string(to_string(kind)) + " needs a self-arrow";
  for (const auto& [lo, hi] : p.adjacencies) {
    if (!directly_below(end_of(arrow(lo.role), lo.tail), end_of(arrow(hi.role), hi.tail)))
      return std::string(hi.tail ? "tail" : "head") + " of arrow " + std::to_string(arrow(hi.role).id) +
             " is not directly above the " + (lo.tail ? "tail" : "head") + " of arrow " +
             std::to_string(arrow(lo.role).id);
  }
  for (const auto& [roles, value] : p.sign_products) {
    int prod = 1;
    for (int r : roles) prod *= arrow(r).sign;
    if (prod != value) return "sign condition fails";
  }
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Insertion placement

/// A gap on a strand of the current diagram: gap g lies between positions
/// g-1 and g (gap 0 is the bottom, gap k the top of a strand with k
/// endpoints). Several endpoints in one gap are stacked by `order`.
struct GapSlot {
  int strand = 1;
  int gap = 0;
  int order = 0;
};

/// Positions the given new endpoints take in the diagram obtained by
/// inserting them into d.
inline std::vector<Endpoint> place_insertions(const GaussDiagram& d, std::span<const GapSlot> slots) {
  std::vector<Endpoint> out;
  out.reserve(slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const GapSlot& s = slots[k];
    if (s.strand < 1 || s.strand > d.strands() || s.gap < 0 || s.gap > d.endpoint_count(s.strand))
      throw MoveError("gap out of range");
    int pos = s.gap;
    for (std::size_t j = 0; j < slots.size(); ++j) {
      const GapSlot& o = slots[j];
      if (j == k || o.strand != s.strand) continue;
      if (std::tie(o.gap, o.order, j) < std::tie(s.gap, s.order, k)) ++pos;
    }
    out.push_back({s.strand, pos});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Application

namespace detail {

inline MoveResult apply_insertion(const GaussDiagram& d, const MoveInstance& m) {
  const int k = arity(m.kind);
  if (!m.arrows.empty()) throw MoveError("insertions bind no arrows");
  if (static_cast<int>(m.at.size()) != 2 * k)
    throw MoveError("insertion needs " + std::to_string(2 * k) + " endpoints");
  if (static_cast<int>(m.signs.size()) != k) throw MoveError("insertion needs " + std::to_string(k) + " signs");
  for (int s : m.signs)
    if (s != 1 && s != -1) throw MoveError("signs must be + or -");
  const int n = d.strands();
  std::vector<std::vector<int>> taken(static_cast<std::size_t>(n) + 1);
  for (const Endpoint& e : m.at) {
    if (e.strand < 1 || e.strand > n) throw MoveError("strand " + std::to_string(e.strand) + " out of range");
    taken[static_cast<std::size_t>(e.strand)].push_back(e.position);
  }
  for (int s = 1; s <= n; ++s) {
    auto& v = taken[static_cast<std::size_t>(s)];
    std::sort(v.begin(), v.end());
    const int total = d.endpoint_count(s) + static_cast<int>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 0 || v[i] >= total) throw MoveError("position " + to_string(Endpoint{s, v[i]}) + " out of range");
      if (i > 0 && v[i] == v[i - 1]) throw MoveError("position " + to_string(Endpoint{s, v[i]}) + " used twice");
    }
  }
  // Old endpoint at position p moves to the p-th free slot of the result.
  auto shifted = [&](const Endpoint& e) {
    int pos = e.position;
    for (int t : taken[static_cast<std::size_t>(e.strand)]) {
      if (t <= pos) ++pos;
      else break;
    }
    return Endpoint{e.strand, pos};
  };
  std::vector<Arrow> arrows;
  arrows.reserve(d.size() + static_cast<std::size_t>(k));
  for (Arrow a : d.arrows()) {
    a.tail = shifted(a.tail);
    a.head = shifted(a.head);
    arrows.push_back(a);
  }
  for (int r = 0; r < k; ++r) {
    Arrow a;
    a.id = static_cast<int>(d.size()) + r + 1;
    a.sign = m.signs[static_cast<std::size_t>(r)];
    a.tail = m.at[static_cast<std::size_t>(2 * r)];
    a.head = m.at[static_cast<std::size_t>(2 * r + 1)];
    arrows.push_back(a);
  }
  auto [result, ids] = GaussDiagram::canonicalize(n, std::move(arrows), false);
  MoveResult out{std::move(result), {}, {}, {}};
  out.id_map.assign(d.size() + 1, 0);
  for (std::size_t i = 0; i < d.size(); ++i) out.id_map[i + 1] = ids[i];
  out.inserted.assign(ids.begin() + static_cast<std::ptrdiff_t>(d.size()), ids.end());
  if (auto why = pattern_mismatch(out.diagram, m.kind, Direction::Forward, out.inserted))
    throw MoveError("inserted arrows do not form a " + std::string(to_string(m.kind)) + " pattern: " + *why);
  out.inverse = MoveInstance{m.kind, Direction::Forward, out.inserted, {}, {}};
  return out;
}

inline MoveResult apply_rewrite(const GaussDiagram& d, const MoveInstance& m) {
  if (!m.at.empty() || !m.signs.empty()) throw MoveError("only insertions carry endpoints and signs");
  if (auto why = pattern_mismatch(d, m.kind, m.direction, m.arrows))
    throw MoveError(std::string(to_string(m.kind)) + " " + std::string(to_string(m.direction)) + ": " + *why);
  std::vector<Arrow> arrows(d.arrows().begin(), d.arrows().end());
  auto role = [&](int r) -> Arrow& { return arrows[static_cast<std::size_t>(m.arrows[static_cast<std::size_t>(r)] - 1)]; };
  MoveInstance inverse{m.kind, m.direction, m.arrows, {}, {}};
  const bool deletion = m.direction == Direction::Forward && is_deletion_kind(m.kind);
  if (deletion) {
    inverse.direction = Direction::Backward;
    inverse.arrows.clear();
    for (int id : m.arrows) {
      const Arrow& a = d.arrow(id);
      inverse.at.push_back(a.tail);
      inverse.at.push_back(a.head);
      inverse.signs.push_back(a.sign);
    }
    std::vector<Arrow> kept;
    for (const Arrow& a : arrows)
      if (std::find(m.arrows.begin(), m.arrows.end(), a.id) == m.arrows.end()) kept.push_back(a);
    arrows = std::move(kept);
  } else {
    auto reverse = [](Arrow& a) { std::swap(a.tail, a.head); };
    switch (m.kind) {
      case MoveKind::CC: case MoveKind::SC: reverse(role(0)); role(0).sign = -role(0).sign; break;
      case MoveKind::VC: reverse(role(0)); break;
      case MoveKind::SR: role(0).sign = -role(0).sign; break;
      case MoveKind::BP:
      case MoveKind::WBP:
        for (int r = 0; r < 4; ++r) {
          reverse(role(r));
          if (m.kind == MoveKind::BP || r != 0) role(r).sign = -role(r).sign;
        }
        break;
      default: {
        // Swap moves exchange the two endpoints of every adjacency.
        for (const auto& [lo, hi] : pattern(m.kind, m.direction).adjacencies) {
          Endpoint& a = lo.tail ? role(lo.role).tail : role(lo.role).head;
          Endpoint& b = hi.tail ? role(hi.role).tail : role(hi.role).head;
          std::swap(a, b);
        }
        break;
      }
    }
    if (has_backward(m.kind))
      inverse.direction = m.direction == Direction::Forward ? Direction::Backward : Direction::Forward;
    if (m.kind == MoveKind::OC || m.kind == MoveKind::UC) std::swap(inverse.arrows[0], inverse.arrows[1]);
  }
  std::vector<int> old_ids;
  old_ids.reserve(arrows.size());
  for (const Arrow& a : arrows) old_ids.push_back(a.id);
  const bool classical = d.classical() && preserves_classical(m.kind, m.direction);
  auto [result, ids] = GaussDiagram::canonicalize(d.strands(), std::move(arrows), classical);
  MoveResult out{std::move(result), std::move(inverse), {}, {}};
  out.id_map.assign(d.size() + 1, 0);
  for (std::size_t i = 0; i < old_ids.size(); ++i) out.id_map[static_cast<std::size_t>(old_ids[i])] = ids[i];
  for (int& id : out.inverse.arrows) id = out.id_map[static_cast<std::size_t>(id)];
  return out;
}

}  // namespace detail

/// Applies m to d, reporting the inverse instance and the id relabelling.
inline MoveResult apply_move_tracked(const GaussDiagram& d, const MoveInstance& m) {
  if (m.direction == Direction::Backward && !has_backward(m.kind))
    throw MoveError(std::string(to_string(m.kind)) + " is an involution; use the forward direction");
  if (is_insertion(m.kind, m.direction)) return detail::apply_insertion(d, m);
  return detail::apply_rewrite(d, m);
}

inline GaussDiagram apply_move(const GaussDiagram& d, const MoveInstance& m) {
  return apply_move_tracked(d, m).diagram;
}

/// The instance undoing m on d.
inline MoveInstance inverse_move(const GaussDiagram& d, const MoveInstance& m) {
  return apply_move_tracked(d, m).inverse;
}

inline bool matches(const GaussDiagram& d, const MoveInstance& m) {
  try {
    apply_move_tracked(d, m);
    return true;
  } catch (const MoveError&) {
    return false;
  }
}

inline GaussDiagram replay_trace(const GaussDiagram& d, std::span<const MoveInstance> trace) {
  GaussDiagram cur = d;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    try {
      cur = apply_move(cur, trace[i]);
    } catch (const MoveError& e) {
      throw TraceError(i, e.what());
    }
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Site enumeration

/// Which insertion sites enumerate_sites lists. `Small` lists every R1, R2,
/// V and SV insertion; `All` adds every BV insertion, whose count grows with
/// the fourth power of the number of gaps.
enum class InsertionPolicy : std::uint8_t { None, Small, All };

struct SiteOptions {
  InsertionPolicy insertions = InsertionPolicy::Small;
  // Insertions producing more arrows than this are skipped.
  std::size_t max_arrows = std::numeric_limits<std::size_t>::max();
};

namespace detail {

/// Completes a partial role binding by walking adjacencies from bound roles.
inline bool propagate(const GaussDiagram& d, const Pattern& p, std::vector<int>& ids) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [lo, hi] : p.adjacencies) {
      const int a = ids[static_cast<std::size_t>(lo.role)];
      const int b = ids[static_cast<std::size_t>(hi.role)];
      if ((a == 0) == (b == 0)) continue;
      const End& known = a ? lo : hi;
      const End& unknown = a ? hi : lo;
      const Endpoint& e = end_of(d.arrow(a ? a : b), known.tail);
      auto other = d.at(e.strand, e.position + (a ? 1 : -1));
      if (!other || other->tail != unknown.tail) return false;
      ids[static_cast<std::size_t>(unknown.role)] = other->arrow;
      progress = true;
    }
  }
  return std::ranges::none_of(ids, [](int id) { return id == 0; });
}

inline void rewrite_sites(const GaussDiagram& d, MoveKind kind, Direction dir, std::vector<MoveInstance>& out) {
  const int k = arity(kind);
  for (const Arrow& a : d.arrows()) {
    std::vector<int> ids(static_cast<std::size_t>(k), 0);
    ids[0] = a.id;
    if (k > 1 && !propagate(d, pattern(kind, dir), ids)) continue;
    if (pattern_mismatch(d, kind, dir, ids)) continue;
    if (kind == MoveKind::DELTA && (ids[0] > ids[1] || ids[0] > ids[2])) continue;  // one rotation per site
    out.push_back(MoveInstance{kind, dir, std::move(ids), {}, {}});
  }
}

/// Gap slots for a BV insertion whose portions P1..P4 take the given
/// (strand, gap) places, stacked by `rank` where places coincide. Slot order
/// is tail, head for roles 13, 12, 43, 42.
inline std::vector<GapSlot> bv_insertion_slots(const std::array<std::pair<int, int>, 4>& portions,
                                               const std::array<int, 4>& rank) {
  auto slot = [&](int portion, int within) {
    const auto& [s, g] = portions[static_cast<std::size_t>(portion)];
    return GapSlot{s, g, 2 * rank[static_cast<std::size_t>(portion)] + within};
  };
  // 13 = P1.1 -> P3.1, 12 = P1.0 -> P2.1, 43 = P4.1 -> P3.0, 42 = P4.0 -> P2.0.
  return {slot(0, 1), slot(2, 1), slot(0, 0), slot(1, 1), slot(3, 1), slot(2, 0), slot(3, 0), slot(1, 0)};
}

inline void insertion_sites(const GaussDiagram& d, MoveKind kind, std::vector<MoveInstance>& out) {
  const int n = d.strands();
  auto emit = [&](std::vector<GapSlot> slots, std::vector<int> signs) {
    MoveInstance m{kind, Direction::Backward, {}, place_insertions(d, slots), std::move(signs)};
    if (matches(d, m)) out.push_back(std::move(m));
  };
  auto gaps = [&](int s) { return d.endpoint_count(s) + 1; };
  switch (kind) {
    case MoveKind::R1:
      for (int s = 1; s <= n; ++s)
        for (int g = 0; g < gaps(s); ++g)
          for (int tail_first : {1, 0})
            for (int sign : {1, -1})
              emit({{s, g, tail_first ? 0 : 1}, {s, g, tail_first ? 1 : 0}}, {sign});
      break;
    case MoveKind::V:
    case MoveKind::SV:
      for (int ts = 1; ts <= n; ++ts)
        for (int tg = 0; tg < gaps(ts); ++tg)
          for (int hs = 1; hs <= n; ++hs) {
            if (kind == MoveKind::SV && hs != ts) continue;
            for (int hg = 0; hg < gaps(hs); ++hg)
              for (int tail_first : {1, 0}) {
                if (!tail_first && (hs != ts || hg != tg)) continue;
                for (int sign : {1, -1}) emit({{ts, tg, tail_first ? 0 : 1}, {hs, hg, tail_first ? 1 : 0}}, {sign});
              }
          }
      break;
    case MoveKind::R2:
      for (int ts = 1; ts <= n; ++ts)
        for (int tg = 0; tg < gaps(ts); ++tg)
          for (int hs = 1; hs <= n; ++hs)
            for (int hg = 0; hg < gaps(hs); ++hg)
              for (int tails_first : {1, 0}) {
                if (!tails_first && (hs != ts || hg != tg)) continue;
                const int t0 = tails_first ? 0 : 2;
                const int h0 = tails_first ? 2 : 0;
                for (int sign : {1, -1})
                  emit({{ts, tg, t0}, {hs, hg, h0}, {ts, tg, t0 + 1}, {hs, hg, h0 + 1}}, {sign, -sign});
              }
      break;
    case MoveKind::BV: {
      std::vector<std::pair<int, int>> all;
      for (int s = 1; s <= n; ++s)
        for (int g = 0; g < gaps(s); ++g) all.emplace_back(s, g);
      for (const auto& p1 : all)
        for (const auto& p2 : all)
          for (const auto& p3 : all)
            for (const auto& p4 : all) {
              // The stack order matters only when gaps coincide; the caller
              // removes duplicates.
              std::array<int, 4> rank{0, 1, 2, 3};
              do {
                const auto slots = bv_insertion_slots({p1, p2, p3, p4}, rank);
                for (int s13 : {1, -1})
                  for (int s12 : {1, -1}) emit(slots, {s13, s12, s12, s13});
              } while (std::next_permutation(rank.begin(), rank.end()));
            }
      break;
    }
    default: break;
  }
}

}  // namespace detail

/// Every instance of `kind` applicable to d, in a deterministic order.
inline std::vector<MoveInstance> enumerate_sites(const GaussDiagram& d, MoveKind kind, const SiteOptions& opts = {}) {
  std::vector<MoveInstance> out;
  if (kind == MoveKind::R1) {
    for (const Arrow& a : d.arrows())
      if (!detail::pattern_mismatch(d, kind, Direction::Forward, std::vector<int>{a.id}))
        out.push_back(MoveInstance{kind, Direction::Forward, {a.id}, {}, {}});
  } else {
    detail::rewrite_sites(d, kind, Direction::Forward, out);
    if (has_backward(kind) && !is_deletion_kind(kind)) detail::rewrite_sites(d, kind, Direction::Backward, out);
  }
  if (is_deletion_kind(kind) && opts.insertions != InsertionPolicy::None &&
      d.size() + static_cast<std::size_t>(arity(kind)) <= opts.max_arrows &&
      (kind != MoveKind::BV || opts.insertions == InsertionPolicy::All))
    detail::insertion_sites(d, kind, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Trace text format

inline std::string serialize_move(const MoveInstance& m) {
  std::string s = "move " + std::string(to_string(m.kind)) + " " + std::string(to_string(m.direction)) + " arrows=";
  for (std::size_t i = 0; i < m.arrows.size(); ++i) s += (i ? "," : "") + std::to_string(m.arrows[i]);
  s += " at=";
  for (std::size_t i = 0; i < m.at.size(); ++i) s += (i ? "," : "") + to_string(m.at[i]);
  if (!m.signs.empty()) {
    s += " signs=";
    for (std::size_t i = 0; i < m.signs.size(); ++i) s += std::string(i ? "," : "") + (m.signs[i] > 0 ? "+" : "-");
  }
  return s;
}

inline std::string serialize_trace(std::span<const MoveInstance> trace) {
  std::string out;
  for (const auto& m : trace) out += serialize_move(m) + "\n";
  return out;
}

/// Parses trace lines `move <kind> <forward|backward> arrows=<ids> at=<s.p,...> [signs=<+|-,...>]`.
inline MoveTrace parse_trace(std::string_view text) {
  MoveTrace trace;
  for (const auto& line : detail::split_lines(text)) {
    auto toks = detail::tokenize(line.text);
    if (toks.empty()) continue;
    auto fail = [&](const detail::Token& t, const std::string& msg) { throw ParseError(line.number, t.column, msg); };
    if (toks[0].text != "move") fail(toks[0], "expected 'move'");
    if (toks.size() < 3) fail(toks.back(), "expected 'move <kind> <direction> ...'");
    MoveInstance m;
    auto kind = parse_move_kind(toks[1].text);
    if (!kind) fail(toks[1], "unknown move kind '" + std::string(toks[1].text) + "'");
    m.kind = *kind;
    auto dir = parse_direction(toks[2].text);
    if (!dir) fail(toks[2], "direction must be 'forward' or 'backward'");
    m.direction = *dir;
    bool seen_arrows = false, seen_at = false, seen_signs = false;
    for (std::size_t i = 3; i < toks.size(); ++i) {
      const auto& tok = toks[i];
      const std::size_t eq = tok.text.find('=');
      if (eq == std::string_view::npos) fail(tok, "expected key=value");
      const std::string_view key = tok.text.substr(0, eq);
      std::string_view value = tok.text.substr(eq + 1);
      std::vector<std::string_view> items;
      while (!value.empty()) {
        const std::size_t comma = value.find(',');
        items.push_back(value.substr(0, comma));
        if (comma == std::string_view::npos) break;
        value.remove_prefix(comma + 1);
      }
      if (key == "arrows" && !seen_arrows) {
        seen_arrows = true;
        for (auto it : items) {
          auto id = detail::parse_int(it);
          if (!id || *id < 1) fail(tok, "bad arrow id '" + std::string(it) + "'");
          m.arrows.push_back(*id);
        }
      } else if (key == "at" && !seen_at) {
        seen_at = true;
        for (auto it : items) {
          auto e = detail::parse_endpoint(it);
          if (!e) fail(tok, "bad endpoint '" + std::string(it) + "'");
          m.at.push_back(*e);
        }
      } else if (key == "signs" && !seen_signs) {
        seen_signs = true;
        for (auto it : items) {
          if (it == "+") m.signs.push_back(1);
          else if (it == "-") m.signs.push_back(-1);
          else fail(tok, "bad sign '" + std::string(it) + "'");
        }
      } else {
        fail(tok, "unexpected field '" + std::string(key) + "'");
      }
    }
    trace.push_back(std::move(m));
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Macro expansion of derived moves into {R1, R2, R3, OC, BV}

/// Applies moves to a running diagram and records them. Arrows of interest
/// are followed through canonical relabelling by handles.
class TraceBuilder {
 public:
  using Handle = std::size_t;

  explicit TraceBuilder(GaussDiagram d) : current_(std::move(d)) {}

  const GaussDiagram& diagram() const noexcept { return current_; }
  const MoveTrace& trace() const noexcept { return trace_; }
  MoveTrace take() { return std::move(trace_); }

  Handle track(int id) {
    ids_.push_back(id);
    return ids_.size() - 1;
  }
  int id(Handle h) const { return ids_.at(h); }
  /// Points every handle following arrow `from` at arrow `to`.
  void redirect(int from, int to) {
    for (int& id : ids_)
      if (id == from) id = to;
  }
  const Arrow& arrow(Handle h) const { return current_.arrow(id(h)); }

  MoveResult apply(const MoveInstance& m) {
    MoveResult r = apply_move_tracked(current_, m);
    trace_.push_back(m);
    current_ = r.diagram;
    for (int& id : ids_)
      if (id > 0) id = r.id_map.at(static_cast<std::size_t>(id));
    return r;
  }

 private:
  GaussDiagram current_;
  MoveTrace trace_;
  std::vector<int> ids_;
};

namespace macro {

using Handle = TraceBuilder::Handle;

inline MoveInstance insertion(const GaussDiagram& d, MoveKind k, const std::vector<GapSlot>& slots,
                              std::vector<int> signs) {
  return MoveInstance{k, Direction::Backward, {}, place_insertions(d, slots), std::move(signs)};
}

/// BV deletion after which handles on `replaced` follow `survivor`.
inline void bv_delete(TraceBuilder& tb, Handle a13, Handle a12, Handle a43, Handle a42, Handle replaced,
                      Handle survivor) {
  MoveInstance m{MoveKind::BV, Direction::Forward, {tb.id(a13), tb.id(a12), tb.id(a43), tb.id(a42)}, {}, {}};
  tb.redirect(tb.id(replaced), tb.id(survivor));
  tb.apply(m);
}

/// CC: an R2 pair parallel to the reversed arrow just above both ends, a curl
/// above each end of the arrow, and a BV deletion that leaves the upper arrow
/// of the pair. The handle follows the replacement arrow.
inline void cc(TraceBuilder& tb, Handle a) {
  const Arrow A = tb.arrow(a);
  const int i = A.tail.strand, j = A.head.strand;
  auto r = tb.apply(insertion(tb.diagram(), MoveKind::R2,
                              {{j, A.head.position + 1, 0}, {i, A.tail.position + 1, 0},
                               {j, A.head.position + 1, 1}, {i, A.tail.position + 1, 1}},
                              {A.sign, -A.sign}));
  const Handle b = tb.track(r.inserted[0]), c = tb.track(r.inserted[1]);
  const int ti = tb.arrow(a).tail.position + 1;
  r = tb.apply(insertion(tb.diagram(), MoveKind::R1, {{i, ti, 0}, {i, ti, 1}}, {1}));
  const Handle s1 = tb.track(r.inserted[0]);
  const int hj = tb.arrow(a).head.position + 1;
  r = tb.apply(insertion(tb.diagram(), MoveKind::R1, {{j, hj, 1}, {j, hj, 0}}, {1}));
  const Handle s2 = tb.track(r.inserted[0]);
  bv_delete(tb, b, s2, s1, a, a, c);
}

/// SR: a curl above the tail, an R2 pair threaded through it and ending just
/// below the head, a second curl, and a BV deletion leaving the lower arrow of
/// the pair.
inline void sr(TraceBuilder& tb, Handle a) {
  const Arrow A = tb.arrow(a);
  const int i = A.tail.strand, j = A.head.strand, e = A.sign;
  auto r = tb.apply(insertion(tb.diagram(), MoveKind::R1, {{i, A.tail.position + 1, 0}, {i, A.tail.position + 1, 1}}, {e}));
  const Handle u = tb.track(r.inserted[0]);
  const int gu = tb.arrow(u).head.position, gh = tb.arrow(a).head.position;
  r = tb.apply(insertion(tb.diagram(), MoveKind::R2, {{i, gu, 0}, {j, gh, 0}, {i, gu, 1}, {j, gh, 1}}, {-e, e}));
  const Handle x = tb.track(r.inserted[0]), y = tb.track(r.inserted[1]);
  const int gy = tb.arrow(y).tail.position + 1;
  r = tb.apply(insertion(tb.diagram(), MoveKind::R1, {{i, gy, 0}, {i, gy, 1}}, {e}));
  const Handle w = tb.track(r.inserted[0]);
  bv_delete(tb, u, a, w, y, a, x);
}

inline void vc(TraceBuilder& tb, Handle a) {
  cc(tb, a);
  sr(tb, a);
}

/// Swaps the two tails of [lower, upper] by OC.
inline void oc(TraceBuilder& tb, Handle lower, Handle upper) {
  tb.apply(MoveInstance{MoveKind::OC, Direction::Forward, {tb.id(lower), tb.id(upper)}, {}, {}});
}

/// F: a's head and b's tail are adjacent. CC turns the head into a tail, OC
/// swaps the tails, and CC restores the arrow.
inline void f(TraceBuilder& tb, Handle a, Handle b, Direction dir) {
  cc(tb, a);
  if (dir == Direction::Forward) oc(tb, a, b);
  else oc(tb, b, a);
  cc(tb, a);
}

/// UC: heads of [lower, upper] become tails, are swapped, and turn back.
inline void uc(TraceBuilder& tb, Handle lower, Handle upper) {
  cc(tb, lower);
  cc(tb, upper);
  oc(tb, lower, upper);
  cc(tb, lower);
  cc(tb, upper);
}

/// Exchanges the endpoint at (s, p) with the one directly above it.
inline void swap_up(TraceBuilder& tb, int strand, int position) {
  const GaussDiagram& d = tb.diagram();
  const auto lo = d.at(strand, position), hi = d.at(strand, position + 1);
  if (!lo || !hi) throw InternalError("swap_up: no endpoint pair at " + to_string(Endpoint{strand, position}));
  if (lo->arrow == hi->arrow) throw InternalError("swap_up: both endpoints belong to one arrow");
  const Handle l = tb.track(lo->arrow), h = tb.track(hi->arrow);
  if (lo->tail && hi->tail) oc(tb, l, h);
  else if (!lo->tail && !hi->tail) uc(tb, l, h);
  else if (!lo->tail) f(tb, l, h, Direction::Forward);
  else f(tb, h, l, Direction::Backward);
}

/// SV deletion of a self-arrow: its upper endpoint walks down until it is
/// adjacent to the lower one, then R1 removes the curl.
inline void sv_delete(TraceBuilder& tb, Handle a) {
  for (;;) {
    const Arrow A = tb.arrow(a);
    const int lo = std::min(A.tail.position, A.head.position);
    const int hi = std::max(A.tail.position, A.head.position);
    if (hi == lo + 1) break;
    swap_up(tb, A.tail.strand, hi - 1);
  }
  tb.apply(MoveInstance{MoveKind::R1, Direction::Forward, {tb.id(a)}, {}, {}});
}

/// SV insertion at the given result endpoints: an R1 curl at the lower end
/// whose upper endpoint then walks up.
inline void sv_insert(TraceBuilder& tb, Endpoint tail, Endpoint head, int sign) {
  if (tail.strand != head.strand) throw MoveError("SV inserts self-arrows only");
  const int s = tail.strand;
  const int lo = std::min(tail.position, head.position), hi = std::max(tail.position, head.position);
  const bool tail_low = tail.position < head.position;
  const int gap = lo;
  if (gap > tb.diagram().endpoint_count(s)) throw MoveError("SV insertion position out of range");
  tb.apply(insertion(tb.diagram(), MoveKind::R1, {{s, gap, tail_low ? 0 : 1}, {s, gap, tail_low ? 1 : 0}}, {sign}));
  for (int p = lo + 1; p < hi; ++p) swap_up(tb, s, p);
}

}  // namespace macro

/// Kinds macro_trace can expand into primitives.
inline bool has_macro(MoveKind k) {
  switch (k) {
    case MoveKind::F: case MoveKind::UC: case MoveKind::SR: case MoveKind::VC: case MoveKind::SV:
    case MoveKind::CC: case MoveKind::SC: return true;
    default: return false;
  }
}

/// Primitive moves: welded Reidemeister moves plus BV.
inline bool is_primitive(MoveKind k) {
  return k == MoveKind::R1 || k == MoveKind::R2 || k == MoveKind::R3 || k == MoveKind::OC || k == MoveKind::BV;
}

/// Expands a derived move into a trace over {R1, R2, R3, OC, BV} whose replay
/// from d gives apply_move(d, site) up to the provenance flag. Primitive
/// instances expand to themselves.
inline MoveTrace macro_trace(const GaussDiagram& d, const MoveInstance& site) {
  const MoveResult expected = apply_move_tracked(d, site);
  if (is_primitive(site.kind)) return {site};
  if (!has_macro(site.kind)) throw MoveError("no primitive expansion for " + std::string(to_string(site.kind)));
  TraceBuilder tb(d);
  std::vector<macro::Handle> h;
  for (int id : site.arrows) h.push_back(tb.track(id));
  switch (site.kind) {
    case MoveKind::CC: case MoveKind::SC: macro::cc(tb, h[0]); break;
    case MoveKind::SR: macro::sr(tb, h[0]); break;
    case MoveKind::VC: macro::vc(tb, h[0]); break;
    case MoveKind::F: macro::f(tb, h[0], h[1], site.direction); break;
    case MoveKind::UC: macro::uc(tb, h[0], h[1]); break;
    case MoveKind::SV:
      if (site.direction == Direction::Forward) macro::sv_delete(tb, h[0]);
      else macro::sv_insert(tb, site.at[0], site.at[1], site.signs[0]);
      break;
    default: break;
  }
  if (!same_diagram(tb.diagram(), expected.diagram))
    throw InternalError("macro expansion of " + std::string(to_string(site.kind)) + " diverged from the direct move");
  return tb.take();
}

inline MoveTrace macro_trace(MoveKind kind, const MoveInstance& site, const GaussDiagram& d) {
  if (site.kind != kind) throw MoveError("site kind does not match the requested macro");
  return macro_trace(d, site);
}

}  // namespace weldkit
