#pragma once

// Bounded bidirectional breadth-first search for move-sequence certificates.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "weldkit/error.hpp"
#include "weldkit/gauss.hpp"
#include "weldkit/moves.hpp"

namespace weldkit {

struct SearchBudget {
  int max_depth = 10;
  std::size_t max_nodes = 500000;
  std::vector<MoveKind> moveset;  // added to R1, R2, R3, OC
  std::size_t max_arrows = 6;
  InsertionPolicy insertions = InsertionPolicy::Small;
};

struct Certificate {
  MoveTrace trace;
  std::size_t nodes_visited = 0;
  int depth = 0;
};

/// R1, R2, R3, OC plus the budget's moveset, in MoveKind order.
inline std::vector<MoveKind> search_kinds(const SearchBudget& b) {
  std::vector<MoveKind> kinds = b.moveset;
  for (MoveKind k : kWReid) kinds.push_back(k);
  std::sort(kinds.begin(), kinds.end());
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
  return kinds;
}

/// True iff replaying c from d1 succeeds and lands on d2. A reason for any
/// failure is stored in `why` when given.
inline bool verify_certificate(const GaussDiagram& d1, const GaussDiagram& d2, const Certificate& c,
                               std::string* why = nullptr) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (d1.strands() != d2.strands()) return fail("strand counts differ");
  try {
    if (!same_diagram(replay_trace(d1, c.trace), d2)) return fail("replay ends at a different diagram");
  } catch (const TraceError& e) {
    return fail(e.what());
  }
  return true;
}

namespace detail {

struct KeyHash {
  std::size_t operator()(const std::vector<std::int32_t>& k) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int32_t x : k) {
      h ^= static_cast<std::uint32_t>(x);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// One BFS tree. `via` is the move leading from the parent to the node on
/// the forward side, and from the node to the parent on the backward side.
struct SearchTree {
  struct Node {
    int parent = -1;
    MoveInstance via;
    int depth = 0;
  };
  std::vector<Node> nodes;
  std::vector<GaussDiagram> frontier;
  std::vector<int> frontier_ids;
  std::unordered_map<std::vector<std::int32_t>, int, KeyHash> index;
  int level = 0;

  explicit SearchTree(const GaussDiagram& root) {
    nodes.push_back({});
    frontier.push_back(root.with_classical(false));
    frontier_ids.push_back(0);
    index.emplace(root.key(), 0);
  }

  /// Moves from the root to node i.
  MoveTrace path_from_root(int i) const {
    MoveTrace out;
    for (; nodes[static_cast<std::size_t>(i)].parent >= 0; i = nodes[static_cast<std::size_t>(i)].parent)
      out.push_back(nodes[static_cast<std::size_t>(i)].via);
    std::reverse(out.begin(), out.end());
    return out;
  }
  /// Moves from node i back to the root.
  MoveTrace path_to_root(int i) const {
    MoveTrace out;
    for (; nodes[static_cast<std::size_t>(i)].parent >= 0; i = nodes[static_cast<std::size_t>(i)].parent)
      out.push_back(nodes[static_cast<std::size_t>(i)].via);
    return out;
  }
};

}  // namespace detail

/// Searches for a move sequence from d1 to d2 using R1, R2, R3, OC and the
/// budget's moveset. Both ends grow breadth-first; the side with the smaller
/// frontier expands next and children are generated in (kind, direction,
/// site) order, so the result depends only on the inputs and the budget.
/// Returns nothing when the budget runs out; that proves nothing.
inline std::optional<Certificate> connect(const GaussDiagram& d1, const GaussDiagram& d2, const SearchBudget& budget,
                                          std::stop_token st = {}) {
  if (d1.strands() != d2.strands()) throw InputError("diagrams have different strand counts");
  if (budget.max_depth < 1 || budget.max_nodes < 1 || budget.max_arrows < 1)
    throw InputError("search budget bounds must be positive");
  const std::size_t start_arrows = std::max(d1.size(), d2.size());
  if (start_arrows > budget.max_arrows)
    throw InputError("an input has more arrows than the search budget allows");
  const auto kinds = search_kinds(budget);
  SiteOptions opts{budget.insertions, budget.max_arrows};

  detail::SearchTree fwd(d1), bwd(d2);
  auto finish = [&](MoveTrace trace) {
    Certificate c{std::move(trace), fwd.nodes.size() + bwd.nodes.size(), 0};
    c.depth = static_cast<int>(c.trace.size());
    std::string why;
    if (!verify_certificate(d1, d2, c, &why)) throw InternalError("search produced an invalid certificate: " + why);
    return c;
  };
  if (same_diagram(d1, d2)) return finish({});

  while (fwd.level + bwd.level < budget.max_depth) {
    const bool forward = fwd.frontier.size() <= bwd.frontier.size();
    detail::SearchTree& side = forward ? fwd : bwd;
    detail::SearchTree& other = forward ? bwd : fwd;
    if (side.frontier.empty()) return std::nullopt;
    std::vector<GaussDiagram> next;
    std::vector<int> next_ids;
    for (std::size_t f = 0; f < side.frontier.size(); ++f) {
      const GaussDiagram& d = side.frontier[f];
      const int parent = side.frontier_ids[f];
      for (MoveKind k : kinds) {
        for (const MoveInstance& m : enumerate_sites(d, k, opts)) {
          if (st.stop_requested()) throw Cancelled();
          MoveResult r = apply_move_tracked(d, m);
          if (r.diagram.size() > budget.max_arrows) continue;
          auto key = r.diagram.key();
          if (side.index.contains(key)) continue;
          const int id = static_cast<int>(side.nodes.size());
          side.nodes.push_back({parent, forward ? m : r.inverse, side.level + 1});
          if (auto hit = other.index.find(key); hit != other.index.end()) {
            MoveTrace trace;
            if (forward) {
              trace = fwd.path_from_root(id);
              const auto rest = bwd.path_to_root(hit->second);
              trace.insert(trace.end(), rest.begin(), rest.end());
            } else {
              trace = fwd.path_from_root(hit->second);
              const auto rest = bwd.path_to_root(id);
              trace.insert(trace.end(), rest.begin(), rest.end());
            }
            return finish(std::move(trace));
          }
          side.index.emplace(std::move(key), id);
          if (fwd.nodes.size() + bwd.nodes.size() >= budget.max_nodes) return std::nullopt;
          next.push_back(std::move(r.diagram));
          next_ids.push_back(id);
        }
      }
    }
    side.frontier = std::move(next);
    side.frontier_ids = std::move(next_ids);
    ++side.level;
  }
  return std::nullopt;
}

}  // namespace weldkit
