#pragma once

// Gauss diagrams of virtual string links on n strands.
//
// Strands are abstract intervals oriented upward; every classical crossing is
// an arrow from its over-strand preimage (tail) to its under-strand preimage
// (head), signed by the crossing sign. Virtual crossings carry no data, so
// virtual Reidemeister, mixed and detour moves are invisible here. Endpoint
// heights are ordinals: a diagram in canonical form occupies exactly the
// positions 0..k-1 on a strand with k endpoints.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <tuple>
#include <vector>

#include "weldkit/error.hpp"

namespace weldkit {

struct Endpoint {
  int strand = 1;    // 1-based
  int position = 0;  // height ordinal, bottom = 0

  auto operator<=>(const Endpoint&) const = default;
};

struct Arrow {
  int id = 0;
  int sign = 1;
  Endpoint tail;
  Endpoint head;

  bool self() const noexcept { return tail.strand == head.strand; }
  bool operator==(const Arrow&) const = default;
};

/// What sits at a slot of a strand.
struct EndRef {
  int arrow = 0;  // arrow id
  bool tail = true;

  bool operator==(const EndRef&) const = default;
};

inline std::string to_string(const Endpoint& e) {
  return std::to_string(e.strand) + "." + std::to_string(e.position);
}

class GaussDiagram {
 public:
  /// The trivial diagram on n strands.
  explicit GaussDiagram(int strands = 1) : n_(strands), classical_(true) {
    if (strands < 1) throw InputError("a diagram needs at least one strand");
    slots_.resize(static_cast<std::size_t>(strands));
  }

  /// Canonical form of an arbitrary arrow set together with the new id of
  /// every input arrow (aligned with the input vector).
  static std::pair<GaussDiagram, std::vector<int>> canonicalize(int strands, std::vector<Arrow> arrows,
                                                                bool classical = false) {
    GaussDiagram d(strands);
    d.classical_ = classical;
    const std::size_t m = arrows.size();
    // Collect per-strand (position, arrow index, is_tail) and rank them.
    std::vector<std::vector<std::tuple<int, std::size_t, bool>>> per(static_cast<std::size_t>(strands));
    for (std::size_t k = 0; k < m; ++k) {
      const Arrow& a = arrows[k];
      if (a.sign != 1 && a.sign != -1) throw InputError("arrow signs must be +1 or -1");
      for (const Endpoint* e : {&a.tail, &a.head}) {
        if (e->strand < 1 || e->strand > strands)
          throw InputError("endpoint strand " + std::to_string(e->strand) + " out of range");
        if (e->position < 0) throw InputError("endpoint positions must be nonnegative");
      }
      if (a.tail == a.head) throw InputError("tail and head occupy the same slot " + to_string(a.tail));
      per[static_cast<std::size_t>(a.tail.strand - 1)].emplace_back(a.tail.position, k, true);
      per[static_cast<std::size_t>(a.head.strand - 1)].emplace_back(a.head.position, k, false);
    }
    for (std::size_t s = 0; s < per.size(); ++s) {
      auto& v = per[s];
      std::sort(v.begin(), v.end());
      for (std::size_t r = 0; r < v.size(); ++r) {
        const auto& [pos, k, is_tail] = v[r];
        if (r > 0 && std::get<0>(v[r - 1]) == pos)
          throw InputError("duplicate position " + std::to_string(s + 1) + "." + std::to_string(pos));
        Endpoint& e = is_tail ? arrows[k].tail : arrows[k].head;
        e.position = static_cast<int>(r);
      }
    }
    std::vector<std::size_t> order(m);
    for (std::size_t k = 0; k < m; ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return arrows[x].tail < arrows[y].tail; });
    std::vector<int> new_ids(m);
    d.arrows_.reserve(m);
    for (std::size_t r = 0; r < m; ++r) {
      Arrow a = arrows[order[r]];
      a.id = static_cast<int>(r + 1);
      new_ids[order[r]] = a.id;
      d.arrows_.push_back(a);
    }
    d.index();
    return {std::move(d), std::move(new_ids)};
  }

  static GaussDiagram from_arrows(int strands, std::vector<Arrow> arrows, bool classical = false) {
    return canonicalize(strands, std::move(arrows), classical).first;
  }

  int strands() const noexcept { return n_; }
  bool classical() const noexcept { return classical_; }
  std::size_t size() const noexcept { return arrows_.size(); }
  bool empty() const noexcept { return arrows_.empty(); }
  std::span<const Arrow> arrows() const noexcept { return arrows_; }

  const Arrow& arrow(int id) const {
    if (id < 1 || static_cast<std::size_t>(id) > arrows_.size())
      throw InputError("no arrow with id " + std::to_string(id));
    return arrows_[static_cast<std::size_t>(id - 1)];
  }

  bool has_arrow(int id) const noexcept { return id >= 1 && static_cast<std::size_t>(id) <= arrows_.size(); }

  /// Endpoints of strand s, bottom to top.
  std::span<const EndRef> strand(int s) const { return slots_.at(static_cast<std::size_t>(s - 1)); }

  int endpoint_count(int s) const { return static_cast<int>(strand(s).size()); }

  /// The endpoint at a slot, if the slot exists.
  std::optional<EndRef> at(int s, int position) const {
    if (s < 1 || s > n_) return std::nullopt;
    const auto& v = slots_[static_cast<std::size_t>(s - 1)];
    if (position < 0 || static_cast<std::size_t>(position) >= v.size()) return std::nullopt;
    return v[static_cast<std::size_t>(position)];
  }

  std::optional<EndRef> at(const Endpoint& e) const { return at(e.strand, e.position); }

  GaussDiagram with_classical(bool flag) const {
    GaussDiagram d = *this;
    d.classical_ = flag;
    return d;
  }

  /// Structural key: strand count and arrows, without the classical flag.
  std::vector<std::int32_t> key() const {
    std::vector<std::int32_t> k;
    k.reserve(1 + arrows_.size() * 5);
    k.push_back(n_);
    for (const Arrow& a : arrows_) {
      k.push_back(a.sign);
      k.push_back(a.tail.strand);
      k.push_back(a.tail.position);
      k.push_back(a.head.strand);
      k.push_back(a.head.position);
    }
    return k;
  }

  bool operator==(const GaussDiagram& o) const {
    return n_ == o.n_ && classical_ == o.classical_ && arrows_ == o.arrows_;
  }

 private:
  void index() {
    for (auto& v : slots_) v.clear();
    for (const Arrow& a : arrows_) {
      auto put = [&](const Endpoint& e, bool tail) {
        auto& v = slots_[static_cast<std::size_t>(e.strand - 1)];
        if (v.size() <= static_cast<std::size_t>(e.position)) v.resize(static_cast<std::size_t>(e.position) + 1);
        v[static_cast<std::size_t>(e.position)] = EndRef{a.id, tail};
      };
      put(a.tail, true);
      put(a.head, false);
    }
  }

  int n_;
  bool classical_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<EndRef>> slots_;
};

/// Equality of the underlying Gauss diagrams, ignoring provenance.
inline bool same_diagram(const GaussDiagram& a, const GaussDiagram& b) {
  return a.strands() == b.strands() && std::ranges::equal(a.arrows(), b.arrows());
}

inline GaussDiagram canonicalize(const GaussDiagram& d) { return d; }

/// Stacking product: d2 is placed above d1.
inline GaussDiagram stack(const GaussDiagram& d1, const GaussDiagram& d2) {
  if (d1.strands() != d2.strands()) throw InputError("stack: strand counts differ");
  std::vector<Arrow> arrows(d1.arrows().begin(), d1.arrows().end());
  for (Arrow a : d2.arrows()) {
    a.tail.position += d1.endpoint_count(a.tail.strand);
    a.head.position += d1.endpoint_count(a.head.strand);
    a.id += static_cast<int>(d1.size());
    arrows.push_back(a);
  }
  return GaussDiagram::from_arrows(d1.strands(), std::move(arrows), d1.classical() && d2.classical());
}

// ---------------------------------------------------------------------------
// Crossing words

struct CrossingToken {
  enum class Kind { Positive, Negative, Virtual };
  Kind kind = Kind::Positive;
  int index = 1;  // crossing between positions index and index+1

  bool operator==(const CrossingToken&) const = default;
};

struct CrossingWord {
  int strands = 1;
  std::vector<CrossingToken> tokens;
};

inline std::string to_string(const CrossingToken& t) {
  switch (t.kind) {
    case CrossingToken::Kind::Positive: return "s" + std::to_string(t.index) + "+";
    case CrossingToken::Kind::Negative: return "s" + std::to_string(t.index) + "-";
    case CrossingToken::Kind::Virtual: return "v" + std::to_string(t.index);
  }
  return {};
}

inline std::optional<CrossingToken> parse_crossing_token(std::string_view tok) {
  if (tok.size() < 2) return std::nullopt;
  CrossingToken t;
  std::string_view digits;
  if (tok[0] == 's') {
    const char last = tok.back();
    if (last == '+') t.kind = CrossingToken::Kind::Positive;
    else if (last == '-') t.kind = CrossingToken::Kind::Negative;
    else return std::nullopt;
    digits = tok.substr(1, tok.size() - 2);
  } else if (tok[0] == 'v') {
    t.kind = CrossingToken::Kind::Virtual;
    digits = tok.substr(1);
  } else {
    return std::nullopt;
  }
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.index);
  if (ec != std::errc() || p != digits.data() + digits.size() || t.index < 1) return std::nullopt;
  return t;
}

/// Simulates the word on a row of n strand positions. A positive crossing at
/// K sends the strand at K over (to K+1) and the strand at K+1 under (to K);
/// a negative crossing has the strand at K+1 over. A word with virtual
/// crossings whose permutation is not the identity is closed by the
/// bubble-sort sequence of virtual crossings.
inline GaussDiagram from_crossing_word(const CrossingWord& w) {
  const int n = w.strands;
  if (n < 1) throw InputError("a crossing word needs at least one strand");
  std::vector<int> at(static_cast<std::size_t>(n) + 1);  // position -> strand
  for (int p = 1; p <= n; ++p) at[static_cast<std::size_t>(p)] = p;
  std::vector<int> next_pos(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Arrow> arrows;
  bool has_virtual = false;
  for (const CrossingToken& t : w.tokens) {
    if (t.index < 1 || t.index > n - 1)
      throw InputError("crossing index " + std::to_string(t.index) + " out of range for " +
                       std::to_string(n) + " strands");
    const auto k = static_cast<std::size_t>(t.index);
    if (t.kind == CrossingToken::Kind::Virtual) {
      has_virtual = true;
    } else {
      const bool positive = t.kind == CrossingToken::Kind::Positive;
      const int over = positive ? at[k] : at[k + 1];
      const int under = positive ? at[k + 1] : at[k];
      Arrow a;
      a.id = static_cast<int>(arrows.size()) + 1;
      a.sign = positive ? 1 : -1;
      a.tail = {over, next_pos[static_cast<std::size_t>(over)]++};
      a.head = {under, next_pos[static_cast<std::size_t>(under)]++};
      arrows.push_back(a);
    }
    std::swap(at[k], at[k + 1]);
  }
  bool identity = true;
  for (int p = 1; p <= n; ++p) identity = identity && at[static_cast<std::size_t>(p)] == p;
  if (!identity && !has_virtual)
    throw InputError("crossing word without virtual crossings does not close up to the identity");
  // Virtual closure leaves no arrows, so it does not need to be materialised.
  return GaussDiagram::from_arrows(n, std::move(arrows), !has_virtual);
}

// ---------------------------------------------------------------------------
// Text formats

namespace detail {

struct Line {
  std::size_t number = 0;
  std::string_view text;
};

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

inline std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 1;
  while (!text.empty() || number == 1) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back({number++, line});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<Endpoint> parse_endpoint(std::string_view s) {
  const std::size_t dot = s.find('.');
  if (dot == std::string_view::npos) return std::nullopt;
  auto strand = parse_int(s.substr(0, dot));
  auto pos = parse_int(s.substr(dot + 1));
  if (!strand || !pos) return std::nullopt;
  return Endpoint{*strand, *pos};
}

/// Reads the mandatory `strands <n>` header; returns n and the index of the
/// next line.
inline std::pair<int, std::size_t> parse_header(const std::vector<Line>& lines) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto toks = tokenize(lines[i].text);
    if (toks.empty()) continue;
    if (toks[0].text != "strands") throw ParseError(lines[i].number, toks[0].column, "expected 'strands <n>'");
    if (toks.size() != 2) throw ParseError(lines[i].number, toks[0].column, "expected 'strands <n>'");
    auto n = parse_int(toks[1].text);
    if (!n || *n < 1) throw ParseError(lines[i].number, toks[1].column, "strand count must be a positive integer");
    return {*n, i + 1};
  }
  throw ParseError(lines.empty() ? 1 : lines.back().number, 1, "missing 'strands <n>' header");
}

}  // namespace detail

/// Gauss file: `strands <n>`, optional `classical`, then lines
/// `arrow <id> <+|-> <tailStrand>.<tailPos> <headStrand>.<headPos>`.
/// Blank lines and `#` comments are ignored. The result is canonicalized, so
/// positions need only be distinct per strand.
inline GaussDiagram parse_gauss(std::string_view text) {
  const auto lines = detail::split_lines(text);
  const auto [n, first] = detail::parse_header(lines);
  bool classical = false;
  bool seen_classical = false;
  std::vector<Arrow> arrows;
  std::set<int> ids;
  std::map<Endpoint, std::size_t> used;  // slot -> line
  for (std::size_t i = first; i < lines.size(); ++i) {
    const auto& line = lines[i];
    auto toks = detail::tokenize(line.text);
    if (toks.empty()) continue;
    if (toks[0].text == "classical") {
      if (toks.size() != 1) throw ParseError(line.number, toks[1].column, "unexpected token after 'classical'");
      if (seen_classical) throw ParseError(line.number, toks[0].column, "repeated 'classical' line");
      if (!arrows.empty()) throw ParseError(line.number, toks[0].column, "'classical' must precede the arrows");
      seen_classical = classical = true;
      continue;
    }
    if (toks[0].text != "arrow") throw ParseError(line.number, toks[0].column, "expected 'arrow' or 'classical'");
    if (toks.size() != 5)
      throw ParseError(line.number, toks.back().column, "expected 'arrow <id> <+|-> <s>.<p> <s>.<p>'");
    Arrow a;
    auto id = detail::parse_int(toks[1].text);
    if (!id || *id < 1) throw ParseError(line.number, toks[1].column, "arrow id must be a positive integer");
    if (!ids.insert(*id).second) throw ParseError(line.number, toks[1].column, "duplicate arrow id");
    a.id = *id;
    if (toks[2].text == "+") a.sign = 1;
    else if (toks[2].text == "-") a.sign = -1;
    else throw ParseError(line.number, toks[2].column, "sign must be '+' or '-'");
    for (int k = 0; k < 2; ++k) {
      const auto& tok = toks[static_cast<std::size_t>(3 + k)];
      auto e = detail::parse_endpoint(tok.text);
      if (!e) throw ParseError(line.number, tok.column, "expected <strand>.<position>");
      if (e->strand < 1 || e->strand > n) throw ParseError(line.number, tok.column, "strand out of range");
      if (e->position < 0) throw ParseError(line.number, tok.column, "position must be nonnegative");
      if (k == 1 && *e == a.tail)
        throw ParseError(line.number, tok.column, "tail and head occupy the same slot " + to_string(*e));
      if (auto it = used.find(*e); it != used.end())
        throw ParseError(line.number, tok.column,
                         "slot " + to_string(*e) + " already used on line " + std::to_string(it->second));
      used.emplace(*e, line.number);
      (k == 0 ? a.tail : a.head) = *e;
    }
    arrows.push_back(a);
  }
  return GaussDiagram::from_arrows(n, std::move(arrows), classical);
}

inline std::string serialize_gauss(const GaussDiagram& d) {
  std::string out = "strands " + std::to_string(d.strands()) + "\n";
  if (d.classical()) out += "classical\n";
  for (const Arrow& a : d.arrows()) {
    out += "arrow " + std::to_string(a.id) + (a.sign > 0 ? " + " : " - ") + to_string(a.tail) + " " +
           to_string(a.head) + "\n";
  }
  return out;
}

/// Crossing-word file: `strands <n>` then one or more `word <tok> ...` lines
/// (concatenated) with tokens `s<K>+`, `s<K>-`, `v<K>`.
inline CrossingWord parse_crossing_word(std::string_view text) {
  const auto lines = detail::split_lines(text);
  const auto [n, first] = detail::parse_header(lines);
  CrossingWord w;
  w.strands = n;
  for (std::size_t i = first; i < lines.size(); ++i) {
    auto toks = detail::tokenize(lines[i].text);
    if (toks.empty()) continue;
    if (toks[0].text != "word") throw ParseError(lines[i].number, toks[0].column, "expected 'word'");
    for (std::size_t k = 1; k < toks.size(); ++k) {
      auto t = parse_crossing_token(toks[k].text);
      if (!t) throw ParseError(lines[i].number, toks[k].column, "bad crossing token '" + std::string(toks[k].text) + "'");
      if (t->index > n - 1) throw ParseError(lines[i].number, toks[k].column, "crossing index out of range");
      w.tokens.push_back(*t);
    }
  }
  return w;
}

inline std::string serialize_crossing_word(const CrossingWord& w) {
  std::string out = "strands " + std::to_string(w.strands) + "\nword";
  for (const auto& t : w.tokens) out += " " + to_string(t);
  return out + "\n";
}

/// Either file format: a `word` line selects the crossing-word grammar.
inline GaussDiagram read_diagram(std::string_view text) {
  for (const auto& line : detail::split_lines(text)) {
    auto toks = detail::tokenize(line.text);
    if (!toks.empty() && toks[0].text == "word") return from_crossing_word(parse_crossing_word(text));
  }
  return parse_gauss(text);
}

// ---------------------------------------------------------------------------
// Random corpora

namespace detail {
/// Uniform-enough draw in [0, m) from the standard 64-bit Mersenne twister,
/// whose output sequence is fixed by the standard (unlike the distributions).
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t m) { return m == 0 ? 0 : rng() % m; }

inline CrossingToken random_s_token(std::mt19937_64& rng, int n) {
  CrossingToken t;
  t.index = 1 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(n - 1)));
  t.kind = draw(rng, 2) ? CrossingToken::Kind::Positive : CrossingToken::Kind::Negative;
  return t;
}

inline CrossingToken inverse_token(CrossingToken t) {
  if (t.kind == CrossingToken::Kind::Positive) t.kind = CrossingToken::Kind::Negative;
  else if (t.kind == CrossingToken::Kind::Negative) t.kind = CrossingToken::Kind::Positive;
  return t;
}
}  // namespace detail

/// Random crossing word of `length` tokens. Welded words draw uniformly from
/// {sK+, sK-, vK}; if such a draw happens to be virtual-free but not closed,
/// its last token is made virtual. Classical words are built from blocks
/// u (sK sK) u^-1, where the middle pair has independent random signs and
/// u^-1 is the inverse word of a random prefix u; every block is a pure
/// braid, so the word closes up without virtual crossings. A trailing odd
/// token is dropped.
inline CrossingWord random_crossing_word(int n, int length, std::uint64_t seed, bool classical) {
  if (n < 1) throw InputError("random_diagram: n must be positive");
  if (length < 0) throw InputError("random_diagram: length must be nonnegative");
  CrossingWord w;
  w.strands = n;
  if (n == 1) return w;  // no crossings exist between positions on one strand
  std::mt19937_64 rng(seed);
  if (!classical) {
    for (int k = 0; k < length; ++k) {
      CrossingToken t;
      t.index = 1 + static_cast<int>(detail::draw(rng, static_cast<std::uint64_t>(n - 1)));
      const auto kind = detail::draw(rng, 3);
      t.kind = kind == 0   ? CrossingToken::Kind::Positive
               : kind == 1 ? CrossingToken::Kind::Negative
                           : CrossingToken::Kind::Virtual;
      w.tokens.push_back(t);
    }
    std::vector<int> perm(static_cast<std::size_t>(n) + 1);
    for (int p = 1; p <= n; ++p) perm[static_cast<std::size_t>(p)] = p;
    bool has_virtual = false;
    for (const auto& t : w.tokens) {
      has_virtual = has_virtual || t.kind == CrossingToken::Kind::Virtual;
      std::swap(perm[static_cast<std::size_t>(t.index)], perm[static_cast<std::size_t>(t.index) + 1]);
    }
    if (!has_virtual && !std::is_sorted(perm.begin(), perm.end())) w.tokens.back().kind = CrossingToken::Kind::Virtual;
    return w;
  }
  int remaining = length;
  while (remaining >= 2) {
    const int max_prefix = std::min(2, (remaining - 2) / 2);
    const int prefix_len = static_cast<int>(detail::draw(rng, static_cast<std::uint64_t>(max_prefix + 1)));
    std::vector<CrossingToken> prefix;
    for (int k = 0; k < prefix_len; ++k) prefix.push_back(detail::random_s_token(rng, n));
    CrossingToken a = detail::random_s_token(rng, n);
    CrossingToken b = detail::random_s_token(rng, n);
    b.index = a.index;
    w.tokens.insert(w.tokens.end(), prefix.begin(), prefix.end());
    w.tokens.push_back(a);
    w.tokens.push_back(b);
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) w.tokens.push_back(detail::inverse_token(*it));
    remaining -= 2 + 2 * prefix_len;
  }
  return w;
}

inline GaussDiagram random_diagram(int n, int length, std::uint64_t seed, bool classical) {
  return from_crossing_word(random_crossing_word(n, length, seed, classical));
}

/// Random arrow placement (self-arrows included), for corpora that need
/// diagrams no crossing word produces.
inline GaussDiagram random_gauss_diagram(int n, int arrows, std::uint64_t seed) {
  if (n < 1 || arrows < 0) throw InputError("random_gauss_diagram: bad arguments");
  std::mt19937_64 rng(seed);
  std::vector<Arrow> out;
  std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 0; k < arrows; ++k) {
    Arrow a;
    a.id = k + 1;
    a.sign = detail::draw(rng, 2) ? 1 : -1;
    a.tail.strand = 1 + static_cast<int>(detail::draw(rng, static_cast<std::uint64_t>(n)));
    a.head.strand = 1 + static_cast<int>(detail::draw(rng, static_cast<std::uint64_t>(n)));
    out.push_back(a);
  }
  // Heights come from a random interleaving of all endpoints.
  std::vector<std::tuple<std::uint64_t, std::size_t, bool>> keys;
  for (std::size_t k = 0; k < out.size(); ++k) {
    keys.emplace_back(rng(), k, true);
    keys.emplace_back(rng(), k, false);
  }
  std::sort(keys.begin(), keys.end());
  for (const auto& [key, k, tail] : keys) {
    Endpoint& e = tail ? out[k].tail : out[k].head;
    e.position = count[static_cast<std::size_t>(e.strand)]++;
  }
  return GaussDiagram::from_arrows(n, std::move(out), false);
}

}  // namespace weldkit
