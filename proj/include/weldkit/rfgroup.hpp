#pragma once

// Reduced free group RF_n on generators x_1..x_n: the quotient of the free
// group in which every generator commutes with all of its conjugates.
//
// Words are kept freely reduced. Equality in RF_n is decided through the
// square-free Magnus expansion x_i -> 1 + X_i into the ring of non-commuting
// polynomials where every monomial with a repeated variable vanishes.

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weldkit/error.hpp"

namespace weldkit {

/// Largest rank the Magnus machinery supports (the ring has
/// sum_k n!/(n-k)! monomials, about 1.1e5 for n = 8).
inline constexpr int kMaxMagnusRank = 8;

struct Letter {
  int generator = 1;  // 1-based
  int exponent = 1;   // +1 or -1

  bool operator==(const Letter&) const = default;
};

class Word {
 public:
  explicit Word(int rank = 1) : rank_(rank) {
    if (rank < 1) throw InputError("word rank must be positive");
  }

  Word(int rank, std::vector<Letter> letters) : Word(rank) {
    for (const Letter& l : letters) {
      if (l.generator < 1 || l.generator > rank)
        throw InputError("generator x" + std::to_string(l.generator) +
                         " out of range for rank " + std::to_string(rank));
      if (l.exponent != 1 && l.exponent != -1)
        throw InputError("letter exponents must be +1 or -1");
    }
    letters_ = std::move(letters);
    reduce();
  }

  static Word generator(int rank, int i, int exponent = 1) {
    Word w(rank);
    if (i < 1 || i > rank)
      throw InputError("generator x" + std::to_string(i) + " out of range for rank " +
                       std::to_string(rank));
    const int step = exponent < 0 ? -1 : 1;
    for (int k = 0; k != exponent; k += step) w.letters_.push_back({i, step});
    return w;
  }

  int rank() const noexcept { return rank_; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  Word inverse() const {
    Word w(rank_);
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      w.letters_.push_back({it->generator, -it->exponent});
    return w;
  }

  Word pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Word w(rank_);
    for (int k = 0; k < e; ++k) w.append(*this);
    return w;
  }

  /// Right-multiplies in place.
  Word& append(const Word& other) {
    if (other.rank_ != rank_) throw InputError("rank mismatch in word product");
    for (const Letter& l : other.letters_) push(l);
    return *this;
  }

  /// Same element over a larger rank.
  Word with_rank(int rank) const {
    if (rank < rank_) {
      for (const Letter& l : letters_)
        if (l.generator > rank) throw InputError("cannot lower rank below a used generator");
    }
    Word w(rank);
    w.letters_ = letters_;
    return w;
  }

  friend Word operator*(Word lhs, const Word& rhs) { return lhs.append(rhs); }

  /// Literal (free-group) equality. Use rf_equal for equality in RF_n.
  bool operator==(const Word&) const = default;

  std::string to_string() const {
    if (letters_.empty()) return "e";
    std::string out;
    for (const Letter& l : letters_) {
      if (!out.empty()) out += ' ';
      out += 'x';
      out += std::to_string(l.generator);
      if (l.exponent < 0) out += "^-1";
    }
    return out;
  }

 private:
  void push(const Letter& l) {
    if (!letters_.empty() && letters_.back().generator == l.generator &&
        letters_.back().exponent == -l.exponent) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  void reduce() {
    std::vector<Letter> in = std::move(letters_);
    letters_.clear();
    for (const Letter& l : in) push(l);
  }

  int rank_;
  std::vector<Letter> letters_;
};

inline Word word_product(std::span<const Word> ws) {
  if (ws.empty()) throw InputError("word_product needs at least one word");
  Word out(ws.front().rank());
  for (const Word& w : ws) out.append(w);
  return out;
}

inline Word word_inverse(const Word& w) { return w.inverse(); }

/// Parses `x3 x1^-1 x2^2` or `e`. Whitespace separated; exponents may be any
/// nonzero integer.
inline Word parse_word(std::string_view text, int rank) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) { throw ParseError(1, i + 1, msg); };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] == 'e' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      ++i;
      continue;
    }
    if (text[i] != 'x') fail("expected 'x<index>' or 'e'");
    ++i;
    int gen = 0;
    auto [p, ec] = std::from_chars(text.data() + i, text.data() + text.size(), gen);
    if (ec != std::errc()) fail("expected generator index");
    i = static_cast<std::size_t>(p - text.data());
    int exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      auto [q, ec2] = std::from_chars(text.data() + i, text.data() + text.size(), exponent);
      if (ec2 != std::errc() || exponent == 0) fail("expected nonzero exponent");
      i = static_cast<std::size_t>(q - text.data());
    }
    if (gen < 1 || gen > rank) fail("generator x" + std::to_string(gen) + " out of range");
    const int step = exponent < 0 ? -1 : 1;
    for (int k = 0; k != exponent; k += step) letters.push_back({gen, step});
  }
  return Word(rank, std::move(letters));
}

// ---------------------------------------------------------------------------
// Monomials of the square-free ring

/// Index of all monomials X_{i1}...X_{ik} with pairwise distinct indices, in
/// lexicographic (depth-first) order; index 0 is the empty monomial.
class MonomialTable {
 public:
  static const MonomialTable& get(int n) {
    if (n < 1 || n > kMaxMagnusRank)
      throw InputError("Magnus expansion supports ranks 1.." + std::to_string(kMaxMagnusRank));
    static std::array<std::once_flag, kMaxMagnusRank + 1> once;
    static std::array<std::unique_ptr<MonomialTable>, kMaxMagnusRank + 1> tables;
    std::call_once(once[n], [n] { tables[n].reset(new MonomialTable(n)); });
    return *tables[n];
  }

  int rank() const noexcept { return n_; }
  std::size_t size() const noexcept { return offset_.size() - 1; }

  /// Index of monomial idx followed by X_gen, or -1 when gen already occurs.
  int append(std::size_t idx, int gen) const noexcept { return append_[idx * n_ + (gen - 1)]; }

  std::span<const std::uint8_t> letters(std::size_t idx) const noexcept {
    return {letters_.data() + offset_[idx], letters_.data() + offset_[idx + 1]};
  }

  std::size_t degree(std::size_t idx) const noexcept { return offset_[idx + 1] - offset_[idx]; }

  /// -1 when the sequence has a repeated or out-of-range index.
  int index_of(std::span<const int> monomial) const noexcept {
    int idx = 0;
    for (int g : monomial) {
      if (g < 1 || g > n_) return -1;
      idx = append(static_cast<std::size_t>(idx), g);
      if (idx < 0) return -1;
    }
    return idx;
  }

 private:
  explicit MonomialTable(int n) : n_(n) {
    std::vector<std::uint8_t> current;
    offset_.push_back(0);
    build(current);
    append_.assign(size() * n_, -1);
    // Children of a node are visited in increasing generator order right
    // after it, so a second walk recovers the append map.
    link(0, current);
  }

  void build(std::vector<std::uint8_t>& current) {
    letters_.insert(letters_.end(), current.begin(), current.end());
    offset_.push_back(letters_.size());
    for (int g = 1; g <= n_; ++g) {
      if (std::find(current.begin(), current.end(), g) != current.end()) continue;
      current.push_back(static_cast<std::uint8_t>(g));
      build(current);
      current.pop_back();
    }
  }

  std::size_t link(std::size_t idx, std::vector<std::uint8_t>& current) {
    std::size_t next = idx + 1;
    for (int g = 1; g <= n_; ++g) {
      if (std::find(current.begin(), current.end(), g) != current.end()) continue;
      append_[idx * n_ + (g - 1)] = static_cast<int>(next);
      current.push_back(static_cast<std::uint8_t>(g));
      next = link(next, current);
      current.pop_back();
    }
    return next;
  }

  int n_;
  std::vector<std::uint8_t> letters_;
  std::vector<std::size_t> offset_;
  std::vector<int> append_;
};

namespace detail {
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw InternalError("Magnus coefficient overflow");
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw InternalError("Magnus coefficient overflow");
  return r;
}
}  // namespace detail

/// Element of the square-free truncated ring Z<<X_1..X_n>> / (monomials with a
/// repeated index).
class ReducedPolynomial {
 public:
  explicit ReducedPolynomial(int rank)
      : table_(&MonomialTable::get(rank)), coeffs_(table_->size(), 0) {}

  static ReducedPolynomial one(int rank) {
    ReducedPolynomial p(rank);
    p.coeffs_[0] = 1;
    return p;
  }

  int rank() const noexcept { return table_->rank(); }
  const MonomialTable& table() const noexcept { return *table_; }
  std::span<const std::int64_t> dense() const noexcept { return coeffs_; }

  std::int64_t constant() const noexcept { return coeffs_[0]; }

  std::int64_t coefficient(std::span<const int> monomial) const {
    const int idx = table_->index_of(monomial);
    if (idx < 0) throw InputError("monomial has a repeated or out-of-range index");
    return coeffs_[static_cast<std::size_t>(idx)];
  }

  std::int64_t coefficient_at(std::size_t idx) const noexcept { return coeffs_[idx]; }

  void add_to(std::span<const int> monomial, std::int64_t value) {
    const int idx = table_->index_of(monomial);
    if (idx < 0) throw InputError("monomial has a repeated or out-of-range index");
    coeffs_[static_cast<std::size_t>(idx)] = detail::checked_add(coeffs_[static_cast<std::size_t>(idx)], value);
  }

  /// Nonzero terms in lexicographic monomial order.
  std::vector<std::pair<std::vector<int>, std::int64_t>> terms() const {
    std::vector<std::pair<std::vector<int>, std::int64_t>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      auto ls = table_->letters(i);
      out.emplace_back(std::vector<int>(ls.begin(), ls.end()), coeffs_[i]);
    }
    return out;
  }

  /// Right multiplication by (1 + X_gen) or (1 - X_gen).
  ReducedPolynomial& multiply_letter(int gen, int exponent) {
    // u*X_gen sits after u in depth-first order, so a descending sweep reads
    // every coefficient before it is overwritten.
    for (std::size_t u = coeffs_.size(); u-- > 0;) {
      if (coeffs_[u] == 0) continue;
      const int target = table_->append(u, gen);
      if (target < 0) continue;
      auto& slot = coeffs_[static_cast<std::size_t>(target)];
      slot = detail::checked_add(slot, exponent > 0 ? coeffs_[u] : -coeffs_[u]);
    }
    return *this;
  }

  /// Right multiplication by the variable X_gen.
  ReducedPolynomial times_variable(int gen) const {
    ReducedPolynomial out(rank());
    for (std::size_t u = 0; u < coeffs_.size(); ++u) {
      if (coeffs_[u] == 0) continue;
      const int target = table_->append(u, gen);
      if (target >= 0) out.coeffs_[static_cast<std::size_t>(target)] = coeffs_[u];
    }
    return out;
  }

  /// this += factor * other, coefficientwise.
  ReducedPolynomial& add_scaled(const ReducedPolynomial& other, std::int64_t factor) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (other.coeffs_[i] != 0)
        coeffs_[i] = detail::checked_add(coeffs_[i], detail::checked_mul(factor, other.coeffs_[i]));
    return *this;
  }

  /// Sets X_gen to zero (ring homomorphism).
  ReducedPolynomial without_generator(int gen) const {
    ReducedPolynomial out(rank());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      auto ls = table_->letters(i);
      if (std::find(ls.begin(), ls.end(), gen) == ls.end()) out.coeffs_[i] = coeffs_[i];
    }
    return out;
  }

  friend ReducedPolynomial operator*(const ReducedPolynomial& a, const ReducedPolynomial& b) {
    if (a.rank() != b.rank()) throw InputError("rank mismatch in polynomial product");
    const MonomialTable& t = *a.table_;
    ReducedPolynomial out(a.rank());
    std::vector<std::size_t> nz_b;
    for (std::size_t v = 0; v < b.coeffs_.size(); ++v)
      if (b.coeffs_[v] != 0) nz_b.push_back(v);
    for (std::size_t u = 0; u < a.coeffs_.size(); ++u) {
      const std::int64_t cu = a.coeffs_[u];
      if (cu == 0) continue;
      for (std::size_t v : nz_b) {
        int idx = static_cast<int>(u);
        for (std::uint8_t g : t.letters(v)) {
          idx = t.append(static_cast<std::size_t>(idx), g);
          if (idx < 0) break;
        }
        if (idx < 0) continue;
        auto& slot = out.coeffs_[static_cast<std::size_t>(idx)];
        slot = detail::checked_add(slot, detail::checked_mul(cu, b.coeffs_[v]));
      }
    }
    return out;
  }

  friend ReducedPolynomial operator+(ReducedPolynomial a, const ReducedPolynomial& b) {
    if (a.rank() != b.rank()) throw InputError("rank mismatch in polynomial sum");
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      a.coeffs_[i] = detail::checked_add(a.coeffs_[i], b.coeffs_[i]);
    return a;
  }

  friend ReducedPolynomial operator-(ReducedPolynomial a, const ReducedPolynomial& b) {
    if (a.rank() != b.rank()) throw InputError("rank mismatch in polynomial difference");
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      a.coeffs_[i] = detail::checked_add(a.coeffs_[i], -b.coeffs_[i]);
    return a;
  }

  bool operator==(const ReducedPolynomial& o) const noexcept {
    return rank() == o.rank() && coeffs_ == o.coeffs_;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& [mono, c] : terms()) {
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      const std::int64_t a = c < 0 ? -c : c;
      if (a != 1 || mono.empty()) out += std::to_string(a);
      for (int g : mono) out += "X" + std::to_string(g);
    }
    return out.empty() ? "0" : out;
  }

 private:
  const MonomialTable* table_;
  std::vector<std::int64_t> coeffs_;
};

inline ReducedPolynomial magnus_expand(const Word& w, int n) {
  if (w.rank() > n) throw InputError("word rank exceeds expansion rank");
  ReducedPolynomial p = ReducedPolynomial::one(n);
  for (const Letter& l : w.letters()) p.multiply_letter(l.generator, l.exponent);
  return p;
}

inline bool rf_equal(const Word& a, const Word& b, int n) {
  return magnus_expand(a, n) == magnus_expand(b, n);
}

inline bool rf_equal(const Word& a, const Word& b) {
  return rf_equal(a, b, std::max(a.rank(), b.rank()));
}

inline std::int64_t exponent_sum(const Word& w, int i) {
  if (i < 1 || i > w.rank()) throw InputError("generator index out of range");
  std::int64_t s = 0;
  for (const Letter& l : w.letters())
    if (l.generator == i) s += l.exponent;
  return s;
}

/// Retraction x_j -> 1.
inline Word delete_generator(const Word& w, int j) {
  if (j < 1 || j > w.rank()) throw InputError("generator index out of range");
  std::vector<Letter> kept;
  kept.reserve(w.length());
  for (const Letter& l : w.letters())
    if (l.generator != j) kept.push_back(l);
  return Word(w.rank(), std::move(kept));
}

// ---------------------------------------------------------------------------
// Collected words

namespace detail {

/// Left-normed commutators [..[[x_m, x_s2], x_s3].., x_sk] with m = min of the
/// index set; their leading monomials X_m X_s2 .. X_sk index a Z-basis of the
/// multilinear Lie elements, one block per degree.
struct CommutatorBasis {
  struct Element {
    std::size_t lead;  // monomial index of X_m X_s2 ... X_sk
    Word word;
    ReducedPolynomial image;
    ReducedPolynomial inverse_image;
  };

  std::vector<std::vector<Element>> by_degree;  // by_degree[k-1]

  static const CommutatorBasis& get(int n) {
    MonomialTable::get(n);  // validates n
    static std::array<std::once_flag, kMaxMagnusRank + 1> once;
    static std::array<std::unique_ptr<CommutatorBasis>, kMaxMagnusRank + 1> bases;
    std::call_once(once[n], [n] { bases[n].reset(new CommutatorBasis(n)); });
    return *bases[n];
  }

 private:
  explicit CommutatorBasis(int n) : by_degree(static_cast<std::size_t>(n)) {
    const MonomialTable& t = MonomialTable::get(n);
    for (int k = 1; k <= n; ++k) {
      std::vector<int> subset;
      subsets(n, k, 1, subset, [&](const std::vector<int>& s) {
        std::vector<int> rest(s.begin() + 1, s.end());
        do {
          std::vector<int> mono{s.front()};
          mono.insert(mono.end(), rest.begin(), rest.end());
          Word w = Word::generator(n, s.front());
          for (int g : rest) {
            const Word x = Word::generator(n, g);
            w = w.inverse() * x.inverse() * w * x;
          }
          ReducedPolynomial img = magnus_expand(w, n);
          ReducedPolynomial inv = magnus_expand(w.inverse(), n);
          by_degree[static_cast<std::size_t>(k - 1)].push_back(
              {static_cast<std::size_t>(t.index_of(mono)), std::move(w), std::move(img), std::move(inv)});
        } while (std::next_permutation(rest.begin(), rest.end()));
      });
    }
  }

  template <class F>
  static void subsets(int n, int k, int from, std::vector<int>& cur, F&& f) {
    if (static_cast<int>(cur.size()) == k) {
      f(cur);
      return;
    }
    for (int g = from; g <= n; ++g) {
      cur.push_back(g);
      subsets(n, k, g + 1, cur, f);
      cur.pop_back();
    }
  }
};

}  // namespace detail

/// A word whose Magnus expansion is p, written as a product of powers of
/// left-normed commutators of increasing degree. Throws InternalError when p
/// is not the image of a group element.
inline Word word_from_magnus(const ReducedPolynomial& p) {
  const int n = p.rank();
  const auto& basis = detail::CommutatorBasis::get(n);
  const MonomialTable& t = p.table();
  if (p.constant() != 1) throw InternalError("polynomial is not group-like (constant term)");
  ReducedPolynomial rest = p;
  Word out(n);
  for (int k = 1; k <= n; ++k) {
    for (const auto& b : basis.by_degree[static_cast<std::size_t>(k - 1)]) {
      const std::int64_t c = rest.coefficient_at(b.lead);
      if (c == 0) continue;
      out.append(b.word.pow(static_cast<int>(c)));
      const ReducedPolynomial& step = c > 0 ? b.inverse_image : b.image;
      for (std::int64_t r = 0; r < (c > 0 ? c : -c); ++r) rest = step * rest;
    }
    for (std::size_t i = 1; i < t.size(); ++i)
      if (t.degree(i) == static_cast<std::size_t>(k) && rest.coefficient_at(i) != 0)
        throw InternalError("polynomial is not group-like (degree " + std::to_string(k) + ")");
  }
  if (!(rest == ReducedPolynomial::one(n))) throw InternalError("collection did not terminate at 1");
  return out;
}

/// Short representative of w in RF_n; rf_equal to w by construction.
inline Word collected_form(const Word& w, int n) { return word_from_magnus(magnus_expand(w, n)); }

}  // namespace weldkit
