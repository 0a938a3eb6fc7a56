#pragma once

// Classifying invariants of Gauss diagrams: virtual linking numbers, the
// Wirtinger coloring in the reduced free group, the conjugating automorphism
// Phi and the longitude conjugators lambda_j.
//
// Coloring convention: crossing the head of an arrow with sign e whose tail
// lies in an interval of value t changes the value g below the head into
// t^-e g t^e. The conjugator of strand i is accumulated as w <- w t^e, so the
// top interval of strand i carries w^-1 x_i w.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "weldkit/error.hpp"
#include "weldkit/gauss.hpp"
#include "weldkit/moves.hpp"
#include "weldkit/rfgroup.hpp"

namespace weldkit {

class VlkMatrix {
 public:
  explicit VlkMatrix(int n = 1) : n_(n), v_(static_cast<std::size_t>(n * n), 0) {}

  int strands() const noexcept { return n_; }

  std::int64_t operator()(int i, int j) const { return v_.at(index(i, j)); }
  std::int64_t& at(int i, int j) { return v_.at(index(i, j)); }

  /// vlk_{i*}: signed count of arrows leaving strand i.
  std::int64_t row_sum(int i) const {
    std::int64_t s = 0;
    for (int j = 1; j <= n_; ++j) s += (*this)(i, j);
    return s;
  }

  /// vlk_{*i}: signed count of arrows entering strand i.
  std::int64_t column_sum(int i) const {
    std::int64_t s = 0;
    for (int j = 1; j <= n_; ++j) s += (*this)(j, i);
    return s;
  }

  friend VlkMatrix operator+(VlkMatrix a, const VlkMatrix& b) {
    if (a.n_ != b.n_) throw InputError("vlk matrices of different sizes");
    for (std::size_t k = 0; k < a.v_.size(); ++k) a.v_[k] += b.v_[k];
    return a;
  }

  bool operator==(const VlkMatrix&) const = default;

  /// n lines of n columns; the diagonal prints as '.'.
  std::string to_string() const {
    std::string out;
    for (int i = 1; i <= n_; ++i) {
      for (int j = 1; j <= n_; ++j) {
        if (j > 1) out += ' ';
        out += i == j ? "." : std::to_string((*this)(i, j));
      }
      out += '\n';
    }
    return out;
  }

 private:
  std::size_t index(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) throw InputError("vlk index out of range");
    return static_cast<std::size_t>((i - 1) * n_ + (j - 1));
  }

  int n_;
  std::vector<std::int64_t> v_;  // diagonal stays 0
};

inline VlkMatrix vlk_matrix(const GaussDiagram& d) {
  VlkMatrix m(d.strands());
  for (const Arrow& a : d.arrows())
    if (!a.self()) m.at(a.tail.strand, a.head.strand) += a.sign;
  return m;
}

// ---------------------------------------------------------------------------
// Coloring

/// Interval values per strand, bottom first. Interval k of strand s is the
/// portion between its k-th and (k+1)-th head.
struct Coloring {
  int strands = 1;
  std::vector<std::vector<Word>> conjugators;  // value = c^-1 x_s c
  int sweeps = 0;

  Word value(int strand, std::size_t interval) const {
    const Word& c = conjugators.at(static_cast<std::size_t>(strand - 1)).at(interval);
    return c.inverse() * Word::generator(strands, strand) * c;
  }
  std::size_t intervals(int strand) const { return conjugators.at(static_cast<std::size_t>(strand - 1)).size(); }
};

namespace detail {

/// Interval index of every slot: the number of heads strictly below it.
inline std::vector<std::vector<int>> interval_index(const GaussDiagram& d) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(d.strands()));
  for (int s = 1; s <= d.strands(); ++s) {
    int heads = 0;
    for (const EndRef& e : d.strand(s)) {
      out[static_cast<std::size_t>(s - 1)].push_back(heads);
      if (!e.tail) ++heads;
    }
  }
  return out;
}

/// Magnus images of the interval conjugators (and their inverses), with X_s
/// dropped on strand s, computed by fixed-point sweeps.
struct MagnusColoring {
  std::vector<std::vector<ReducedPolynomial>> conj;
  std::vector<std::vector<ReducedPolynomial>> conj_inv;
  int sweeps = 0;
};

inline MagnusColoring magnus_coloring(const GaussDiagram& d) {
  const int n = d.strands();
  const auto where = interval_index(d);
  MagnusColoring mc;
  const ReducedPolynomial one = ReducedPolynomial::one(n);
  for (int s = 1; s <= n; ++s) {
    int heads = 0;
    for (const EndRef& e : d.strand(s)) heads += e.tail ? 0 : 1;
    mc.conj.emplace_back(static_cast<std::size_t>(heads) + 1, one);
    mc.conj_inv.emplace_back(static_cast<std::size_t>(heads) + 1, one);
  }
  const int cap = n + 2;
  for (;;) {
    if (mc.sweeps == cap) throw InternalError("coloring did not converge within n+2 sweeps");
    ++mc.sweeps;
    bool changed = false;
    for (int s = 1; s <= n; ++s) {
      auto& conj = mc.conj[static_cast<std::size_t>(s - 1)];
      auto& inv = mc.conj_inv[static_cast<std::size_t>(s - 1)];
      std::size_t k = 0;
      for (const EndRef& e : d.strand(s)) {
        if (e.tail) continue;
        const Arrow& a = d.arrow(e.arrow);
        const int r = a.tail.strand;
        const auto m = static_cast<std::size_t>(
            where[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(a.tail.position)]);
        // Tail value t = 1 + Y with Y = C^-1 X_r C; t^-1 = 1 - Y.
        const ReducedPolynomial y =
            mc.conj_inv[static_cast<std::size_t>(r - 1)][m].times_variable(r) * mc.conj[static_cast<std::size_t>(r - 1)][m];
        ReducedPolynomial next = conj[k];
        next.add_scaled(conj[k] * y, a.sign);
        ReducedPolynomial next_inv = inv[k];
        next_inv.add_scaled(y * inv[k], -a.sign);
        next = next.without_generator(s);
        next_inv = next_inv.without_generator(s);
        if (!(next == conj[k + 1])) {
          changed = true;
          conj[k + 1] = std::move(next);
          inv[k + 1] = std::move(next_inv);
        }
        ++k;
      }
    }
    if (!changed) break;
  }
  return mc;
}

}  // namespace detail

/// The unique (x_1..x_n)-coloring. Every Wirtinger relation of the result is
/// checked with rf_equal before returning.
inline Coloring color(const GaussDiagram& d) {
  const int n = d.strands();
  const auto mc = detail::magnus_coloring(d);
  Coloring c;
  c.strands = n;
  c.sweeps = mc.sweeps;
  for (const auto& strand : mc.conj) {
    auto& out = c.conjugators.emplace_back();
    for (const auto& p : strand) out.push_back(word_from_magnus(p));
  }
  const auto where = detail::interval_index(d);
  for (int s = 1; s <= n; ++s) {
    if (!c.conjugators[static_cast<std::size_t>(s - 1)].front().empty())
      throw InternalError("bottom interval of strand " + std::to_string(s) + " is not x_" + std::to_string(s));
    std::size_t k = 0;
    for (const EndRef& e : d.strand(s)) {
      if (e.tail) continue;
      const Arrow& a = d.arrow(e.arrow);
      const Word t = c.value(a.tail.strand, static_cast<std::size_t>(
          where[static_cast<std::size_t>(a.tail.strand - 1)][static_cast<std::size_t>(a.tail.position)]));
      const Word expected = t.pow(-a.sign) * c.value(s, k) * t.pow(a.sign);
      if (!rf_equal(c.value(s, k + 1), expected, n))
        throw InternalError("Wirtinger relation fails at the head of arrow " + std::to_string(a.id));
      ++k;
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Conjugating endomorphisms

/// x_i -> w_i^-1 x_i w_i for every generator.
class ConjugatingEndo {
 public:
  explicit ConjugatingEndo(int n = 1) : n_(n), w_(static_cast<std::size_t>(n), Word(n)) {}

  explicit ConjugatingEndo(std::vector<Word> conjugators) : n_(static_cast<int>(conjugators.size())) {
    if (n_ < 1) throw InputError("endomorphism of rank 0");
    for (Word& w : conjugators) {
      if (w.rank() > n_) throw InputError("conjugator rank exceeds endomorphism rank");
      w_.push_back(w.with_rank(n_));
    }
  }

  int rank() const noexcept { return n_; }
  const Word& conjugator(int i) const { return w_.at(static_cast<std::size_t>(i - 1)); }

  Word image(int i) const { return conjugator(i).inverse() * Word::generator(n_, i) * conjugator(i); }

  /// phi(w), returned in collected form.
  Word apply(const Word& w) const {
    Word out(n_);
    for (const Letter& l : w.letters()) out.append(image(l.generator).pow(l.exponent));
    return collected_form(out, n_);
  }

  /// this o g: x_i -> this(g(x_i)).
  ConjugatingEndo compose(const ConjugatingEndo& g) const {
    if (g.n_ != n_) throw InputError("composing endomorphisms of different ranks");
    std::vector<Word> out;
    for (int i = 1; i <= n_; ++i) out.push_back(collected_form(conjugator(i) * apply(g.conjugator(i)), n_));
    return ConjugatingEndo(std::move(out));
  }

  /// Componentwise equality of the images in RF_n.
  bool equivalent(const ConjugatingEndo& o) const {
    if (o.n_ != n_) return false;
    for (int i = 1; i <= n_; ++i)
      if (!rf_equal(image(i), o.image(i), n_)) return false;
    return true;
  }

  /// Lines `x<i> -> (<w>)^-1 x<i> (<w>)`.
  std::string to_string() const {
    std::string out;
    for (int i = 1; i <= n_; ++i) {
      const std::string w = conjugator(i).to_string();
      out += "x" + std::to_string(i) + " -> (" + w + ")^-1 x" + std::to_string(i) + " (" + w + ")\n";
    }
    return out;
  }

  /// Literal equality of the stored conjugators.
  bool operator==(const ConjugatingEndo&) const = default;

 private:
  int n_;
  std::vector<Word> w_;
};

inline ConjugatingEndo phi(const GaussDiagram& d) {
  const auto mc = detail::magnus_coloring(d);
  std::vector<Word> ws;
  for (const auto& strand : mc.conj) ws.push_back(word_from_magnus(strand.back()));
  return ConjugatingEndo(std::move(ws));
}

/// Magnus images of phi(d)(x_i); equal vectors mean equivalent endomorphisms.
inline std::vector<ReducedPolynomial> phi_images(const GaussDiagram& d) {
  const auto mc = detail::magnus_coloring(d);
  std::vector<ReducedPolynomial> out;
  for (int s = 1; s <= d.strands(); ++s) {
    const auto& c = mc.conj[static_cast<std::size_t>(s - 1)].back();
    const auto& ci = mc.conj_inv[static_cast<std::size_t>(s - 1)].back();
    out.push_back(ci.times_variable(s) * c + ReducedPolynomial::one(d.strands()));
  }
  return out;
}

/// lambda_j: the conjugator of strand j with x_j deleted.
inline Word lambda_conjugator(const GaussDiagram& d, int j) {
  if (j < 1 || j > d.strands()) throw InputError("strand index out of range");
  return delete_generator(phi(d).conjugator(j), j);
}

// ---------------------------------------------------------------------------
// Class vectors

/// Value of a classifying invariant: an integer vector, or Phi for the
/// self-crossing movesets.
using ClassValue = std::variant<std::vector<std::int64_t>, ConjugatingEndo>;

inline bool requires_classical(MoveKind m) {
  return m == MoveKind::DELTA || m == MoveKind::BP || m == MoveKind::SC;
}

inline bool has_classifier(MoveKind m) {
  switch (m) {
    case MoveKind::V: case MoveKind::CC: case MoveKind::SV: case MoveKind::F: case MoveKind::VC:
    case MoveKind::WBP: case MoveKind::BV: case MoveKind::SC: case MoveKind::DELTA: case MoveKind::BP: return true;
    default: return false;
  }
}

namespace detail {

inline std::int64_t mod2(std::int64_t v) { return ((v % 2) + 2) % 2; }

/// The vlk-based vectors, without the classical-input check.
inline std::vector<std::int64_t> vlk_vector(const VlkMatrix& v, MoveKind m) {
  const int n = v.strands();
  std::vector<std::int64_t> out;
  switch (m) {
    case MoveKind::V: break;
    case MoveKind::CC:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.push_back(v(i, j) - v(j, i));
      break;
    case MoveKind::F:
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          if (i != j) out.push_back(v(i, j));
      break;
    case MoveKind::VC:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.push_back(v(i, j) + v(j, i));
      break;
    case MoveKind::WBP:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.push_back(mod2(v(i, j) + v(j, i)));
      for (int i = 1; i < n; ++i) out.push_back(mod2(v.row_sum(i)));
      break;
    case MoveKind::BV:
      for (int i = 1; i < n; ++i) out.push_back(mod2(v.row_sum(i) + v.column_sum(i)));
      break;
    case MoveKind::DELTA:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.push_back(v(i, j));
      break;
    case MoveKind::BP:
      for (int i = 1; i < n; ++i) out.push_back(mod2(v.row_sum(i)));
      break;
    default: throw InputError("no classifying invariant for moveset " + std::string(to_string(m)));
  }
  return out;
}

}  // namespace detail

/// Invariant vector classifying diagrams up to the moveset m plus welded
/// (or, for DELTA, BP and SC, classical) Reidemeister moves.
inline ClassValue class_vector(const GaussDiagram& d, MoveKind m) {
  if (!has_classifier(m)) throw InputError("no classifying invariant for moveset " + std::string(to_string(m)));
  if (requires_classical(m) && !d.classical())
    throw InputError("moveset " + std::string(to_string(m)) + " is classified on classical diagrams only");
  if (m == MoveKind::SV || m == MoveKind::SC) return phi(d);
  return detail::vlk_vector(vlk_matrix(d), m);
}

inline bool same_class(const ClassValue& a, const ClassValue& b) {
  if (a.index() != b.index()) return false;
  if (const auto* va = std::get_if<std::vector<std::int64_t>>(&a)) return *va == std::get<0>(b);
  return std::get<ConjugatingEndo>(a).equivalent(std::get<ConjugatingEndo>(b));
}

inline std::string to_string(const ClassValue& v) {
  if (const auto* e = std::get_if<ConjugatingEndo>(&v)) return e->to_string();
  std::string out = "(";
  const auto& vec = std::get<0>(v);
  for (std::size_t i = 0; i < vec.size(); ++i) out += (i ? "," : "") + std::to_string(vec[i]);
  return out + ")";
}

/// Kinds whose instances leave the classifier of moveset m unchanged: the
/// moveset itself, the welded Reidemeister moves, and every catalog kind the
/// classification shows to be generated by it.
inline std::vector<MoveKind> moveset_kinds(MoveKind m) {
  using K = MoveKind;
  const std::vector<K> vlk_preserving{K::R1, K::R2, K::R3, K::OC, K::UC, K::F, K::SV, K::SC, K::DELTA};
  std::vector<K> out;
  switch (m) {
    case K::V: return {kAllMoveKinds.begin(), kAllMoveKinds.end()};
    case K::SV: case K::SC: return {K::R1, K::R2, K::R3, K::OC, K::SV, K::SC};
    case K::F: case K::DELTA: return vlk_preserving;
    case K::CC: out = vlk_preserving; out.insert(out.end(), {K::CC, K::BP}); break;
    case K::VC: out = vlk_preserving; out.push_back(K::VC); break;
    case K::WBP: case K::BP: out = vlk_preserving; out.insert(out.end(), {K::SR, K::BP, K::WBP}); break;
    case K::BV:
      out = vlk_preserving;
      out.insert(out.end(), {K::CC, K::VC, K::SR, K::BP, K::WBP, K::BV});
      break;
    default: throw InputError("no classifying invariant for moveset " + std::string(to_string(m)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace weldkit
