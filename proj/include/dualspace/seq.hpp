#pragma once

// Sequence spaces indexed by a dimension in N ∪ {omega}:
//
//   FinSuppVec  finitely supported sequences, F^(alpha)
//   ProdVec     arbitrary sequences, F^alpha, restricted to the decidable
//               class "finite prefix followed by zeros or a repeating block"
//
// Indices are 0-based. pair(x, y) evaluates the functional y on x.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dualspace/dense.hpp"
#include "dualspace/error.hpp"
#include "dualspace/field.hpp"

namespace dualspace {

class Dim {
 public:
  static Dim finite(std::size_t n) { return Dim(n); }
  static Dim omega() { return Dim(std::nullopt); }

  /// "omega" or a decimal natural.
  static Dim parse(std::string_view text) {
    if (text == "omega") return omega();
    if (text.empty() || text.size() > 18) fail(ErrorKind::InvalidArgument, "bad dimension '" + std::string(text) + "'");
    std::size_t n = 0;
    for (char c : text) {
      if (c < '0' || c > '9') fail(ErrorKind::InvalidArgument, "bad dimension '" + std::string(text) + "'");
      n = n * 10 + static_cast<std::size_t>(c - '0');
    }
    return finite(n);
  }

  bool is_omega() const noexcept { return !n_.has_value(); }
  bool is_finite() const noexcept { return n_.has_value(); }

  std::size_t size() const {
    if (!n_) fail(ErrorKind::InvalidArgument, "omega has no finite size");
    return *n_;
  }

  bool contains(std::size_t i) const noexcept { return !n_ || i < *n_; }

  /// Finite(n) <= Finite(m) iff n <= m; everything is <= omega.
  bool fits_in(const Dim& other) const noexcept { return other.is_omega() || (n_ && *n_ <= *other.n_); }

  std::string to_string() const { return n_ ? std::to_string(*n_) : std::string("omega"); }

  friend bool operator==(const Dim&, const Dim&) = default;

 private:
  explicit Dim(std::optional<std::size_t> n) : n_(n) {}
  std::optional<std::size_t> n_;
};

inline void require_same_dim(const Dim& a, const Dim& b, std::string_view what) {
  if (a != b) fail(ErrorKind::DimensionMismatch, std::string(what) + ": " + a.to_string() + " vs " + b.to_string());
}

inline void require_index(const Dim& d, std::size_t i) {
  if (!d.contains(i)) {
    fail(ErrorKind::IndexOutOfRange, "index " + std::to_string(i) + " outside dimension " + d.to_string());
  }
}

/// Element of F^(alpha). Stores no zeros.
class FinSuppVec {
 public:
  using Entries = std::map<std::size_t, Scalar>;

  FinSuppVec(FieldSpec spec, Dim dim) : spec_(spec), dim_(dim) {}

  /// Drops zero values; rejects indices outside `dim` and foreign fields.
  static FinSuppVec from_map(FieldSpec spec, Dim dim, Entries entries) {
    FinSuppVec v(spec, dim);
    for (auto& [i, s] : entries) {
      require_index(dim, i);
      require_same_field(spec, s.spec());
      if (!s.is_zero()) v.entries_.emplace_hint(v.entries_.end(), i, std::move(s));
    }
    return v;
  }

  /// The basis vector delta_i.
  static FinSuppVec basis(FieldSpec spec, Dim dim, std::size_t i) {
    require_index(dim, i);
    FinSuppVec v(spec, dim);
    v.entries_.emplace(i, Scalar::one(spec));
    return v;
  }

  const FieldSpec& spec() const noexcept { return spec_; }
  const Dim& dim() const noexcept { return dim_; }
  const Entries& entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return entries_.empty(); }

  Scalar get(std::size_t i) const {
    require_index(dim_, i);
    auto it = entries_.find(i);
    return it == entries_.end() ? Scalar::zero(spec_) : it->second;
  }

  /// Largest index in the support.
  std::optional<std::size_t> max_index() const {
    if (entries_.empty()) return std::nullopt;
    return entries_.rbegin()->first;
  }

  friend bool operator==(const FinSuppVec&, const FinSuppVec&) = default;

 private:
  FieldSpec spec_;
  Dim dim_;
  Entries entries_;
};

struct ZerosTail {
  friend bool operator==(const ZerosTail&, const ZerosTail&) = default;
};

struct RepeatTail {
  DenseVec block;  // nonempty
  friend bool operator==(const RepeatTail&, const RepeatTail&) = default;
};

using TailSpec = std::variant<ZerosTail, RepeatTail>;

/// Element of F^alpha: coordinate i is prefix[i] for i < |prefix|, then the
/// tail rule. Always held in canonical form: minimal period, shortest prefix,
/// all-zero blocks collapsed to ZerosTail.
class ProdVec {
 public:
  static ProdVec make(FieldSpec spec, Dim dim, DenseVec prefix, TailSpec tail = ZerosTail{}) {
    for (const auto& s : prefix) require_same_field(spec, s.spec());
    if (auto* rep = std::get_if<RepeatTail>(&tail)) {
      if (rep->block.empty()) fail(ErrorKind::InvalidArgument, "repeat block must be nonempty");
      for (const auto& s : rep->block) require_same_field(spec, s.spec());
    }
    ProdVec v(spec, dim, std::move(prefix), std::move(tail));
    v.canonicalize();
    if (dim.is_finite()) {
      if (!v.tail_is_zeros()) fail(ErrorKind::InvalidArgument, "finite-dimensional vector must have a zeros tail");
      if (v.prefix_.size() > dim.size()) {
        fail(ErrorKind::DimensionMismatch,
             "prefix of length " + std::to_string(v.prefix_.size()) + " exceeds dimension " + dim.to_string());
      }
    }
    return v;
  }

  static ProdVec zero(FieldSpec spec, Dim dim) { return make(spec, dim, {}); }

  /// The inclusion F^(alpha) -> F^alpha.
  static ProdVec embed(const FinSuppVec& x) {
    DenseVec prefix;
    if (auto top = x.max_index()) {
      prefix.assign(*top + 1, Scalar::zero(x.spec()));
      for (const auto& [i, s] : x.entries()) prefix[i] = s;
    }
    return make(x.spec(), x.dim(), std::move(prefix));
  }

  const FieldSpec& spec() const noexcept { return spec_; }
  const Dim& dim() const noexcept { return dim_; }
  const DenseVec& prefix() const noexcept { return prefix_; }
  const TailSpec& tail() const noexcept { return tail_; }
  bool tail_is_zeros() const noexcept { return std::holds_alternative<ZerosTail>(tail_); }

  /// Length of the repeating block; a zeros tail counts as period 1.
  std::size_t period() const noexcept {
    auto* rep = std::get_if<RepeatTail>(&tail_);
    return rep ? rep->block.size() : 1;
  }

  bool is_zero() const noexcept { return prefix_.empty() && tail_is_zeros(); }

  /// Coordinate i (prod_get).
  Scalar get(std::size_t i) const {
    require_index(dim_, i);
    return coord(i);
  }

  friend bool operator==(const ProdVec&, const ProdVec&) = default;

 private:
  ProdVec(FieldSpec spec, Dim dim, DenseVec prefix, TailSpec tail)
      : spec_(spec), dim_(dim), prefix_(std::move(prefix)), tail_(std::move(tail)) {}

  Scalar coord(std::size_t i) const {
    if (i < prefix_.size()) return prefix_[i];
    if (auto* rep = std::get_if<RepeatTail>(&tail_)) return rep->block[(i - prefix_.size()) % rep->block.size()];
    return Scalar::zero(spec_);
  }

  void canonicalize() {
    if (auto* rep = std::get_if<RepeatTail>(&tail_)) {
      auto& block = rep->block;
      const std::size_t len = block.size();
      for (std::size_t d = 1; d <= len; ++d) {
        if (len % d != 0) continue;
        bool periodic = true;
        for (std::size_t t = d; t < len && periodic; ++t) periodic = block[t] == block[t - d];
        if (periodic) {
          block.resize(d, Scalar::zero(spec_));
          break;
        }
      }
      if (block.size() == 1 && block[0].is_zero()) {
        tail_ = ZerosTail{};
      } else {
        // Absorb prefix entries that already follow the periodic pattern.
        while (!prefix_.empty() && prefix_.back() == block.back()) {
          prefix_.pop_back();
          std::rotate(block.rbegin(), block.rbegin() + 1, block.rend());
        }
        return;
      }
    }
    while (!prefix_.empty() && prefix_.back().is_zero()) prefix_.pop_back();
  }

  FieldSpec spec_;
  Dim dim_;
  DenseVec prefix_;
  TailSpec tail_;
};

inline Scalar prod_get(const ProdVec& y, std::size_t i) { return y.get(i); }

namespace detail {

template <typename V>
void require_compatible(const V& u, const V& v) {
  require_same_field(u.spec(), v.spec());
  require_same_dim(u.dim(), v.dim(), "vector dimensions");
}

/// Applies `op` coordinatewise over the prefix/period structure of both inputs.
template <typename Op>
ProdVec zip_prod(const ProdVec& u, const ProdVec& v, Op op) {
  const std::size_t plen = std::max(u.prefix().size(), v.prefix().size());
  DenseVec prefix;
  prefix.reserve(plen);
  for (std::size_t i = 0; i < plen; ++i) prefix.push_back(op(u.get(i), v.get(i)));
  if (u.tail_is_zeros() && v.tail_is_zeros()) return ProdVec::make(u.spec(), u.dim(), std::move(prefix));
  const std::size_t period = std::lcm(u.period(), v.period());
  DenseVec block;
  block.reserve(period);
  for (std::size_t i = plen; i < plen + period; ++i) block.push_back(op(u.get(i), v.get(i)));
  return ProdVec::make(u.spec(), u.dim(), std::move(prefix), RepeatTail{std::move(block)});
}

}  // namespace detail

inline FinSuppVec vec_add(const FinSuppVec& u, const FinSuppVec& v) {
  detail::require_compatible(u, v);
  auto sum = u.entries();
  for (const auto& [i, s] : v.entries()) {
    auto [it, inserted] = sum.emplace(i, s);
    if (!inserted) it->second += s;
  }
  return FinSuppVec::from_map(u.spec(), u.dim(), std::move(sum));
}

inline ProdVec vec_add(const ProdVec& u, const ProdVec& v) {
  detail::require_compatible(u, v);
  return detail::zip_prod(u, v, [](const Scalar& a, const Scalar& b) { return a + b; });
}

inline FinSuppVec vec_scale(const Scalar& c, const FinSuppVec& u) {
  require_same_field(c.spec(), u.spec());
  auto scaled = u.entries();
  for (auto& [i, s] : scaled) s *= c;
  return FinSuppVec::from_map(u.spec(), u.dim(), std::move(scaled));
}

inline ProdVec vec_scale(const Scalar& c, const ProdVec& u) {
  require_same_field(c.spec(), u.spec());
  DenseVec prefix = u.prefix();
  for (auto& s : prefix) s *= c;
  TailSpec tail = u.tail();
  if (auto* rep = std::get_if<RepeatTail>(&tail)) {
    for (auto& s : rep->block) s *= c;
  }
  return ProdVec::make(u.spec(), u.dim(), std::move(prefix), std::move(tail));
}

template <typename V>
V vec_sub(const V& u, const V& v) {
  return vec_add(u, vec_scale(-Scalar::one(v.spec()), v));
}

inline bool vec_eq(const FinSuppVec& u, const FinSuppVec& v) {
  detail::require_compatible(u, v);
  return u.entries() == v.entries();
}

/// Number of leading coordinates that determine equality of u and v.
inline std::size_t equality_bound(const ProdVec& u, const ProdVec& v) {
  std::size_t bound = u.prefix().size() + v.prefix().size() + std::lcm(u.period(), v.period());
  if (u.dim().is_finite()) bound = std::min(bound, u.dim().size());
  return bound;
}

/// Coordinate comparison up to equality_bound; complete for prefix+periodic inputs.
inline bool vec_eq(const ProdVec& u, const ProdVec& v) {
  detail::require_compatible(u, v);
  const std::size_t bound = equality_bound(u, v);
  for (std::size_t i = 0; i < bound; ++i) {
    if (u.get(i) != v.get(i)) return false;
  }
  return true;
}

/// Evaluates the functional y on x: sum over supp(x) of x_i * y_i.
inline Scalar pair(const FinSuppVec& x, const ProdVec& y) {
  require_same_field(x.spec(), y.spec());
  require_same_dim(x.dim(), y.dim(), "pair");
  Scalar acc = Scalar::zero(x.spec());
  for (const auto& [i, s] : x.entries()) acc += s * y.get(i);
  return acc;
}

}  // namespace dualspace
