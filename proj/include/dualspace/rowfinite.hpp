#pragma once

// Row-finite matrices F^{beta,(alpha)}: every row has finite support.
//
// A matrix M acts two ways:
//   act_right(x, M) = x·M   on F^(beta) -> F^(alpha)   (finite support in, finite support out)
//   act_left(M, y)  = M·y   on F^alpha  -> F^beta      (coordinate j is pair(row j, y))
//
// Infinite row dimensions are described by one of three total rules
// (identity, shift, periodic diagonal) or by finitely many explicit rows.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>

#include "dualspace/dense.hpp"
#include "dualspace/error.hpp"
#include "dualspace/field.hpp"
#include "dualspace/seq.hpp"

namespace dualspace {

/// Finitely many nonzero rows, keyed by row index. Unlisted rows are zero.
struct ExplicitRows {
  std::map<std::size_t, FinSuppVec> rows;
  friend bool operator==(const ExplicitRows&, const ExplicitRows&) = default;
};

/// Entry (j, j) = 1.
struct IdentityRule {
  friend bool operator==(const IdentityRule&, const IdentityRule&) = default;
};

/// Entry (j, j + k) = 1.
struct ShiftRule {
  std::size_t k = 0;
  friend bool operator==(const ShiftRule&, const ShiftRule&) = default;
};

/// Entry (j, j) = block[j mod |block|].
struct DiagBlockRule {
  DenseVec block;
  friend bool operator==(const DiagBlockRule&, const DiagBlockRule&) = default;
};

using MatrixBody = std::variant<ExplicitRows, IdentityRule, ShiftRule, DiagBlockRule>;

class RowFiniteMatrix {
 public:
  /// Drops zero rows. Every row must have dimension `cols`.
  static RowFiniteMatrix explicit_rows(FieldSpec spec, Dim rows, Dim cols, std::map<std::size_t, FinSuppVec> body) {
    ExplicitRows er;
    for (auto& [j, r] : body) {
      require_index(rows, j);
      require_same_field(spec, r.spec());
      require_same_dim(r.dim(), cols, "row dimension");
      if (!r.is_zero()) er.rows.emplace_hint(er.rows.end(), j, std::move(r));
    }
    return RowFiniteMatrix(spec, rows, cols, std::move(er));
  }

  static RowFiniteMatrix zero(FieldSpec spec, Dim rows, Dim cols) { return explicit_rows(spec, rows, cols, {}); }

  static RowFiniteMatrix identity(FieldSpec spec, Dim dim) { return RowFiniteMatrix(spec, dim, dim, IdentityRule{}); }

  /// Requires cols = omega, or rows finite with rows + k <= cols.
  static RowFiniteMatrix shift(FieldSpec spec, Dim rows, Dim cols, std::size_t k) {
    if (cols.is_finite() && (rows.is_omega() || rows.size() + k > cols.size())) {
      fail(ErrorKind::DimensionMismatch, "shift " + std::to_string(k) + " does not fit " + rows.to_string() + "x" +
                                             cols.to_string());
    }
    return RowFiniteMatrix(spec, rows, cols, ShiftRule{k});
  }

  /// Requires rows <= cols.
  static RowFiniteMatrix diag_block(FieldSpec spec, Dim rows, Dim cols, DenseVec block) {
    if (block.empty()) fail(ErrorKind::InvalidArgument, "diagonal block must be nonempty");
    for (const auto& s : block) require_same_field(spec, s.spec());
    if (!rows.fits_in(cols)) {
      fail(ErrorKind::DimensionMismatch, "diagonal does not fit " + rows.to_string() + "x" + cols.to_string());
    }
    return RowFiniteMatrix(spec, rows, cols, DiagBlockRule{std::move(block)});
  }

  const FieldSpec& spec() const noexcept { return spec_; }
  const Dim& row_dim() const noexcept { return rows_; }
  const Dim& col_dim() const noexcept { return cols_; }
  const MatrixBody& body() const noexcept { return body_; }

  /// Row j as an element of F^(alpha): equals act_right(delta_j, *this).
  FinSuppVec row(std::size_t j) const {
    require_index(rows_, j);
    return std::visit(
        [&](const auto& b) -> FinSuppVec {
          using B = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<B, ExplicitRows>) {
            auto it = b.rows.find(j);
            return it == b.rows.end() ? FinSuppVec(spec_, cols_) : it->second;
          } else if constexpr (std::is_same_v<B, IdentityRule>) {
            return FinSuppVec::basis(spec_, cols_, j);
          } else if constexpr (std::is_same_v<B, ShiftRule>) {
            return FinSuppVec::basis(spec_, cols_, j + b.k);
          } else {
            return FinSuppVec::from_map(spec_, cols_, {{j, b.block[j % b.block.size()]}});
          }
        },
        body_);
  }

  Scalar entry(std::size_t j, std::size_t i) const {
    require_index(cols_, i);
    return row(j).get(i);
  }

  /// Locality bound N_j: coordinate j of M·y depends only on y_0 .. y_{N_j - 1}.
  std::size_t row_support_bound(std::size_t j) const {
    auto top = row(j).max_index();
    return top ? *top + 1 : 0;
  }

  bool is_zero() const {
    return std::visit(
        [&](const auto& b) -> bool {
          using B = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<B, ExplicitRows>) {
            return b.rows.empty();
          } else if constexpr (std::is_same_v<B, DiagBlockRule>) {
            if (rows_.is_finite() && rows_.size() < b.block.size()) {
              return std::all_of(b.block.begin(), b.block.begin() + static_cast<std::ptrdiff_t>(rows_.size()),
                                 [](const Scalar& s) { return s.is_zero(); });
            }
            return std::all_of(b.block.begin(), b.block.end(), [](const Scalar& s) { return s.is_zero(); });
          } else {
            return rows_.is_finite() && rows_.size() == 0;
          }
        },
        body_);
  }

  /// Dense copy of the top-left `r` x `c` corner.
  DenseMatrix truncate(std::size_t r, std::size_t c) const {
    DenseMatrix out(spec_, r, c);
    for (std::size_t j = 0; j < r; ++j) {
      const FinSuppVec rj = row(j);
      for (const auto& [i, s] : rj.entries()) {
        if (i < c) out.at(j, i) = s;
      }
    }
    return out;
  }

  friend bool operator==(const RowFiniteMatrix&, const RowFiniteMatrix&) = default;

 private:
  RowFiniteMatrix(FieldSpec spec, Dim rows, Dim cols, MatrixBody body)
      : spec_(spec), rows_(rows), cols_(cols), body_(std::move(body)) {}

  FieldSpec spec_;
  Dim rows_;
  Dim cols_;
  MatrixBody body_;
};

inline FinSuppVec row(const RowFiniteMatrix& m, std::size_t j) { return m.row(j); }

/// x·M: sum over supp(x) of x_j * row(M, j).
inline FinSuppVec act_right(const FinSuppVec& x, const RowFiniteMatrix& m) {
  require_same_field(x.spec(), m.spec());
  require_same_dim(x.dim(), m.row_dim(), "act_right");
  FinSuppVec::Entries acc;
  for (const auto& [j, s] : x.entries()) {
    const FinSuppVec r = m.row(j);
    for (const auto& [i, v] : r.entries()) {
      auto [it, inserted] = acc.emplace(i, s * v);
      if (!inserted) it->second += s * v;
    }
  }
  return FinSuppVec::from_map(m.spec(), m.col_dim(), std::move(acc));
}

/// Coordinate j of M·y, computed from the finite support of row j.
inline Scalar act_left_at(const RowFiniteMatrix& m, const ProdVec& y, std::size_t j) {
  require_same_field(m.spec(), y.spec());
  require_same_dim(y.dim(), m.col_dim(), "act_left");
  return pair(m.row(j), y);
}

/// M·y. For finite row dimension the result is computed coordinatewise; for
/// omega rows each body variant has a closed prefix/tail form.
inline ProdVec act_left(const RowFiniteMatrix& m, const ProdVec& y) {
  require_same_field(m.spec(), y.spec());
  require_same_dim(y.dim(), m.col_dim(), "act_left");
  const FieldSpec spec = m.spec();
  const Dim& rows = m.row_dim();

  if (rows.is_finite()) {
    DenseVec out;
    out.reserve(rows.size());
    if (const auto* er = std::get_if<ExplicitRows>(&m.body())) {
      out.assign(rows.size(), Scalar::zero(spec));
      for (const auto& [j, r] : er->rows) out[j] = pair(r, y);
    } else {
      for (std::size_t j = 0; j < rows.size(); ++j) out.push_back(pair(m.row(j), y));
    }
    return ProdVec::make(spec, rows, std::move(out));
  }

  return std::visit(
      [&](const auto& b) -> ProdVec {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, ExplicitRows>) {
          DenseVec out;
          if (!b.rows.empty()) {
            out.assign(b.rows.rbegin()->first + 1, Scalar::zero(spec));
            for (const auto& [j, r] : b.rows) out[j] = pair(r, y);
          }
          return ProdVec::make(spec, rows, std::move(out));
        } else if constexpr (std::is_same_v<B, IdentityRule>) {
          return y;
        } else if constexpr (std::is_same_v<B, ShiftRule>) {
          const auto& prefix = y.prefix();
          if (b.k <= prefix.size()) {
            return ProdVec::make(spec, rows, DenseVec(prefix.begin() + static_cast<std::ptrdiff_t>(b.k), prefix.end()),
                                 y.tail());
          }
          TailSpec tail = y.tail();
          if (auto* rep = std::get_if<RepeatTail>(&tail)) {
            const std::size_t skip = (b.k - prefix.size()) % rep->block.size();
            std::rotate(rep->block.begin(), rep->block.begin() + static_cast<std::ptrdiff_t>(skip), rep->block.end());
          }
          return ProdVec::make(spec, rows, {}, std::move(tail));
        } else {
          const auto& block = b.block;
          const std::size_t plen = y.prefix().size();
          DenseVec prefix;
          prefix.reserve(plen);
          for (std::size_t j = 0; j < plen; ++j) prefix.push_back(block[j % block.size()] * y.get(j));
          if (y.tail_is_zeros()) return ProdVec::make(spec, rows, std::move(prefix));
          const std::size_t period = std::lcm(block.size(), y.period());
          DenseVec tail;
          tail.reserve(period);
          for (std::size_t j = plen; j < plen + period; ++j) tail.push_back(block[j % block.size()] * y.get(j));
          return ProdVec::make(spec, rows, std::move(prefix), RepeatTail{std::move(tail)});
        }
      },
      m.body());
}

namespace detail {

/// Omega-row rules viewed as "row j = c_j * delta_{j+offset}" with c periodic.
struct PeriodicRule {
  std::size_t offset;
  DenseVec block;
};

inline std::optional<PeriodicRule> as_periodic_rule(const RowFiniteMatrix& m) {
  const FieldSpec spec = m.spec();
  if (std::holds_alternative<IdentityRule>(m.body())) return PeriodicRule{0, {Scalar::one(spec)}};
  if (const auto* s = std::get_if<ShiftRule>(&m.body())) return PeriodicRule{s->k, {Scalar::one(spec)}};
  if (const auto* d = std::get_if<DiagBlockRule>(&m.body())) return PeriodicRule{0, d->block};
  return std::nullopt;
}

inline bool periodic_equal(const DenseVec& a, const DenseVec& b) {
  const std::size_t n = std::lcm(a.size(), b.size());
  for (std::size_t t = 0; t < n; ++t) {
    if (a[t % a.size()] != b[t % b.size()]) return false;
  }
  return true;
}

inline bool all_zero(const DenseVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

inline bool all_one(const DenseVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_one(); });
}

/// True when m has the entries of the identity matrix on its row range
/// (for omega rows this makes it the identity of F^omega).
inline bool acts_as_identity(const RowFiniteMatrix& m) {
  if (std::holds_alternative<IdentityRule>(m.body())) return true;
  if (m.row_dim() != m.col_dim()) return false;
  if (const auto* s = std::get_if<ShiftRule>(&m.body())) return s->k == 0;
  if (const auto* d = std::get_if<DiagBlockRule>(&m.body())) return all_one(d->block);
  return false;
}

}  // namespace detail

/// Matrix of x ↦ (x·A)·B, i.e. row j of the result is act_right(row(A, j), B).
/// Closed forms are kept where they exist (identity absorbing, shift∘shift,
/// diag∘diag, rule∘explicit); otherwise rows are materialized, which needs a
/// finite row dimension or an explicit left operand.
inline RowFiniteMatrix compose(const RowFiniteMatrix& a, const RowFiniteMatrix& b) {
  require_same_field(a.spec(), b.spec());
  require_same_dim(a.col_dim(), b.row_dim(), "compose inner dimension");
  const FieldSpec spec = a.spec();
  const Dim rows = a.row_dim();
  const Dim cols = b.col_dim();

  if (std::holds_alternative<IdentityRule>(a.body())) return b;
  if (std::holds_alternative<IdentityRule>(b.body())) return a;

  const auto* sa = std::get_if<ShiftRule>(&a.body());
  const auto* sb = std::get_if<ShiftRule>(&b.body());
  if (sa && sb) return RowFiniteMatrix::shift(spec, rows, cols, sa->k + sb->k);

  const auto* da = std::get_if<DiagBlockRule>(&a.body());
  const auto* db = std::get_if<DiagBlockRule>(&b.body());
  if (da && db) {
    const std::size_t n = std::lcm(da->block.size(), db->block.size());
    DenseVec block;
    block.reserve(n);
    for (std::size_t t = 0; t < n; ++t) block.push_back(da->block[t % da->block.size()] * db->block[t % db->block.size()]);
    return RowFiniteMatrix::diag_block(spec, rows, cols, std::move(block));
  }

  if (const auto* ea = std::get_if<ExplicitRows>(&a.body())) {
    std::map<std::size_t, FinSuppVec> out;
    for (const auto& [j, r] : ea->rows) out.emplace_hint(out.end(), j, act_right(r, b));
    return RowFiniteMatrix::explicit_rows(spec, rows, cols, std::move(out));
  }

  if (rows.is_finite()) {
    std::map<std::size_t, FinSuppVec> out;
    for (std::size_t j = 0; j < rows.size(); ++j) out.emplace_hint(out.end(), j, act_right(a.row(j), b));
    return RowFiniteMatrix::explicit_rows(spec, rows, cols, std::move(out));
  }

  // Omega rows from here on; a is a rule.
  if (detail::acts_as_identity(a)) return b;
  if (const auto* eb = std::get_if<ExplicitRows>(&b.body())) {
    std::map<std::size_t, FinSuppVec> out;
    if (sa) {
      for (const auto& [i, r] : eb->rows) {
        if (i >= sa->k) out.emplace_hint(out.end(), i - sa->k, r);
      }
    } else {
      for (const auto& [i, r] : eb->rows) out.emplace_hint(out.end(), i, vec_scale(da->block[i % da->block.size()], r));
    }
    return RowFiniteMatrix::explicit_rows(spec, rows, cols, std::move(out));
  }
  if (detail::acts_as_identity(b)) return a;
  if ((da && detail::all_zero(da->block)) || (db && detail::all_zero(db->block))) {
    return RowFiniteMatrix::zero(spec, rows, cols);
  }
  fail(ErrorKind::UnrepresentableComposite,
       "shift and periodic diagonal on omega rows have no closed-form composite");
}

/// Exact equality of matrices. Decidable for every body variant: with omega
/// rows a nonzero rule has infinitely many nonzero rows, so it never equals
/// an explicit matrix, and two rules agree iff offsets and periodic blocks do.
inline bool mat_eq(const RowFiniteMatrix& a, const RowFiniteMatrix& b) {
  require_same_field(a.spec(), b.spec());
  require_same_dim(a.row_dim(), b.row_dim(), "mat_eq rows");
  require_same_dim(a.col_dim(), b.col_dim(), "mat_eq cols");

  if (a.row_dim().is_finite()) {
    const auto* ea = std::get_if<ExplicitRows>(&a.body());
    const auto* eb = std::get_if<ExplicitRows>(&b.body());
    if (ea && eb) return ea->rows == eb->rows;
    for (std::size_t j = 0; j < a.row_dim().size(); ++j) {
      if (a.row(j) != b.row(j)) return false;
    }
    return true;
  }

  const bool za = a.is_zero();
  const bool zb = b.is_zero();
  if (za || zb) return za && zb;
  const auto ra = detail::as_periodic_rule(a);
  const auto rb = detail::as_periodic_rule(b);
  if (!ra && !rb) return std::get<ExplicitRows>(a.body()).rows == std::get<ExplicitRows>(b.body()).rows;
  if (!ra || !rb) return false;
  return ra->offset == rb->offset && detail::periodic_equal(ra->block, rb->block);
}

}  // namespace dualspace
