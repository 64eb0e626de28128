#pragma once

// The dual functor Hom(-, F) on the sequence spaces.
//
// Objects: F^(alpha) goes to F^alpha, a functional y on F^(alpha) being
// identified with its values (y(delta_i))_i, so pair(x, y) is evaluation.
// Morphisms: f = (x ↦ x·M) goes to y ↦ y∘f, which is y ↦ M·y, the left action
// of the same matrix. A DualMorphism is therefore a matrix plus the side it
// acts on, and dualizing flips the side.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "dualspace/dense.hpp"
#include "dualspace/error.hpp"
#include "dualspace/rowfinite.hpp"
#include "dualspace/seq.hpp"

namespace dualspace {

enum class Orientation {
  RightOnFinSupp,  // F^(beta) -> F^(alpha), x ↦ x·M
  LeftOnProd,      // F^alpha -> F^beta, y ↦ M·y
};

inline std::string_view to_string(Orientation o) {
  return o == Orientation::RightOnFinSupp ? "RightOnFinSupp" : "LeftOnProd";
}

struct DualMorphism {
  RowFiniteMatrix matrix;
  Orientation orientation;

  FinSuppVec operator()(const FinSuppVec& x) const {
    if (orientation != Orientation::RightOnFinSupp) {
      fail(ErrorKind::PreconditionViolated, "left-action morphism applied to a finite-support vector");
    }
    return act_right(x, matrix);
  }

  ProdVec operator()(const ProdVec& y) const {
    if (orientation != Orientation::LeftOnProd) {
      fail(ErrorKind::PreconditionViolated, "right-action morphism applied to a product vector");
    }
    return act_left(matrix, y);
  }

  friend bool operator==(const DualMorphism&, const DualMorphism&) = default;
};

/// Same matrix, opposite side. dual(dual(m)) == m.
inline DualMorphism dual(const DualMorphism& m) {
  return {m.matrix, m.orientation == Orientation::RightOnFinSupp ? Orientation::LeftOnProd
                                                                 : Orientation::RightOnFinSupp};
}

/// pair(x·F, y) == pair(x, F·y), both sides computed exactly.
inline bool check_adjoint(const RowFiniteMatrix& f, const FinSuppVec& x, const ProdVec& y) {
  require_same_field(f.spec(), x.spec());
  require_same_field(f.spec(), y.spec());
  require_same_dim(x.dim(), f.row_dim(), "check_adjoint x");
  require_same_dim(y.dim(), f.col_dim(), "check_adjoint y");
  return pair(act_right(x, f), y) == pair(x, act_left(f, y));
}

/// A nonzero entry F_{row,col}.
struct Witness {
  std::size_t col;  // i
  std::size_t row;  // j
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// First nonzero entry in row-major order, or nullopt iff F = 0.
///
/// Pairing F with the functional delta_col picks out column `col` of F, so
/// a nonzero entry is exactly a functional that f does not annihilate.
inline std::optional<Witness> faithful_witness(const RowFiniteMatrix& f) {
  const Dim& rows = f.row_dim();
  return std::visit(
      [&](const auto& b) -> std::optional<Witness> {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, ExplicitRows>) {
          if (b.rows.empty()) return std::nullopt;
          const auto& [j, r] = *b.rows.begin();
          return Witness{r.entries().begin()->first, j};
        } else if constexpr (std::is_same_v<B, IdentityRule>) {
          if (!rows.contains(0)) return std::nullopt;
          return Witness{0, 0};
        } else if constexpr (std::is_same_v<B, ShiftRule>) {
          if (!rows.contains(0)) return std::nullopt;
          return Witness{b.k, 0};
        } else {
          for (std::size_t j = 0; j < b.block.size() && rows.contains(j); ++j) {
            if (!b.block[j].is_zero()) return Witness{j, j};
          }
          return std::nullopt;
        }
      },
      f.body());
}

/// Coordinate `row` of F·delta_col is nonzero.
inline bool validate_witness(const RowFiniteMatrix& f, const Witness& w) {
  const ProdVec probe = ProdVec::embed(FinSuppVec::basis(f.spec(), f.col_dim(), w.col));
  return !act_left(f, probe).get(w.row).is_zero();
}

/// The G-morphism whose dual is y ↦ G·y.
inline DualMorphism full_preimage(const RowFiniteMatrix& g) { return {g, Orientation::RightOnFinSupp}; }

namespace detail {

/// Number of columns of the dense truncation used for rank/solve, after
/// checking that every row's support lies inside it.
inline std::size_t truncation_width(const RowFiniteMatrix& f, std::size_t trunc) {
  if (!f.row_dim().is_finite()) fail(ErrorKind::PreconditionViolated, "row dimension must be finite");
  const std::size_t width = f.col_dim().is_finite() ? std::min(trunc, f.col_dim().size()) : trunc;
  for (std::size_t j = 0; j < f.row_dim().size(); ++j) {
    if (f.row_support_bound(j) > width) {
      fail(ErrorKind::TruncationTooSmall, "row " + std::to_string(j) + " has support beyond column " +
                                              std::to_string(width));
    }
  }
  return width;
}

}  // namespace detail

/// Injectivity of x ↦ x·F for finite beta: the rows, truncated to `trunc`
/// columns, have full rank.
inline bool rows_independent(const RowFiniteMatrix& f, std::size_t trunc) {
  const std::size_t width = detail::truncation_width(f, trunc);
  const std::size_t beta = f.row_dim().size();
  return rank(f.truncate(beta, width)) == beta;
}

/// For each j < beta, a y supported below `trunc` with F·y = delta_j, each
/// already re-checked by applying F. nullopt if some delta_j has no preimage.
inline std::optional<std::vector<ProdVec>> exactness_solutions(const RowFiniteMatrix& f, std::size_t trunc) {
  const std::size_t width = detail::truncation_width(f, trunc);
  const std::size_t beta = f.row_dim().size();
  const DenseMatrix a = f.truncate(beta, width);
  if (rank(a) != beta) fail(ErrorKind::PreconditionViolated, "rows are not independent");

  std::vector<ProdVec> solutions;
  solutions.reserve(beta);
  for (std::size_t j = 0; j < beta; ++j) {
    DenseVec rhs(beta, Scalar::zero(f.spec()));
    rhs[j] = Scalar::one(f.spec());
    auto x = gauss_solve(a, rhs);
    if (!x) return std::nullopt;
    ProdVec y = ProdVec::make(f.spec(), f.col_dim(), std::move(*x));
    const ProdVec target = ProdVec::embed(FinSuppVec::basis(f.spec(), f.row_dim(), j));
    if (!vec_eq(act_left(f, y), target)) return std::nullopt;
    solutions.push_back(std::move(y));
  }
  return solutions;
}

/// The dual of the injection x ↦ x·F is surjective: every basis functional
/// of F^beta is hit.
inline bool check_exactness(const RowFiniteMatrix& f, std::size_t trunc) {
  return exactness_solutions(f, trunc).has_value();
}

}  // namespace dualspace
