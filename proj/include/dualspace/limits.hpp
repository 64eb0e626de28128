#pragma once

// The quotient tower F^omega / V_n, with V_n = { y : y_i = 0 for i < n }.
//
// Under the coordinates (y_0, ..., y_{n-1}) the quotient F^omega / V_n is
// F^n and the transition map F^omega/V_n -> F^omega/V_m (m <= n) is
// truncation, so classes are never materialized: a stage is a dense vector.
// A Thread is a compatible family of stages 1..N, i.e. a finite-depth
// element of the inverse limit.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dualspace/dense.hpp"
#include "dualspace/error.hpp"
#include "dualspace/field.hpp"
#include "dualspace/seq.hpp"

namespace dualspace {

/// Class of y modulo V_n, as (y_0, ..., y_{n-1}).
inline DenseVec project(const ProdVec& y, std::size_t n) {
  if (y.dim().is_finite() && n > y.dim().size()) {
    fail(ErrorKind::IndexOutOfRange, "projection depth " + std::to_string(n) + " exceeds dimension " + y.dim().to_string());
  }
  DenseVec out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(y.get(i));
  return out;
}

/// Transition map F^n -> F^m: keep the first m coordinates.
inline DenseVec restrict(const DenseVec& x, std::size_t m) {
  if (m > x.size()) {
    fail(ErrorKind::BadTruncation, "cannot restrict length " + std::to_string(x.size()) + " to " + std::to_string(m));
  }
  return DenseVec(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m));
}

/// `stages[k]` is stage k+1. True iff every stage has the right length and
/// restricts onto every earlier stage.
inline bool check_compat(const std::vector<DenseVec>& stages) {
  for (std::size_t k = 0; k < stages.size(); ++k) {
    if (stages[k].size() != k + 1) return false;
  }
  // Checking consecutive stages is enough: truncations compose.
  for (std::size_t k = 1; k < stages.size(); ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      if (stages[k][i] != stages[k - 1][i]) return false;
    }
  }
  return true;
}

/// Membership and dimension queries for the canonical chain V_0 ⊇ V_1 ⊇ ...
class QuotientTower {
 public:
  explicit QuotientTower(FieldSpec spec) : spec_(spec) {}

  const FieldSpec& spec() const noexcept { return spec_; }

  /// y ∈ V_n, i.e. the first n coordinates vanish.
  bool contains(const ProdVec& y, std::size_t n) const {
    require_same_field(spec_, y.spec());
    for (std::size_t i = 0; i < n && y.dim().contains(i); ++i) {
      if (!y.get(i).is_zero()) return false;
    }
    return true;
  }

  /// dim(F^omega / V_n).
  std::size_t quotient_dim(std::size_t n) const noexcept { return n; }

  /// The canonical section F^n -> F^omega: pad with zeros.
  ProdVec lift(const DenseVec& stage) const {
    return ProdVec::make(spec_, Dim::omega(), stage);
  }

 private:
  FieldSpec spec_;
};

class Thread {
 public:
  /// Validates compatibility; `stages[k]` is stage k+1.
  static Thread from_stages(FieldSpec spec, std::vector<DenseVec> stages) {
    for (const auto& st : stages) {
      for (const auto& s : st) require_same_field(spec, s.spec());
    }
    if (!check_compat(stages)) fail(ErrorKind::IncompatibleThread, "stages do not restrict onto each other");
    return Thread(spec, std::move(stages));
  }

  const FieldSpec& spec() const noexcept { return spec_; }
  std::size_t depth() const noexcept { return stages_.size(); }

  /// Stage n, 1 <= n <= depth().
  const DenseVec& stage(std::size_t n) const {
    if (n == 0 || n > stages_.size()) {
      fail(ErrorKind::IndexOutOfRange, "stage " + std::to_string(n) + " outside 1.." + std::to_string(stages_.size()));
    }
    return stages_[n - 1];
  }

  const std::vector<DenseVec>& stages() const noexcept { return stages_; }

  friend bool operator==(const Thread&, const Thread&) = default;

 private:
  Thread(FieldSpec spec, std::vector<DenseVec> stages) : spec_(spec), stages_(std::move(stages)) {}

  FieldSpec spec_;
  std::vector<DenseVec> stages_;
};

inline Thread to_thread(const ProdVec& y, std::size_t depth) {
  if (!y.dim().is_omega()) fail(ErrorKind::DimensionMismatch, "threads are taken from vectors of dimension omega");
  std::vector<DenseVec> stages;
  stages.reserve(depth);
  const DenseVec full = project(y, depth);
  for (std::size_t n = 1; n <= depth; ++n) stages.push_back(restrict(full, n));
  return Thread::from_stages(y.spec(), std::move(stages));
}

/// The element agreeing with the deepest stage, extended by zeros.
inline ProdVec from_thread(const Thread& t) {
  if (!check_compat(t.stages())) fail(ErrorKind::IncompatibleThread, "stages do not restrict onto each other");
  if (t.depth() == 0) return ProdVec::zero(t.spec(), Dim::omega());
  return ProdVec::make(t.spec(), Dim::omega(), t.stage(t.depth()));
}

}  // namespace dualspace
