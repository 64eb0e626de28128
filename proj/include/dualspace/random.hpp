#pragma once

// Seeded generators for randomized law checking.
//
// std::mt19937_64 output is fixed by the standard, but the std::*_distribution
// templates are not, so bounded draws are done by hand to keep reports
// byte-identical across standard libraries.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>

#include "dualspace/dense.hpp"
#include "dualspace/field.hpp"
#include "dualspace/rowfinite.hpp"
#include "dualspace/seq.hpp"

namespace dualspace {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent seed for case `index` of stream `stream`.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return mix64(mix64(mix64(seed) ^ stream) ^ index);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish in [0, n); n > 0.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

  /// Inclusive range.
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

  std::int64_t between_signed(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::size_t>(hi - lo + 1)));
  }

  /// True with probability num/den.
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

struct GenLimits {
  std::size_t max_dim = 32;          // finite dimensions are drawn from [0, max_dim]
  std::size_t omega_horizon = 40;    // support indices drawn below this for omega dims
  std::size_t max_prefix = 8;
  std::size_t max_period = 5;
  std::size_t max_omega_rows = 20;   // explicit rows on omega row dimension
  std::size_t max_shift = 6;
  std::size_t max_block = 4;
};

inline Scalar random_scalar(Rng& rng, FieldSpec spec) {
  if (spec.is_prime_field()) return Scalar::from_int(spec, static_cast<std::int64_t>(rng.below(spec.modulus())));
  if (rng.chance(1, 5)) return Scalar::zero(spec);
  const auto num = rng.between_signed(-9, 9);
  const auto den = rng.between_signed(1, 9);
  return Scalar::rational(spec, num, den);
}

inline Scalar random_nonzero(Rng& rng, FieldSpec spec) {
  for (;;) {
    Scalar s = random_scalar(rng, spec);
    if (!s.is_zero()) return s;
  }
}

inline Dim random_finite_dim(Rng& rng, std::size_t lo, std::size_t hi) { return Dim::finite(rng.between(lo, hi)); }

/// Index range [0, bound) that random supports are drawn from.
inline std::size_t index_bound(const Dim& d, const GenLimits& lim) {
  return d.is_finite() ? d.size() : lim.omega_horizon;
}

inline FinSuppVec random_finsupp(Rng& rng, FieldSpec spec, Dim dim, const GenLimits& lim = {},
                                 std::size_t max_support = 6) {
  const std::size_t bound = index_bound(dim, lim);
  FinSuppVec::Entries entries;
  if (bound == 0) return FinSuppVec(spec, dim);
  const std::size_t n = rng.below(max_support + 1);
  for (std::size_t k = 0; k < n; ++k) entries.insert_or_assign(rng.below(bound), random_nonzero(rng, spec));
  return FinSuppVec::from_map(spec, dim, std::move(entries));
}

inline ProdVec random_prodvec(Rng& rng, FieldSpec spec, Dim dim, const GenLimits& lim = {}) {
  DenseVec prefix;
  if (dim.is_finite()) {
    const std::size_t len = rng.chance(2, 3) ? dim.size() : rng.below(dim.size() + 1);
    for (std::size_t i = 0; i < len; ++i) prefix.push_back(random_scalar(rng, spec));
    return ProdVec::make(spec, dim, std::move(prefix));
  }
  const std::size_t len = rng.below(lim.max_prefix + 1);
  for (std::size_t i = 0; i < len; ++i) prefix.push_back(random_scalar(rng, spec));
  if (rng.chance(1, 3)) return ProdVec::make(spec, dim, std::move(prefix));
  DenseVec block;
  const std::size_t period = rng.between(1, lim.max_period);
  for (std::size_t i = 0; i < period; ++i) block.push_back(random_scalar(rng, spec));
  return ProdVec::make(spec, dim, std::move(prefix), RepeatTail{std::move(block)});
}

/// Explicit rows; on omega row dimension only the first max_omega_rows rows can be nonzero.
inline RowFiniteMatrix random_explicit(Rng& rng, FieldSpec spec, Dim rows, Dim cols, const GenLimits& lim = {}) {
  const std::size_t row_bound = rows.is_finite() ? rows.size() : lim.max_omega_rows;
  std::map<std::size_t, FinSuppVec> body;
  for (std::size_t j = 0; j < row_bound; ++j) {
    if (rng.chance(1, 2)) body.emplace(j, random_finsupp(rng, spec, cols, lim, 4));
  }
  return RowFiniteMatrix::explicit_rows(spec, rows, cols, std::move(body));
}

inline DenseVec random_block(Rng& rng, FieldSpec spec, const GenLimits& lim) {
  DenseVec block;
  const std::size_t len = rng.between(1, lim.max_block);
  for (std::size_t i = 0; i < len; ++i) block.push_back(random_scalar(rng, spec));
  return block;
}

enum class BodyKind { Explicit, Identity, Shift, DiagBlock };

/// Omega x omega matrix of the requested kind.
inline RowFiniteMatrix random_omega_matrix(Rng& rng, FieldSpec spec, BodyKind kind, const GenLimits& lim = {}) {
  const Dim w = Dim::omega();
  switch (kind) {
    case BodyKind::Identity: return RowFiniteMatrix::identity(spec, w);
    case BodyKind::Shift: return RowFiniteMatrix::shift(spec, w, w, rng.below(lim.max_shift + 1));
    case BodyKind::DiagBlock: return RowFiniteMatrix::diag_block(spec, w, w, random_block(rng, spec, lim));
    case BodyKind::Explicit: break;
  }
  return random_explicit(rng, spec, w, w, lim);
}

inline BodyKind random_kind(Rng& rng) { return static_cast<BodyKind>(rng.below(4)); }

/// Finite-row matrix of any body kind that fits rows x cols (falls back to
/// explicit rows when a rule does not fit).
inline RowFiniteMatrix random_finite_matrix(Rng& rng, FieldSpec spec, Dim rows, Dim cols, const GenLimits& lim = {}) {
  switch (random_kind(rng)) {
    case BodyKind::Identity:
      if (rows == cols) return RowFiniteMatrix::identity(spec, rows);
      break;
    case BodyKind::Shift:
      if (cols.is_omega() || rows.size() <= cols.size()) {
        const std::size_t room = cols.is_omega() ? lim.max_shift : cols.size() - rows.size();
        return RowFiniteMatrix::shift(spec, rows, cols, rng.below(std::min(room, lim.max_shift) + 1));
      }
      break;
    case BodyKind::DiagBlock:
      if (rows.fits_in(cols)) return RowFiniteMatrix::diag_block(spec, rows, cols, random_block(rng, spec, lim));
      break;
    case BodyKind::Explicit: break;
  }
  return random_explicit(rng, spec, rows, cols, lim);
}

}  // namespace dualspace
