#pragma once

// Randomized checks of the duality laws, one function per case, plus the
// suite runner and report formatter used by `dualspace verify`.
//
// Every case draws from its own Rng seeded by split_seed(seed, suite, index),
// so results do not depend on evaluation order.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dualspace/dense.hpp"
#include "dualspace/duality.hpp"
#include "dualspace/error.hpp"
#include "dualspace/field.hpp"
#include "dualspace/io.hpp"
#include "dualspace/limits.hpp"
#include "dualspace/random.hpp"
#include "dualspace/rowfinite.hpp"
#include "dualspace/seq.hpp"

namespace dualspace {

/// The inputs of a failed case, as (file name, file content) pairs.
struct Counterexample {
  std::string note;
  std::vector<std::pair<std::string, std::string>> files;
};

using CaseResult = std::optional<Counterexample>;  // nullopt: the case passed

struct LawResult {
  std::string law;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::optional<Counterexample> first_failure;
  std::optional<std::string> counterexample_path;

  bool passed() const noexcept { return failures == 0; }
};

namespace detail {

inline Counterexample counterexample(std::string note, std::initializer_list<std::pair<std::string, std::string>> files) {
  return Counterexample{std::move(note), std::vector<std::pair<std::string, std::string>>(files)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cases

/// pair(x·F, y) == pair(x, F·y). Finite: beta, alpha <= lim.max_dim with any
/// body that fits. Omega: omega x omega rule or explicit bodies.
inline CaseResult adjoint_case(Rng& rng, FieldSpec spec, bool omega, const GenLimits& lim = {}) {
  const Dim rows = omega ? Dim::omega() : random_finite_dim(rng, 0, lim.max_dim);
  const Dim cols = omega ? Dim::omega() : random_finite_dim(rng, 0, lim.max_dim);
  const RowFiniteMatrix f =
      omega ? random_omega_matrix(rng, spec, random_kind(rng), lim) : random_finite_matrix(rng, spec, rows, cols, lim);
  const FinSuppVec x = random_finsupp(rng, spec, rows, lim);
  const ProdVec y = random_prodvec(rng, spec, cols, lim);
  if (check_adjoint(f, x, y)) return std::nullopt;
  return detail::counterexample("pair(x.F, y) != pair(x, F.y)",
                                {{"matrix.dsm", io::serialize(f)}, {"x.dsv", io::serialize(x)}, {"y.dsv", io::serialize(y)}});
}

/// Composites of omega rule bodies that have a closed form.
inline std::pair<BodyKind, BodyKind> composable_kinds(Rng& rng) {
  BodyKind a = random_kind(rng);
  BodyKind b = random_kind(rng);
  const bool mixed = (a == BodyKind::Shift && b == BodyKind::DiagBlock) || (a == BodyKind::DiagBlock && b == BodyKind::Shift);
  if (mixed) b = a;
  return {a, b};
}

/// Contravariance of the dual and identity preservation:
///   (A∘B)·y = A·(B·y),  x·(A∘B) = (x·A)·B,  I·y = y,  x·I = x,
///   dual(I on the right) = I on the left,  I∘A = A = A∘I.
inline CaseResult functor_case(Rng& rng, FieldSpec spec, bool omega, const GenLimits& lim = {}) {
  RowFiniteMatrix a = RowFiniteMatrix::zero(spec, Dim::omega(), Dim::omega());
  RowFiniteMatrix b = a;
  if (omega) {
    const auto [ka, kb] = composable_kinds(rng);
    a = random_omega_matrix(rng, spec, ka, lim);
    b = random_omega_matrix(rng, spec, kb, lim);
  } else {
    const std::size_t top = std::min<std::size_t>(lim.max_dim, 16);
    const Dim beta = random_finite_dim(rng, 0, top);
    const Dim gamma = random_finite_dim(rng, 0, top);
    const Dim alpha = random_finite_dim(rng, 0, top);
    a = random_finite_matrix(rng, spec, beta, gamma, lim);
    b = random_finite_matrix(rng, spec, gamma, alpha, lim);
  }
  const FinSuppVec x = random_finsupp(rng, spec, a.row_dim(), lim);
  const ProdVec y = random_prodvec(rng, spec, b.col_dim(), lim);
  const RowFiniteMatrix ab = compose(a, b);
  auto report = [&](std::string note) {
    return detail::counterexample(std::move(note), {{"a.dsm", io::serialize(a)},
                                                    {"b.dsm", io::serialize(b)},
                                                    {"x.dsv", io::serialize(x)},
                                                    {"y.dsv", io::serialize(y)}});
  };

  if (!vec_eq(act_left(ab, y), act_left(a, act_left(b, y)))) return report("(A.B).y != A.(B.y)");
  if (!vec_eq(act_right(x, ab), act_right(act_right(x, a), b))) return report("x.(A.B) != (x.A).B");

  const auto id_beta = RowFiniteMatrix::identity(spec, a.row_dim());
  const auto id_alpha = RowFiniteMatrix::identity(spec, b.col_dim());
  if (!vec_eq(act_left(id_alpha, y), y)) return report("I.y != y");
  if (!vec_eq(act_right(x, id_beta), x)) return report("x.I != x");
  const DualMorphism id_right{id_beta, Orientation::RightOnFinSupp};
  const DualMorphism id_dual = dual(id_right);
  if (id_dual.orientation != Orientation::LeftOnProd || !mat_eq(id_dual.matrix, id_beta)) {
    return report("dual of identity is not the identity");
  }
  if (!mat_eq(compose(id_beta, a), a) || !mat_eq(compose(a, RowFiniteMatrix::identity(spec, a.col_dim())), a)) {
    return report("identity does not absorb");
  }
  return std::nullopt;
}

/// Nonzero F yields a witness (col, row) with F_{row,col} != 0 that is the
/// first nonzero entry in row-major order and survives validation; the zero
/// matrix of the same shape yields none.
inline CaseResult faithful_case(Rng& rng, FieldSpec spec, bool omega, const GenLimits& lim = {}) {
  const Dim rows = omega ? Dim::omega() : random_finite_dim(rng, 1, lim.max_dim);
  const Dim cols = omega ? Dim::omega() : random_finite_dim(rng, 1, lim.max_dim);
  RowFiniteMatrix f =
      omega ? random_omega_matrix(rng, spec, random_kind(rng), lim) : random_finite_matrix(rng, spec, rows, cols, lim);
  if (f.is_zero()) {
    const std::size_t j = rng.below(index_bound(rows, lim));
    const std::size_t i = rng.below(index_bound(cols, lim));
    f = RowFiniteMatrix::explicit_rows(spec, rows, cols,
                                       {{j, FinSuppVec::from_map(spec, cols, {{i, random_nonzero(rng, spec)}})}});
  }
  auto report = [&](std::string note) { return detail::counterexample(std::move(note), {{"matrix.dsm", io::serialize(f)}}); };

  const auto w = faithful_witness(f);
  if (!w) return report("no witness for a nonzero matrix");
  if (f.entry(w->row, w->col).is_zero()) return report("witness entry is zero");
  if (!validate_witness(f, *w)) return report("witness fails validation");
  for (std::size_t j = 0; j < w->row; ++j) {
    if (!f.row(j).is_zero()) return report("witness is not the first nonzero row");
  }
  if (f.row(w->row).entries().begin()->first != w->col) return report("witness is not the first nonzero column");

  if (faithful_witness(RowFiniteMatrix::zero(spec, rows, cols))) return report("zero matrix has a witness");
  return std::nullopt;
}

/// dual(full_preimage(G)) is y ↦ G·y with the identical matrix.
inline CaseResult full_case(Rng& rng, FieldSpec spec, bool omega, const GenLimits& lim = {}) {
  const Dim rows = omega ? Dim::omega() : random_finite_dim(rng, 0, lim.max_dim);
  const Dim cols = omega ? Dim::omega() : random_finite_dim(rng, 0, lim.max_dim);
  const RowFiniteMatrix g =
      omega ? random_omega_matrix(rng, spec, random_kind(rng), lim) : random_finite_matrix(rng, spec, rows, cols, lim);
  const ProdVec y = random_prodvec(rng, spec, g.col_dim(), lim);
  const FinSuppVec x = random_finsupp(rng, spec, g.row_dim(), lim);
  auto report = [&](std::string note) {
    return detail::counterexample(std::move(note), {{"matrix.dsm", io::serialize(g)}, {"y.dsv", io::serialize(y)}});
  };

  const DualMorphism pre = full_preimage(g);
  if (pre.orientation != Orientation::RightOnFinSupp) return report("preimage is not a right action");
  if (!vec_eq(pre(x), act_right(x, g))) return report("preimage does not act as x.G");
  const DualMorphism back = dual(pre);
  if (back.orientation != Orientation::LeftOnProd) return report("dual of preimage is not a left action");
  if (!mat_eq(back.matrix, g)) return report("dual(full_preimage(G)) != G");
  if (!vec_eq(back(y), act_left(g, y))) return report("dual(full_preimage(G)) does not act as G.y");
  return std::nullopt;
}

/// Random F with independent rows, beta <= 6 and alpha <= min(12, trunc).
inline RowFiniteMatrix random_independent_rows(Rng& rng, FieldSpec spec, std::size_t trunc) {
  const std::size_t max_alpha = std::min<std::size_t>(12, trunc);
  const std::size_t beta = rng.between(1, std::min<std::size_t>(6, max_alpha));
  const std::size_t alpha = rng.between(beta, max_alpha);
  for (;;) {
    std::map<std::size_t, FinSuppVec> body;
    for (std::size_t j = 0; j < beta; ++j) {
      FinSuppVec::Entries entries;
      for (std::size_t i = 0; i < alpha; ++i) {
        if (rng.chance(1, 2)) entries.emplace(i, random_scalar(rng, spec));
      }
      body.emplace(j, FinSuppVec::from_map(spec, Dim::finite(alpha), std::move(entries)));
    }
    auto f = RowFiniteMatrix::explicit_rows(spec, Dim::finite(beta), Dim::finite(alpha), std::move(body));
    if (rows_independent(f, trunc)) return f;
  }
}

/// The dual of an injection is onto: every delta_j has a preimage under
/// y ↦ F·y, and each reported preimage maps to delta_j when re-applied.
inline CaseResult exact_case(Rng& rng, FieldSpec spec, std::size_t trunc) {
  const RowFiniteMatrix f = random_independent_rows(rng, spec, trunc);
  auto report = [&](std::string note) { return detail::counterexample(std::move(note), {{"matrix.dsm", io::serialize(f)}}); };
  if (!check_exactness(f, trunc)) return report("some basis functional has no preimage");
  const auto solutions = exactness_solutions(f, trunc);
  for (std::size_t j = 0; j < solutions->size(); ++j) {
    const ProdVec image = act_left(f, (*solutions)[j]);
    for (std::size_t r = 0; r < f.row_dim().size(); ++r) {
      if (image.get(r) != (r == j ? Scalar::one(spec) : Scalar::zero(spec))) return report("preimage re-check failed");
    }
  }
  return std::nullopt;
}

/// Thread compatibility, naturality of projections, the limit roundtrip at
/// the given depth, and Hausdorff separation.
inline CaseResult limits_case(Rng& rng, FieldSpec spec, std::size_t depth, const GenLimits& lim = {}) {
  const ProdVec y = random_prodvec(rng, spec, Dim::omega(), lim);
  auto report = [&](std::string note) { return detail::counterexample(std::move(note), {{"y.dsv", io::serialize(y)}}); };

  const Thread t = to_thread(y, depth);
  if (!check_compat(t.stages())) return report("thread is not compatible");

  std::vector<DenseVec> projections;
  projections.reserve(depth + 1);
  for (std::size_t n = 0; n <= depth; ++n) projections.push_back(project(y, n));
  for (std::size_t n = 0; n <= depth; ++n) {
    for (std::size_t m = 0; m <= n; ++m) {
      if (restrict(projections[n], m) != projections[m]) return report("restrict(project(y,n),m) != project(y,m)");
    }
  }

  const ProdVec back = from_thread(t);
  for (std::size_t n = 0; n <= depth; ++n) {
    if (project(back, n) != projections[n]) return report("roundtrip through the thread changed a projection");
  }

  const ProdVec zero = ProdVec::zero(spec, Dim::omega());
  const QuotientTower tower(spec);
  bool all_projections_zero = true;
  for (std::size_t n = 0; n <= equality_bound(y, zero); ++n) all_projections_zero = all_projections_zero && tower.contains(y, n);
  if (all_projections_zero != vec_eq(y, zero)) return report("Hausdorff separation fails");
  return std::nullopt;
}

/// Changing y outside supp(row(G, j)) leaves coordinate j of G·y unchanged.
inline CaseResult locality_case(Rng& rng, FieldSpec spec, bool omega, const GenLimits& lim = {}) {
  const Dim rows = omega ? Dim::omega() : random_finite_dim(rng, 1, lim.max_dim);
  const Dim cols = omega ? Dim::omega() : random_finite_dim(rng, 1, lim.max_dim);
  const RowFiniteMatrix g =
      omega ? random_omega_matrix(rng, spec, random_kind(rng), lim) : random_finite_matrix(rng, spec, rows, cols, lim);
  const ProdVec y = random_prodvec(rng, spec, cols, lim);
  const std::size_t j = rng.below(rows.is_finite() ? rows.size() : lim.max_omega_rows + 10);
  const FinSuppVec r = g.row(j);

  // Perturbation vanishing on supp(row j), random elsewhere.
  const std::size_t len = cols.is_finite() ? cols.size() : g.row_support_bound(j) + rng.below(lim.max_prefix + 1);
  DenseVec delta;
  for (std::size_t i = 0; i < len; ++i) {
    delta.push_back(r.entries().count(i) ? Scalar::zero(spec) : random_scalar(rng, spec));
  }
  TailSpec tail = ZerosTail{};
  if (cols.is_omega() && rng.chance(1, 2)) tail = RepeatTail{random_block(rng, spec, lim)};
  const ProdVec perturbed = vec_add(y, ProdVec::make(spec, cols, std::move(delta), std::move(tail)));

  if (act_left_at(g, y, j) == act_left_at(g, perturbed, j) && act_left(g, y).get(j) == act_left(g, perturbed).get(j)) {
    return std::nullopt;
  }
  return detail::counterexample("coordinate " + std::to_string(j) + " moved under an off-support perturbation",
                                {{"matrix.dsm", io::serialize(g)},
                                 {"y.dsv", io::serialize(y)},
                                 {"perturbed.dsv", io::serialize(perturbed)}});
}

/// rank of project(delta_i, n), i < n, equals n: F^omega / V_n has dimension n.
inline std::size_t projected_basis_rank(FieldSpec spec, std::size_t n) {
  DenseMatrix m(spec, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const DenseVec p = project(ProdVec::embed(FinSuppVec::basis(spec, Dim::omega(), i)), n);
    for (std::size_t k = 0; k < n; ++k) m.at(i, k) = p[k];
  }
  return rank(m);
}

// ---------------------------------------------------------------------------
// Runner

/// Runs `cases` cases of `body(index, rng)`. A library error inside a case
/// counts as a failure.
inline LawResult run_law(std::string law, std::uint64_t seed, std::uint64_t stream, std::size_t cases,
                         const std::function<CaseResult(std::size_t, Rng&)>& body) {
  LawResult result{std::move(law), cases, 0, std::nullopt, std::nullopt};
  for (std::size_t i = 0; i < cases; ++i) {
    Rng rng(split_seed(seed, stream, i));
    CaseResult outcome;
    try {
      outcome = body(i, rng);
    } catch (const Error& e) {
      outcome = Counterexample{"case " + std::to_string(i) + " raised " + e.what(), {}};
    }
    if (outcome) {
      ++result.failures;
      if (!result.first_failure) {
        outcome->note = "case " + std::to_string(i) + ": " + outcome->note;
        result.first_failure = std::move(outcome);
      }
    }
  }
  return result;
}

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t cases = 1000;
  std::size_t trunc = 64;
};

/// Suite names accepted by run_suite, in report order.
inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"adjoint", "exact", "faithful", "full", "functor", "limits"};
  return names;
}

inline bool is_suite(std::string_view name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

/// One suite at the CLI's case mix: fields cycle with the case index and
/// every fifth case of the morphism suites uses omega dimensions.
inline LawResult run_suite(std::string_view suite, const VerifyOptions& opt) {
  static const std::vector<FieldSpec> fields{FieldSpec::prime(2), FieldSpec::prime(7), FieldSpec::prime(97),
                                             FieldSpec::rationals()};
  static const std::vector<FieldSpec> small_fields{FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::prime(5)};
  auto field = [](std::size_t i) { return fields[i % fields.size()]; };
  auto omega = [](std::size_t i) { return i % 5 == 4; };
  const std::string name(suite);

  if (suite == "adjoint") {
    return run_law(name, opt.seed, 1, opt.cases, [&](std::size_t i, Rng& rng) { return adjoint_case(rng, field(i), omega(i)); });
  }
  if (suite == "functor") {
    return run_law(name, opt.seed, 2, opt.cases, [&](std::size_t i, Rng& rng) { return functor_case(rng, field(i), omega(i)); });
  }
  if (suite == "faithful") {
    return run_law(name, opt.seed, 3, opt.cases, [&](std::size_t i, Rng& rng) { return faithful_case(rng, field(i), omega(i)); });
  }
  if (suite == "full") {
    return run_law(name, opt.seed, 4, opt.cases, [&](std::size_t i, Rng& rng) { return full_case(rng, field(i), omega(i)); });
  }
  if (suite == "exact") {
    return run_law(name, opt.seed, 5, opt.cases, [&](std::size_t i, Rng& rng) {
      return exact_case(rng, small_fields[i % small_fields.size()], opt.trunc);
    });
  }
  if (suite == "limits") {
    return run_law(name, opt.seed, 6, opt.cases, [&](std::size_t i, Rng& rng) { return limits_case(rng, field(i), opt.trunc); });
  }
  fail(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
}

/// "all" or a single suite name.
inline std::vector<LawResult> run_verify(std::string_view suite, const VerifyOptions& opt) {
  std::vector<LawResult> results;
  if (suite == "all") {
    for (const auto& name : suite_names()) results.push_back(run_suite(name, opt));
  } else {
    results.push_back(run_suite(suite, opt));
  }
  return results;
}

/// Header line, then `<law> <cases> pass` or `<law> <cases> fail [counterexample=<path>]`
/// per law, sorted by law name.
inline std::string format_report(std::vector<LawResult> results, const VerifyOptions& opt) {
  std::sort(results.begin(), results.end(), [](const LawResult& a, const LawResult& b) { return a.law < b.law; });
  std::string out = "# dualspace verify seed=" + std::to_string(opt.seed) + " cases=" + std::to_string(opt.cases) +
                    " trunc=" + std::to_string(opt.trunc) + "\n";
  for (const auto& r : results) {
    out += r.law + " " + std::to_string(r.cases) + (r.passed() ? " pass" : " fail");
    if (!r.passed() && r.counterexample_path) out += " counterexample=" + *r.counterexample_path;
    out += "\n";
  }
  return out;
}

}  // namespace dualspace
